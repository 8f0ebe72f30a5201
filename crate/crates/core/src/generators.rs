//! Random graph models and the instance sampler used by the experiments.
//!
//! Parameter ranges follow the reproduction protocol: Erdős–Rényi
//! `p ∈ [0.2, 1]`, Watts–Strogatz `ψ ∈ [0, 0.3]` with `k = 8`, random
//! geometric `r ∈ [0.5, 1]` under the Euclidean norm, Barabási–Albert
//! `m ∈ {1, …, 10}`. Instances that are disconnected or bipartite are
//! rejected and redrawn (parameter and graph).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const MAX_ATTEMPTS: usize = 10_000;
pub const WS_K: usize = 8;
pub const RG_NORM: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "er")]
    ErdosRenyi,
    #[serde(rename = "ws")]
    WattsStrogatz,
    #[serde(rename = "rg")]
    RandomGeometric,
    #[serde(rename = "ba")]
    BarabasiAlbert,
}

impl Model {
    pub const ALL: [Model; 4] = [
        Model::ErdosRenyi,
        Model::WattsStrogatz,
        Model::RandomGeometric,
        Model::BarabasiAlbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::ErdosRenyi => "er",
            Model::WattsStrogatz => "ws",
            Model::RandomGeometric => "rg",
            Model::BarabasiAlbert => "ba",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelParams {
    Er { p: f64 },
    Ws { k: usize, psi: f64 },
    Rg { r: f64, norm: u32 },
    Ba { m: usize },
}

impl ModelParams {
    pub fn model(&self) -> Model {
        match self {
            ModelParams::Er { .. } => Model::ErdosRenyi,
            ModelParams::Ws { .. } => Model::WattsStrogatz,
            ModelParams::Rg { .. } => Model::RandomGeometric,
            ModelParams::Ba { .. } => Model::BarabasiAlbert,
        }
    }
}

/// `p=0.5`, `k=8;psi=0.1`, `r=0.7;l=2`, `m=3`. No commas, so the string can
/// sit in a CSV field unquoted.
impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelParams::Er { p } => write!(f, "p={p}"),
            ModelParams::Ws { k, psi } => write!(f, "k={k};psi={psi}"),
            ModelParams::Rg { r, norm } => write!(f, "r={r};l={norm}"),
            ModelParams::Ba { m } => write!(f, "m={m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub n: usize,
    pub params: ModelParams,
}

impl ModelSpec {
    pub fn model(&self) -> Model {
        self.params.model()
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Graph> {
        match self.params {
            ModelParams::Er { p } => erdos_renyi(self.n, p, rng),
            ModelParams::Ws { k, psi } => watts_strogatz(self.n, k, psi, rng),
            ModelParams::Rg { r, .. } => random_geometric(self.n, r, rng),
            ModelParams::Ba { m } => barabasi_albert(self.n, m, rng),
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// G(n, p): every pair independently, decided in lexicographic pair order.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_probability("p", p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Ring lattice with `k/2` neighbors per side, then each lattice edge (in
/// canonical order) has its far endpoint rewired with probability `psi` to a
/// uniform vertex that is neither the near endpoint nor already adjacent to
/// it. An edge with no such vertex stays put, so `|E| = n·k/2` always.
pub fn watts_strogatz<R: Rng + ?Sized>(n: usize, k: usize, psi: f64, rng: &mut R) -> Result<Graph> {
    if k % 2 == 1 || k >= n {
        return Err(Error::InvalidK { k, n });
    }
    check_probability("psi", psi)?;
    let half = k / 2;
    let mut lattice: Vec<(Edge, usize, usize)> = (0..n)
        .flat_map(|u| (1..=half).map(move |j| (u, (u + j) % n)))
        .map(|(u, v)| ((u.min(v), u.max(v)), u, v))
        .collect();
    lattice.sort_unstable();
    let mut adj = vec![vec![false; n]; n];
    for &((a, b), _, _) in &lattice {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    for &(_, near, far) in &lattice {
        if rng.random::<f64>() >= psi {
            continue;
        }
        let candidates: Vec<usize> = (0..n).filter(|&w| w != near && !adj[near][w]).collect();
        if candidates.is_empty() {
            continue;
        }
        let w = candidates[rng.random_range(0..candidates.len())];
        adj[near][far] = false;
        adj[far][near] = false;
        adj[near][w] = true;
        adj[w][near] = true;
    }
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| adj[u][v])
        .collect();
    Graph::from_edge_list(n, &edges)
}

/// `n` uniform points in the unit square, drawn in vertex order; an edge
/// joins points at Euclidean distance at most `r`.
pub fn random_geometric<R: Rng + ?Sized>(n: usize, r: f64, rng: &mut R) -> Result<Graph> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
    }
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
    let r2 = r * r;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
            if dx * dx + dy * dy <= r2 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Preferential attachment from `m` isolated seed vertices. Each arriving
/// vertex picks `m` distinct targets by degree-proportional sampling without
/// replacement (uniform while the remaining candidates have zero total
/// degree). Always `m·(n − m)` edges.
pub fn barabasi_albert<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || m >= n {
        return Err(Error::InvalidM { m, n });
    }
    let mut deg = vec![0usize; n];
    let mut edges = Vec::with_capacity(m * (n - m));
    for t in m..n {
        let mut taken = vec![false; t];
        let mut chosen = Vec::with_capacity(m);
        for _ in 0..m {
            let total: usize = (0..t).filter(|&c| !taken[c]).map(|c| deg[c]).sum();
            let pick = if total == 0 {
                let free: Vec<usize> = (0..t).filter(|&c| !taken[c]).collect();
                free[rng.random_range(0..free.len())]
            } else {
                let mut x = rng.random_range(0..total);
                (0..t)
                    .filter(|&c| !taken[c])
                    .find(|&c| {
                        if x < deg[c] {
                            true
                        } else {
                            x -= deg[c];
                            false
                        }
                    })
                    .expect("draw falls inside the total weight")
            };
            taken[pick] = true;
            chosen.push(pick);
        }
        for c in chosen {
            edges.push((c, t));
            deg[c] += 1;
            deg[t] += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Draws the model parameter uniformly from its range.
pub fn sample_spec<R: Rng + ?Sized>(model: Model, n: usize, rng: &mut R) -> ModelSpec {
    let params = match model {
        Model::ErdosRenyi => ModelParams::Er {
            p: rng.random_range(0.2..=1.0),
        },
        Model::WattsStrogatz => ModelParams::Ws {
            k: WS_K,
            psi: rng.random_range(0.0..=0.3),
        },
        Model::RandomGeometric => ModelParams::Rg {
            r: rng.random_range(0.5..=1.0),
            norm: RG_NORM,
        },
        Model::BarabasiAlbert => ModelParams::Ba {
            m: rng.random_range(1..=10.min(n - 1)),
        },
    };
    ModelSpec { n, params }
}

/// Samples parameter and graph until the graph is connected and
/// non-bipartite.
pub fn sample_instance<R: Rng + ?Sized>(model: Model, n: usize, rng: &mut R) -> Result<(Graph, ModelSpec)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 3 for a non-bipartite instance, got {n}"
        )));
    }
    if model == Model::WattsStrogatz && WS_K >= n {
        return Err(Error::InvalidK { k: WS_K, n });
    }
    for _ in 0..MAX_ATTEMPTS {
        let spec = sample_spec(model, n, rng);
        let g = spec.generate(rng)?;
        if g.is_connected() && !g.is_bipartite() {
            return Ok((g, spec));
        }
    }
    Err(Error::ExhaustedResampling(MAX_ATTEMPTS))
}

/// Erdős–Rényi graph with random order in `min_n..=max_n` and random density;
/// for tests and property checks, not one of the reproduction models.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, min_n: usize, max_n: usize) -> Graph {
    let n = rng.random_range(min_n..=max_n);
    let p = rng.random_range(0.05..=0.95);
    erdos_renyi(n, p, rng).expect("p in range")
}

/// Connected graph of random order in `min_n..=max_n` (redrawn until
/// connected).
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, min_n: usize, max_n: usize) -> Graph {
    loop {
        let n = rng.random_range(min_n..=max_n);
        let p = rng.random_range(0.25..=0.95);
        let g = erdos_renyi(n, p, rng).expect("p in range");
        if g.is_connected() {
            return g;
        }
    }
}

/// Connected bipartite graph: random two-sided vertex split, random
/// cross edges, redrawn until connected.
pub fn random_bipartite_connected<R: Rng + ?Sized>(rng: &mut R, min_n: usize, max_n: usize) -> Graph {
    let min_n = min_n.max(2);
    loop {
        let n = rng.random_range(min_n..=max_n);
        let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let p = rng.random_range(0.3..=0.95);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edge_list(n, &edges).expect("valid pairs");
        if g.is_connected() {
            return g;
        }
    }
}
