//! Local switching and the eigenvector sign-pattern methods.
//!
//! All five partition methods end in the same movement routine: parts are
//! scanned alternately, and the first not-yet-moved vertex of the active
//! part with more than half of its neighbors on its own side is switched.
//! Each vertex moves at most once.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::bipartivity::{greedy_remove, EdgeIndex};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Edge, Graph, Side};
use crate::seed::{derive_seed, rng_from_seed};
use crate::spectral::{extremal_vector, MatrixKind};
use crate::{graph, Fraction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "local-switching")]
    LocalSwitching,
    #[serde(rename = "eigen-a")]
    EigenA,
    #[serde(rename = "eigen-q")]
    EigenQ,
    #[serde(rename = "eigen-l")]
    EigenL,
    #[serde(rename = "eigen-nl")]
    EigenNL,
    #[serde(rename = "greedy-beta")]
    GreedyBetaNew,
    #[serde(rename = "greedy-phi-a")]
    GreedyPhiA,
    #[serde(rename = "greedy-phi-nl")]
    GreedyPhiNL,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::LocalSwitching,
        Method::EigenA,
        Method::EigenQ,
        Method::EigenL,
        Method::EigenNL,
        Method::GreedyBetaNew,
        Method::GreedyPhiA,
        Method::GreedyPhiNL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::LocalSwitching => "local-switching",
            Method::EigenA => "eigen-a",
            Method::EigenQ => "eigen-q",
            Method::EigenL => "eigen-l",
            Method::EigenNL => "eigen-nl",
            Method::GreedyBetaNew => "greedy-beta",
            Method::GreedyPhiA => "greedy-phi-a",
            Method::GreedyPhiNL => "greedy-phi-nl",
        }
    }

    pub fn is_greedy(self) -> bool {
        self.edge_index().is_some()
    }

    pub fn matrix_kind(self) -> Option<MatrixKind> {
        match self {
            Method::EigenA => Some(MatrixKind::Adjacency),
            Method::EigenQ => Some(MatrixKind::SignlessLaplacian),
            Method::EigenL => Some(MatrixKind::Laplacian),
            Method::EigenNL => Some(MatrixKind::NormalizedLaplacian),
            _ => None,
        }
    }

    pub fn edge_index(self) -> Option<EdgeIndex> {
        match self {
            Method::GreedyBetaNew => Some(EdgeIndex::BetaEdge),
            Method::GreedyPhiA => Some(EdgeIndex::PhiA),
            Method::GreedyPhiNL => Some(EdgeIndex::PhiNL),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodResult {
    pub method: Method,
    pub partition: Bipartition,
    /// Crossing edges of `partition` for partition methods; edges left after
    /// greedy removal otherwise.
    pub retained_edges: usize,
    pub r_b: Fraction,
    pub restarts_used: usize,
    pub rng_seed: u64,
    /// Greedy methods only: edges removed, in order.
    pub removed: Vec<Edge>,
}

impl MethodResult {
    pub fn r_b_f64(&self) -> f64 {
        graph::to_f64(self.r_b)
    }
}

/// Bookkeeping of the movement routine, kept literally: `t_no_movement`
/// starts at 1, is bumped after every scan without a move, reset to 1 after
/// a move, and the routine halts once it exceeds 2.
#[derive(Clone, Debug)]
pub struct SwitchState {
    pub partition: Bipartition,
    pub moved: Vec<bool>,
    pub active_part: Side,
    pub t_no_movement: u32,
}

impl SwitchState {
    pub fn new(initial: Bipartition, start: Side) -> Self {
        let n = initial.len();
        SwitchState {
            partition: initial,
            moved: vec![false; n],
            active_part: start,
            t_no_movement: 1,
        }
    }

    pub fn is_done(&self) -> bool {
        self.t_no_movement > 2
    }

    /// Scans the active part in ascending vertex order and moves the first
    /// eligible vertex, then hands over to the other part. Returns the moved
    /// vertex, if any.
    pub fn scan(&mut self, g: &Graph) -> Option<usize> {
        let p = self.active_part;
        let mover = (0..g.n()).find(|&u| {
            self.partition.side(u) == p && !self.moved[u] && {
                let (_, int) = g.ext_int_degrees(&self.partition, u);
                2 * int > g.degree(u)
            }
        });
        match mover {
            Some(u) => {
                self.partition.set(u, p.other());
                self.moved[u] = true;
                self.t_no_movement = 1;
            }
            None => self.t_no_movement += 1,
        }
        self.active_part = p.other();
        mover
    }
}

/// Runs the movement routine from `initial`, starting with part `start`.
pub fn movement_routine(g: &Graph, initial: Bipartition, start: Side) -> Bipartition {
    movement_routine_traced(g, initial, start).0
}

/// As [`movement_routine`], also returning the vertices moved, in order.
pub fn movement_routine_traced(g: &Graph, initial: Bipartition, start: Side) -> (Bipartition, Vec<usize>) {
    assert_eq!(initial.len(), g.n(), "initial partition must label every vertex");
    let mut state = SwitchState::new(initial, start);
    let mut moves = Vec::new();
    while !state.is_done() {
        if let Some(u) = state.scan(g) {
            moves.push(u);
        }
    }
    (state.partition, moves)
}

/// Best of `restarts` movement-routine runs from random balanced partitions.
///
/// Restart `k` draws from its own stream `derive_seed(seed, k)`: a uniform
/// permutation whose first ⌊n/2⌋ vertices form X, then a fair coin for the
/// starting part. Ties keep the earliest restart.
pub fn local_switching(g: &Graph, restarts: usize, seed: u64) -> Result<MethodResult> {
    if restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be >= 1".into()));
    }
    let n = g.n();
    let mut best: Option<(usize, Bipartition)> = None;
    for k in 0..restarts {
        let mut rng = rng_from_seed(derive_seed(seed, k as u64));
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let initial = Bipartition::from_x(n, &perm[..n / 2]);
        let start = if rng.random_bool(0.5) { Side::X } else { Side::Y };
        let part = movement_routine(g, initial, start);
        let crossing = g.cut_report(&part).crossing;
        if best.as_ref().is_none_or(|(c, _)| crossing > *c) {
            best = Some((crossing, part));
        }
    }
    let (crossing, partition) = best.expect("at least one restart");
    Ok(MethodResult {
        method: Method::LocalSwitching,
        partition,
        retained_edges: crossing,
        r_b: graph::ratio(crossing, g.edge_count()),
        restarts_used: restarts,
        rng_seed: seed,
        removed: Vec::new(),
    })
}

/// Initial partition from the sign pattern of the extremal eigenvector of
/// `kind`, refined once by the movement routine starting from X.
///
/// Entries within `1e-8 · max|entry|` of zero are placed by a fair coin, one
/// draw per such vertex in ascending order.
pub fn eigen_sign_partition(g: &Graph, kind: MatrixKind, seed: u64) -> Result<MethodResult> {
    let v = extremal_vector(g, kind)?;
    let initial = sign_partition(&v, seed);
    let part = movement_routine(g, initial, Side::X);
    let crossing = g.cut_report(&part).crossing;
    let method = match kind {
        MatrixKind::Adjacency => Method::EigenA,
        MatrixKind::SignlessLaplacian => Method::EigenQ,
        MatrixKind::Laplacian => Method::EigenL,
        MatrixKind::NormalizedLaplacian => Method::EigenNL,
    };
    Ok(MethodResult {
        method,
        partition: part,
        retained_edges: crossing,
        r_b: graph::ratio(crossing, g.edge_count()),
        restarts_used: 1,
        rng_seed: seed,
        removed: Vec::new(),
    })
}

pub fn sign_partition(v: &[f64], seed: u64) -> Bipartition {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tau = 1e-8 * scale;
    let mut rng = rng_from_seed(seed);
    let sides = v
        .iter()
        .map(|&x| {
            if x > tau {
                Side::X
            } else if x < -tau {
                Side::Y
            } else if rng.random_bool(0.5) {
                Side::X
            } else {
                Side::Y
            }
        })
        .collect();
    Bipartition::new(sides)
}

/// Runs any of the eight methods. `restarts` only affects local switching.
pub fn run_method(g: &Graph, method: Method, restarts: usize, seed: u64) -> Result<MethodResult> {
    if let Some(kind) = method.matrix_kind() {
        return eigen_sign_partition(g, kind, seed);
    }
    if let Some(index) = method.edge_index() {
        let trace = greedy_remove(g, index)?;
        let partition = trace.final_graph.two_color().expect("greedy output is bipartite");
        let retained = trace.final_graph.edge_count();
        return Ok(MethodResult {
            method,
            partition,
            retained_edges: retained,
            r_b: trace.r_b,
            restarts_used: 1,
            rng_seed: seed,
            removed: trace.removed,
        });
    }
    local_switching(g, restarts, seed)
}
