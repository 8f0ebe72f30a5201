//! Simple undirected graphs, bipartitions and cut accounting.
//!
//! A [`Graph`] is stored in canonical form: a lexicographically sorted,
//! deduplicated edge list with `u < v` for every edge, plus sorted neighbor
//! lists derived from it. Two graphs are equal iff they have the same vertex
//! count and edge list.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Fraction;

pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a canonical graph from raw vertex pairs. Reversed and repeated
    /// pairs are merged; self-loops and out-of-range endpoints are errors.
    pub fn from_edge_list(n: usize, raw: &[Edge]) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw.len());
        for &(u, v) in raw {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(n, edges))
    }

    /// `edges` must already be sorted, deduplicated and oriented `u < v`.
    fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_canonical(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        let raw: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &raw).expect("cycle edges are in range")
    }

    pub fn path(n: usize) -> Self {
        let raw: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_canonical(n, raw)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// True iff a traversal from vertex 0 reaches every vertex. The
    /// zero-vertex graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0).len() == self.n
    }

    fn component_of(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![root];
        seen[root] = true;
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            out.push(u);
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.n];
        let mut comps = Vec::new();
        for root in 0..self.n {
            if assigned[root] {
                continue;
            }
            let comp = self.component_of(root);
            for &u in &comp {
                assigned[u] = true;
            }
            comps.push(comp);
        }
        comps
    }

    /// Proper two-coloring by breadth-first search, each component's smallest
    /// vertex colored X. `None` iff the graph has an odd cycle.
    pub fn two_color(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(Side::X);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued vertices are colored");
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(su.other());
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Bipartition::new(
            side.into_iter().map(|s| s.expect("all colored")).collect(),
        ))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_color().is_some()
    }

    /// Copy of the graph without edge `e` (either orientation accepted).
    pub fn remove_edge(&self, e: Edge) -> Result<Graph> {
        let key = (e.0.min(e.1), e.0.max(e.1));
        let pos = self
            .edges
            .binary_search(&key)
            .map_err(|_| Error::MissingEdge(key.0, key.1))?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        Ok(Self::from_canonical(self.n, edges))
    }

    /// Subgraph induced by `vertices` (sorted), relabeled to `0..vertices.len()`
    /// in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &u) in vertices.iter().enumerate() {
            index[u] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u].min(index[v]), index[u].max(index[v])))
            .collect();
        Graph::from_edge_list(vertices.len(), &edges).expect("relabeled edges are valid")
    }

    pub fn cut_report(&self, b: &Bipartition) -> CutReport {
        assert_eq!(b.len(), self.n, "bipartition must label every vertex");
        let crossing = self.edges.iter().filter(|&&(u, v)| b.side(u) != b.side(v)).count();
        CutReport::new(crossing, self.edge_count())
    }

    /// Neighbors of `u` in the other part and in its own part.
    pub fn ext_int_degrees(&self, b: &Bipartition, u: usize) -> (usize, usize) {
        let own = b.side(u);
        let int = self.adj[u].iter().filter(|&&w| b.side(w) == own).count();
        (self.degree(u) - int, int)
    }

    /// Parses the edge-list text format: `#` comment lines, a header `n m`,
    /// then `m` lines of 0-based `u v` pairs.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut raw = Vec::with_capacity(m);
        for (line, l) in lines {
            if raw.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_pair(line, l)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            raw.push((u, v));
        }
        if raw.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("expected {m} edges, found {}", raw.len()),
            });
        }
        Graph::from_edge_list(n, &raw)
    }

    /// Canonical edge-list text. Each entry of `comments` becomes a `# ` line
    /// before the header.
    pub fn to_edge_list(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{} {}", self.n, self.edge_count());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Two-coloring of a vertex set. Every vertex carries exactly one label, so
/// the parts are disjoint and cover the vertex set by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    sides: Vec<Side>,
}

impl Bipartition {
    pub fn new(sides: Vec<Side>) -> Self {
        Bipartition { sides }
    }

    pub fn all(n: usize, side: Side) -> Self {
        Bipartition { sides: vec![side; n] }
    }

    /// Vertices listed in `x` go to X, all others to Y.
    pub fn from_x(n: usize, x: &[usize]) -> Self {
        let mut b = Self::all(n, Side::Y);
        for &u in x {
            b.sides[u] = Side::X;
        }
        b
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, u: usize) -> Side {
        self.sides[u]
    }

    pub fn set(&mut self, u: usize, side: Side) {
        self.sides[u] = side;
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn part(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len()).filter(|&u| self.sides[u] == side).collect()
    }

    /// Same partition with the labels X and Y exchanged.
    pub fn swapped(&self) -> Self {
        Bipartition {
            sides: self.sides.iter().map(|s| s.other()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub crossing: usize,
    pub internal: usize,
    pub r_b: Fraction,
}

impl CutReport {
    /// `r_b` is `crossing / total`, and 1 for an edgeless graph.
    pub fn new(crossing: usize, total: usize) -> Self {
        CutReport {
            crossing,
            internal: total - crossing,
            r_b: ratio(crossing, total),
        }
    }

    pub fn r_b_f64(&self) -> f64 {
        to_f64(self.r_b)
    }
}

/// `retained / total` as an exact fraction; an edgeless graph counts as
/// fully bipartite.
pub fn ratio(retained: usize, total: usize) -> Fraction {
    if total == 0 {
        Fraction::from_integer(1)
    } else {
        Fraction::new(retained as u64, total as u64)
    }
}

pub fn to_f64(r: Fraction) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
