//! Exact MAX-CUT by exhaustive enumeration, for small graphs.
//!
//! Vertex 0 is pinned to X (a cut and its mirror image are the same cut), and
//! the remaining `2^(n-1)` assignments are walked in Gray-code order so each
//! step flips one vertex and updates the cut size from its adjacency mask.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ratio, Bipartition, Graph, Side};
use crate::Fraction;

pub const MAX_ORACLE_N: usize = 26;

/// Vertices fixed per parallel chunk; `2^CHUNK_BITS` chunks at most.
const CHUNK_BITS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub max_cut: usize,
    /// Lexicographically smallest optimal side vector (X before Y).
    pub witness: Bipartition,
    pub r_b_opt: Fraction,
}

pub fn max_cut_exact(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(Error::TooLarge { n, limit: MAX_ORACLE_N });
    }
    if n == 0 {
        return Ok(OracleResult {
            max_cut: 0,
            witness: Bipartition::all(0, Side::X),
            r_b_opt: ratio(0, 0),
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let free = n - 1;
    let high = free.min(CHUNK_BITS);
    let low = free - high;
    let (cut, key) = (0u32..1 << high)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk << (1 + low);
            walk(&adj, start, low)
        })
        .reduce(|| (0, u32::MAX), best);
    let mask = key.reverse_bits();
    let sides = (0..n)
        .map(|u| if mask >> u & 1 == 1 { Side::Y } else { Side::X })
        .collect();
    Ok(OracleResult {
        max_cut: cut,
        witness: Bipartition::new(sides),
        r_b_opt: ratio(cut, g.edge_count()),
    })
}

/// Bit `u` of a mask set means vertex `u` is in Y. The lexicographic key
/// reverses the bits so vertex 0 is the most significant.
fn lex_key(mask: u32) -> u32 {
    mask.reverse_bits()
}

fn best(a: (usize, u32), b: (usize, u32)) -> (usize, u32) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) {
        a
    } else {
        b
    }
}

fn cut_of(adj: &[u32], mask: u32) -> usize {
    (0..adj.len())
        .filter(|&u| mask >> u & 1 == 0)
        .map(|u| (adj[u] & mask).count_ones() as usize)
        .sum()
}

/// Gray-code walk over vertices `1..=low` with the other bits fixed by
/// `start`.
fn walk(adj: &[u32], start: u32, low: usize) -> (usize, u32) {
    let mut mask = start;
    let mut cut = cut_of(adj, mask) as i64;
    let mut acc = (cut as usize, lex_key(mask));
    for i in 1u32..1 << low {
        let v = i.trailing_zeros() as usize + 1;
        let bit = 1u32 << v;
        let same = if mask & bit != 0 { adj[v] & mask } else { adj[v] & !mask }.count_ones() as i64;
        let deg = adj[v].count_ones() as i64;
        cut += 2 * same - deg;
        mask ^= bit;
        acc = best(acc, (cut as usize, lex_key(mask)));
    }
    acc
}
