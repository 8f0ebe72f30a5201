//! Graph matrices and dense symmetric eigendecomposition.
//!
//! [`sym_eigen`] is a cyclic Jacobi solver returning orthonormal
//! eigenvectors; [`sym_eigenvalues`] is a cheaper Householder + implicit QL
//! route for callers that only need the spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Entries of an eigenvector with magnitude at or below this are treated as
/// zero when fixing the sign.
pub const SIGN_EPS: f64 = 1e-8;

/// Residual bound, relative to `max(1, ‖M‖∞)`.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
    NormalizedLaplacian,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 4] = [
        MatrixKind::Adjacency,
        MatrixKind::Laplacian,
        MatrixKind::SignlessLaplacian,
        MatrixKind::NormalizedLaplacian,
    ];

    /// Whether the sign-pattern methods read the eigenvector of the largest
    /// eigenvalue (L and the normalized Laplacian) or of the smallest (A, Q).
    pub fn uses_largest(self) -> bool {
        matches!(self, MatrixKind::Laplacian | MatrixKind::NormalizedLaplacian)
    }
}

/// Dense symmetric `n × n` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphMatrix {
    pub kind: MatrixKind,
    n: usize,
    entries: Vec<f64>,
}

impl GraphMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Builds A, L = D − A, Q = D + A or D^{-1/2} L D^{-1/2}. Entries are written
/// symmetrically, so the result is exactly symmetric. Rows of isolated
/// vertices in the normalized Laplacian are zero.
pub fn build_matrix(g: &Graph, kind: MatrixKind) -> GraphMatrix {
    let n = g.n();
    let mut entries = vec![0.0; n * n];
    let deg: Vec<f64> = (0..n).map(|u| g.degree(u) as f64).collect();
    for &(u, v) in g.edges() {
        let x = match kind {
            MatrixKind::Adjacency | MatrixKind::SignlessLaplacian => 1.0,
            MatrixKind::Laplacian => -1.0,
            MatrixKind::NormalizedLaplacian => -1.0 / (deg[u] * deg[v]).sqrt(),
        };
        entries[u * n + v] = x;
        entries[v * n + u] = x;
    }
    for u in 0..n {
        entries[u * n + u] = match kind {
            MatrixKind::Adjacency => 0.0,
            MatrixKind::Laplacian | MatrixKind::SignlessLaplacian => deg[u],
            MatrixKind::NormalizedLaplacian => {
                if deg[u] > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        };
    }
    GraphMatrix { kind, n, entries }
}

/// Ascending eigenvalues with paired, orthonormal, sign-canonical
/// eigenvectors.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    /// max over k of ‖M v_k − λ_k v_k‖∞
    pub residual: f64,
}

impl Spectrum {
    pub fn smallest(&self) -> (f64, &[f64]) {
        (self.values[0], &self.vectors[0])
    }

    pub fn largest(&self) -> (f64, &[f64]) {
        let k = self.values.len() - 1;
        (self.values[k], &self.vectors[k])
    }
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Ties in the ascending sort keep the solver's column order. Fails with
/// `NoConvergence` if the sweep budget (`100·n²`) runs out or the final
/// residual misses `RESIDUAL_TOL · max(1, ‖M‖∞)`.
pub fn sym_eigen(m: &GraphMatrix) -> Result<Spectrum> {
    let n = m.n();
    if n == 0 {
        return Ok(Spectrum {
            values: Vec::new(),
            vectors: Vec::new(),
            residual: 0.0,
        });
    }
    let mut a = m.entries().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let sweeps = jacobi_sweeps(n, &mut a, &mut v)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            canonicalize_sign(&mut col);
            col
        })
        .collect();

    let residual = values
        .iter()
        .zip(&vectors)
        .map(|(&lambda, vec)| {
            m.mul_vec(vec)
                .iter()
                .zip(vec)
                .map(|(mv, x)| (mv - lambda * x).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    if residual > RESIDUAL_TOL * m.inf_norm().max(1.0) {
        return Err(Error::NoConvergence { residual, sweeps });
    }
    Ok(Spectrum {
        values,
        vectors,
        residual,
    })
}

/// Rotates `a` towards diagonal form in place, accumulating rotations into
/// the columns of `v`. Returns the number of sweeps used.
fn jacobi_sweeps(n: usize, a: &mut [f64], v: &mut [f64]) -> Result<usize> {
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = (f64::EPSILON * frob).powi(2);
    let budget = 100 * n * n;
    for sweep in 0..budget {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off <= target {
            return Ok(sweep);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let off: f64 = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .map(|(p, q)| a[p * n + q].abs())
        .fold(0.0, f64::max);
    Err(Error::NoConvergence {
        residual: off,
        sweeps: budget,
    })
}

/// Makes the first entry with magnitude above `SIGN_EPS` positive.
pub fn canonicalize_sign(v: &mut [f64]) {
    if let Some(&first) = v.iter().find(|x| x.abs() > SIGN_EPS) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Ascending eigenvalues only, via Householder tridiagonalization and
/// implicit QL with Wilkinson shifts.
pub fn sym_eigenvalues(m: &GraphMatrix) -> Result<Vec<f64>> {
    let n = m.n();
    let mut a = m.entries().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(n, &mut a, &mut d, &mut e);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Householder reduction to tridiagonal form: diagonal in `d`, subdiagonal in
/// `e[1..]`.
fn tridiagonalize(n: usize, a: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    if n > 0 {
        e[0] = 0.0;
    }
}

fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    const MAX_ITER: usize = 60;
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence {
                    residual: e[l].abs(),
                    sweeps: iter,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvector of the smallest eigenvalue (A, Q) or the largest (L and the
/// normalized Laplacian), sign-canonical.
pub fn extremal_vector(g: &Graph, kind: MatrixKind) -> Result<Vec<f64>> {
    let spec = sym_eigen(&build_matrix(g, kind))?;
    let (_, v) = if kind.uses_largest() {
        spec.largest()
    } else {
        spec.smallest()
    };
    Ok(v.to_vec())
}

/// Strictly positive eigenvector of the largest adjacency eigenvalue of a
/// connected graph.
pub fn perron_vector(g: &Graph) -> Result<Vec<f64>> {
    let spec = sym_eigen(&build_matrix(g, MatrixKind::Adjacency))?;
    let (_, v) = spec.largest();
    if let Some((vertex, &entry)) = v.iter().enumerate().find(|(_, &x)| x <= 1e-10) {
        return Err(Error::NotPositive { vertex, entry });
    }
    Ok(v.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_bipartite_connected, random_connected};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn example() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k2_matrices() {
        let k2 = Graph::complete(2);
        assert_eq!(
            build_matrix(&k2, MatrixKind::Laplacian).entries(),
            &[1.0, -1.0, -1.0, 1.0]
        );
        assert_eq!(
            build_matrix(&k2, MatrixKind::NormalizedLaplacian).entries(),
            &[1.0, -1.0, -1.0, 1.0]
        );
    }

    #[test]
    fn matrix_invariants() {
        let g = example();
        let q = build_matrix(&g, MatrixKind::SignlessLaplacian);
        let diag: Vec<f64> = (0..5).map(|i| q.get(i, i)).collect();
        assert_eq!(diag, vec![3.0, 1.0, 3.0, 2.0, 3.0]);
        let l = build_matrix(&g, MatrixKind::Laplacian);
        for i in 0..5 {
            assert_eq!(l.row(i).iter().sum::<f64>(), 0.0);
        }
        // isolated vertex in the normalized Laplacian
        let h = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        let nl = build_matrix(&h, MatrixKind::NormalizedLaplacian);
        assert_eq!(nl.row(2), &[0.0, 0.0, 0.0]);
        assert_eq!(nl.get(0, 0), 1.0);
        for kind in MatrixKind::ALL {
            let m = build_matrix(&g, kind);
            for i in 0..5 {
                for j in 0..5 {
                    assert_eq!(m.get(i, j), m.get(j, i));
                }
            }
        }
    }

    #[test]
    fn k2_spectrum() {
        let s = sym_eigen(&build_matrix(&Graph::complete(2), MatrixKind::Adjacency)).unwrap();
        assert!(close(s.values[0], -1.0, 1e-12) && close(s.values[1], 1.0, 1e-12));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.vectors[0][0], h, 1e-12) && close(s.vectors[0][1], -h, 1e-12));
        assert!(close(s.vectors[1][0], h, 1e-12) && close(s.vectors[1][1], h, 1e-12));
    }

    #[test]
    fn c4_spectrum() {
        let s = sym_eigen(&build_matrix(&Graph::cycle(4), MatrixKind::Adjacency)).unwrap();
        for (got, want) in s.values.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!(close(*got, want, 1e-10), "{:?}", s.values);
        }
    }

    /// Roots of the characteristic polynomial of the example graph,
    /// x^5 − 6x^3 − 4x^2 + 3x + 2, by bisection on sign changes. The
    /// coefficients come from Faddeev–LeVerrier in exact integers.
    #[test]
    fn example_extremes_match_charpoly_roots() {
        let g = example();
        let coeffs = charpoly(&g);
        assert_eq!(coeffs, vec![1, 0, -6, -4, 3, 2]);
        let roots = bisect_roots(&coeffs, -6.0, 6.0);
        assert_eq!(roots.len(), 5);
        // frozen from the oracle above (and cross-checked at 40 digits)
        let golden_min = -1.775_712_855_736_214;
        let golden_max = 2.641_186_476_193_292;
        assert!(close(roots[0], golden_min, 1e-12));
        assert!(close(roots[4], golden_max, 1e-12));
        let s = sym_eigen(&build_matrix(&g, MatrixKind::Adjacency)).unwrap();
        for (got, want) in s.values.iter().zip(&roots) {
            assert!(close(*got, *want, 1e-10));
        }
        assert!(close(s.values[0], golden_min, 1e-10));
        assert!(close(s.values[4], golden_max, 1e-10));
    }

    fn charpoly(g: &Graph) -> Vec<i64> {
        let n = g.n();
        let mut a = vec![vec![0i64; n]; n];
        for &(u, v) in g.edges() {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
                .collect()
        };
        let mut coeffs = vec![1i64];
        let mut mk = vec![vec![0i64; n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
            let c_prev = *coeffs.last().unwrap();
            let mut next = mul(&a, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += c_prev;
            }
            mk = next;
            let am = mul(&a, &mk);
            let tr: i64 = (0..n).map(|i| am[i][i]).sum();
            coeffs.push(-tr / k as i64);
        }
        coeffs
    }

    fn bisect_roots(coeffs: &[i64], lo: f64, hi: f64) -> Vec<f64> {
        let eval = |x: f64| coeffs.iter().fold(0.0, |acc, &c| acc * x + c as f64);
        let steps = 200_000;
        let mut roots = Vec::new();
        let h = (hi - lo) / steps as f64;
        for i in 0..steps {
            let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
            let (fa, fb) = (eval(a), eval(b));
            if fa == 0.0 {
                roots.push(a);
                continue;
            }
            if fa * fb > 0.0 {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if eval(a) * eval(mid) <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        roots
    }

    #[test]
    fn extremal_vectors() {
        let v = extremal_vector(&Graph::complete(2), MatrixKind::Adjacency).unwrap();
        assert!(v[0] * v[1] < 0.0);
        let c4 = Graph::cycle(4);
        let s = sym_eigen(&build_matrix(&c4, MatrixKind::NormalizedLaplacian)).unwrap();
        assert!(close(s.largest().0, 2.0, 1e-10));
        let v = extremal_vector(&c4, MatrixKind::NormalizedLaplacian).unwrap();
        for i in 0..4 {
            assert!(close(v[i].abs(), 0.5, 1e-10));
            assert!(v[i] * v[(i + 1) % 4] < 0.0);
        }
    }

    #[test]
    fn bipartite_q_has_zero_minimum() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = random_bipartite_connected(&mut rng, 2, 12);
            let s = sym_eigen(&build_matrix(&g, MatrixKind::SignlessLaplacian)).unwrap();
            assert!(s.smallest().0.abs() < 1e-8);
            assert!(s.residual <= 1e-8 * build_matrix(&g, MatrixKind::SignlessLaplacian).inf_norm().max(1.0));
        }
    }

    #[test]
    fn perron_cases() {
        let v = perron_vector(&Graph::complete(3)).unwrap();
        for x in &v {
            assert!(close(*x, 1.0 / 3f64.sqrt(), 1e-12));
        }
        // star K_{1,3}: quotient matrix [[0,3],[1,0]] gives center/leaf = √3
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let v = perron_vector(&star).unwrap();
        assert!(close(v[0] / v[1], 3f64.sqrt(), 1e-10));
        let v = perron_vector(&Graph::path(3)).unwrap();
        assert!(close(v[1] / v[0], 2f64.sqrt(), 1e-10) && close(v[2], v[0], 1e-12));
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(perron_vector(&two), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn eigen_invariants_on_random_graphs() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..60 {
            let g = random_connected(&mut rng, 2, 14);
            for kind in MatrixKind::ALL {
                let m = build_matrix(&g, kind);
                let s = sym_eigen(&m).unwrap();
                assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
                assert!(s.residual <= RESIDUAL_TOL * m.inf_norm().max(1.0));
                for i in 0..g.n() {
                    for j in 0..g.n() {
                        let dot: f64 = s.vectors[i].iter().zip(&s.vectors[j]).map(|(a, b)| a * b).sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!(close(dot, want, 1e-8));
                    }
                    let first = s.vectors[i].iter().find(|x| x.abs() > SIGN_EPS).unwrap();
                    assert!(*first > 0.0);
                }
                // QL route agrees with Jacobi
                let ql = sym_eigenvalues(&m).unwrap();
                for (a, b) in ql.iter().zip(&s.values) {
                    assert!(close(*a, *b, 1e-10), "{kind:?}");
                }
            }
            let l = sym_eigen(&build_matrix(&g, MatrixKind::Laplacian)).unwrap();
            let trace: f64 = l.values.iter().sum();
            assert!(close(trace, 2.0 * g.edge_count() as f64, 1e-6));
        }
    }

    #[test]
    fn jacobi_agrees_with_nalgebra() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for _ in 0..20 {
            let g = random_connected(&mut rng, 3, 20);
            let m = build_matrix(&g, MatrixKind::NormalizedLaplacian);
            let n = g.n();
            let na = nalgebra::DMatrix::from_row_slice(n, n, m.entries());
            let mut want: Vec<f64> = na.symmetric_eigen().eigenvalues.iter().copied().collect();
            want.sort_by(f64::total_cmp);
            let got = sym_eigen(&m).unwrap().values;
            for (a, b) in got.iter().zip(&want) {
                assert!(close(*a, *b, 1e-10));
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let s = sym_eigen(&build_matrix(&Graph::empty(1), MatrixKind::Adjacency)).unwrap();
        assert_eq!(s.values, vec![0.0]);
        assert_eq!(s.vectors, vec![vec![1.0]]);
        let s = sym_eigen(&build_matrix(&Graph::empty(3), MatrixKind::NormalizedLaplacian)).unwrap();
        assert_eq!(s.values, vec![0.0; 3]);
        assert_eq!(
            sym_eigenvalues(&build_matrix(&Graph::empty(0), MatrixKind::Adjacency)).unwrap(),
            Vec::<f64>::new()
        );
    }
}
