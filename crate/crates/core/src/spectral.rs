//! Signless Laplacian spectra and exact main-eigenvalue counts.
//!
//! The number of main eigenvalues of `Q` equals the rank of the walk matrix
//! `[j, Qj, ..., Q^{n-1}j]`, which is computed exactly with fraction-free
//! elimination over big integers. The floating spectrum comes from a cyclic
//! Jacobi solver and is only used for reporting and cross-checking.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense symmetric integer matrix `Q = D + A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl QMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|i| {
                let row = &self.entries[i * self.n..(i + 1) * self.n];
                row.iter()
                    .zip(x)
                    .filter(|(q, _)| **q != 0)
                    .map(|(q, xv)| xv * *q)
                    .sum()
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&v| v as f64).collect()
    }

    /// Largest absolute row sum.
    pub fn max_row_sum(&self) -> i64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum())
            .max()
            .unwrap_or(0)
    }
}

pub fn signless_laplacian(g: &Graph) -> QMatrix {
    let n = g.order();
    let mut entries = vec![0i64; n * n];
    for v in 0..n {
        entries[v * n + v] = g.degree(v) as i64;
        for u in g.neighbors(v) {
            entries[v * n + u] = 1;
        }
    }
    QMatrix { n, entries }
}

/// Columns `j, Qj, ..., Q^{n-1}j`, returned column by column.
pub fn walk_matrix(q: &QMatrix) -> Vec<Vec<BigInt>> {
    let n = q.order();
    let mut cols = Vec::with_capacity(n);
    let mut x: Vec<BigInt> = vec![BigInt::from(1); n];
    for _ in 0..n {
        let next = q.mul_vec(&x);
        cols.push(x);
        x = next;
    }
    cols
}

/// Rank of a matrix given as rows, by fraction-free Gaussian elimination.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = rows[r][col].clone();
            for c in col + 1..ncols {
                let v = &pivot * &rows[r][c] - &factor * &rows[rank][c];
                rows[r][c] = v / &prev;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Number of Q-main eigenvalues, computed exactly.
pub fn exact_main_count(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    let cols = walk_matrix(&signless_laplacian(g));
    // Rank is invariant under transposition, so columns serve as rows.
    bareiss_rank(cols)
}

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

pub const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// `1e-12` times the norm of the whole matrix. `a` is row-major `n x n`.
pub fn jacobi(a: &[f64], n: usize) -> Result<Eigen> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-12 * frob;
    let off_norm = |m: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m[i * n + i]).collect();
    let vectors = (0..n)
        .map(|k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok(Eigen {
        values,
        vectors,
        sweeps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    pub is_main: bool,
    /// Norm of the projection of the all-ones vector onto the eigenspace.
    pub projection_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSpectrumReport {
    pub n: usize,
    /// Groups in decreasing order of eigenvalue.
    pub groups: Vec<EigenGroup>,
    pub exact_main_count: usize,
}

impl QSpectrumReport {
    pub fn float_main_count(&self) -> usize {
        self.groups.iter().filter(|g| g.is_main).count()
    }

    pub fn eigenvalue_sum(&self) -> f64 {
        self.groups
            .iter()
            .map(|g| g.value * g.multiplicity as f64)
            .sum()
    }
}

pub fn default_group_tol(q: &QMatrix) -> f64 {
    1e-7 * (q.max_row_sum() as f64).max(1.0)
}

/// Spectrum with the default grouping tolerance.
pub fn q_spectrum_default(g: &Graph) -> Result<QSpectrumReport> {
    let tol = default_group_tol(&signless_laplacian(g));
    q_spectrum(g, tol)
}

pub fn q_spectrum(g: &Graph, group_tol: f64) -> Result<QSpectrumReport> {
    assert!(group_tol > 0.0, "group tolerance must be positive");
    let n = g.order();
    let q = signless_laplacian(g);
    let eig = jacobi(&q.to_f64(), n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.values[y].total_cmp(&eig.values[x]));

    let main_threshold = 1e-6 * (n as f64).sqrt();
    let mut groups = Vec::new();
    let mut i = 0;
    while i < n {
        let mut k = i + 1;
        while k < n && eig.values[order[k - 1]] - eig.values[order[k]] <= group_tol {
            k += 1;
        }
        let members = &order[i..k];
        // Squared projection of j onto the span of orthonormal eigenvectors.
        let proj_sq: f64 = members
            .iter()
            .map(|&e| {
                let s: f64 = eig.vectors[e].iter().sum();
                s * s
            })
            .sum();
        let value = members.iter().map(|&e| eig.values[e]).sum::<f64>() / members.len() as f64;
        groups.push(EigenGroup {
            value,
            multiplicity: members.len(),
            is_main: proj_sq.sqrt() > main_threshold,
            projection_norm: proj_sq.sqrt(),
        });
        i = k;
    }
    Ok(QSpectrumReport {
        n,
        groups,
        exact_main_count: exact_main_count(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn q_matrices() {
        let q = signless_laplacian(&named::cycle(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.get(i, j), if i == j { 2 } else { 1 });
            }
        }
        let q = signless_laplacian(&named::star(3));
        assert_eq!((0..4).map(|i| q.get(i, i)).collect::<Vec<_>>(), [3, 1, 1, 1]);
        assert_eq!(q.get(0, 2), 1);
        assert_eq!(q.get(1, 2), 0);
        let q = signless_laplacian(&named::path(2));
        assert_eq!(q.entries, [1, 1, 1, 1]);
        assert_eq!(signless_laplacian(&named::petersen()).trace(), 30);
    }

    #[test]
    fn star_walk_matrix() {
        let cols = walk_matrix(&signless_laplacian(&named::star(3)));
        assert_eq!(cols[0], big(&[1, 1, 1, 1]));
        assert_eq!(cols[1], big(&[6, 2, 2, 2]));
        assert_eq!(cols[2], big(&[24, 8, 8, 8]));
        assert_eq!(exact_main_count(&named::star(3)), 2);
    }

    #[test]
    fn regular_graphs_have_one_main() {
        for g in [
            named::cycle(4),
            named::complete(4),
            named::petersen(),
            named::prism(),
        ] {
            assert_eq!(exact_main_count(&g), 1);
        }
    }

    #[test]
    fn path_p3_has_two_mains() {
        assert_eq!(exact_main_count(&named::path(3)), 2);
    }

    #[test]
    fn bareiss_rank_small_matrices() {
        assert_eq!(bareiss_rank(vec![big(&[1, 2]), big(&[2, 4])]), 1);
        assert_eq!(bareiss_rank(vec![big(&[0, 1]), big(&[1, 0])]), 2);
        assert_eq!(
            bareiss_rank(vec![big(&[0, 0, 1]), big(&[0, 0, 2]), big(&[1, 1, 1])]),
            2
        );
        assert_eq!(bareiss_rank(vec![big(&[0, 0]), big(&[0, 0])]), 0);
        assert_eq!(
            bareiss_rank(vec![big(&[2, 3, 5]), big(&[7, 11, 13]), big(&[17, 19, 23])]),
            3
        );
    }

    #[test]
    fn walk_identities() {
        let g = named::prism();
        let mut g = g;
        let p = g.add_vertex();
        g.add_edge(0, p).unwrap();
        let prof = g.degree_profile();
        let cols = walk_matrix(&signless_laplacian(&g));
        for v in 0..g.order() {
            let d = prof.degree[v] as i64;
            let s = prof.neighbor_degree_sum[v] as i64;
            assert_eq!(cols[1][v], BigInt::from(2 * d));
            assert_eq!(cols[2][v], BigInt::from(2 * (d * d + s)));
        }
    }

    fn values(report: &QSpectrumReport) -> Vec<(f64, usize, bool)> {
        report
            .groups
            .iter()
            .map(|g| (g.value, g.multiplicity, g.is_main))
            .collect()
    }

    fn assert_groups(report: &QSpectrumReport, expected: &[(f64, usize, bool)]) {
        let got = values(report);
        assert_eq!(got.len(), expected.len(), "{got:?}");
        for (g, e) in got.iter().zip(expected) {
            assert!((g.0 - e.0).abs() < 1e-9, "{got:?}");
            assert_eq!((g.1, g.2), (e.1, e.2), "{got:?}");
        }
    }

    #[test]
    fn c4_spectrum() {
        let r = q_spectrum_default(&named::cycle(4)).unwrap();
        assert_groups(&r, &[(4.0, 1, true), (2.0, 2, false), (0.0, 1, false)]);
        assert_eq!(r.exact_main_count, 1);
    }

    #[test]
    fn star_spectrum() {
        let r = q_spectrum_default(&named::star(3)).unwrap();
        assert_groups(&r, &[(4.0, 1, true), (1.0, 2, false), (0.0, 1, true)]);
        assert_eq!(r.exact_main_count, 2);
    }

    #[test]
    fn k2_spectrum() {
        let r = q_spectrum_default(&named::path(2)).unwrap();
        assert_groups(&r, &[(2.0, 1, true), (0.0, 1, false)]);
        assert_eq!(r.exact_main_count, 1);
    }

    #[test]
    fn jacobi_reconstructs_matrix() {
        let g = named::petersen();
        let q = signless_laplacian(&g);
        let n = g.order();
        let eig = jacobi(&q.to_f64(), n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n)
                    .map(|k| eig.values[k] * eig.vectors[k][i] * eig.vectors[k][j])
                    .sum();
                assert!((r - q.get(i, j) as f64).abs() < 1e-9);
            }
        }
    }
}
