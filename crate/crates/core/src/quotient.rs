//! Quotient matrix of the Seidel matrix over the run partition.
//!
//! The runs `V_{s_1}, V_{t_1}, …, V_{s_k}, V_{t_k}` of a creation sequence form
//! an equitable partition of `S`. Every vertex of cell `p` sees, in cell `q ≠ p`,
//! `size(q)` entries all equal to `β` of the later cell, so
//!
//! ```text
//! Q[p][q] = σ(p, q) · size(q),   σ(p, q) = +1 if cell max(p, q) is a 0-run, −1 otherwise
//! Q[p][p] = s_j − 1 on 0-runs,   −(t_j − 1) on 1-runs
//! ```
//!
//! With `D = diag(s_1, t_1, …, s_k, t_k)`, `D^{1/2} Q D^{−1/2}` is symmetric and
//! its entries are `σ(p, q) √(size(p) size(q))`.

use serde::Serialize;

use crate::error::{Error, LinalgError, Result};
use crate::oracle::eig_symmetric;
use crate::sequence::{BlockForm, SeidelMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    k: usize,
    entries: Vec<Vec<i64>>,
    cell_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        2 * self.k
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, p: usize, q: usize) -> i64 {
        self.entries[p][q]
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.cell_sizes
    }

    /// `Q·x` in exact integer arithmetic.
    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// `+1` when the later of the two cells is a run of isolated vertices.
fn sigma(p: usize, q: usize) -> i64 {
    if BlockForm::is_one_cell(p.max(q)) {
        -1
    } else {
        1
    }
}

pub fn quotient_matrix(bf: &BlockForm) -> QuotientMatrix {
    let sizes = bf.cell_sizes();
    let dim = sizes.len();
    let entries = (0..dim)
        .map(|p| {
            (0..dim)
                .map(|q| {
                    if p == q {
                        sigma(p, p) * (sizes[p] as i64 - 1)
                    } else {
                        sigma(p, q) * sizes[q] as i64
                    }
                })
                .collect()
        })
        .collect();
    QuotientMatrix {
        k: bf.k(),
        entries,
        cell_sizes: sizes,
    }
}

/// Real symmetric matrix similar to a quotient matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrizedQuotient {
    entries: Vec<Vec<f64>>,
}

impl SymmetrizedQuotient {
    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }
}

pub fn symmetrize(q: &QuotientMatrix) -> SymmetrizedQuotient {
    let sizes = &q.cell_sizes;
    let dim = q.dim();
    let entries = (0..dim)
        .map(|p| {
            (0..dim)
                .map(|r| {
                    if p == r {
                        q.get(p, p) as f64
                    } else {
                        sigma(p, r) as f64 * ((sizes[p] * sizes[r]) as f64).sqrt()
                    }
                })
                .collect()
        })
        .collect();
    SymmetrizedQuotient { entries }
}

/// The `2k` eigenvalues of `Q_S`, ascending.
pub fn quotient_eigenvalues(q: &QuotientMatrix) -> Result<Vec<f64>, LinalgError> {
    eig_symmetric(symmetrize(q).entries())
}

/// `−1` is an eigenvalue of `Q_S` exactly when the last run of dominating
/// vertices has length one.
pub fn has_minus_one(bf: &BlockForm) -> bool {
    bf.t().last() == Some(&1)
}

/// `+1` is an eigenvalue of `Q_S` exactly when the first run of isolated
/// vertices has length one.
pub fn has_plus_one(bf: &BlockForm) -> bool {
    bf.s().first() == Some(&1)
}

/// `(0, …, 0, 1, s_k)`, the `−1` eigenvector of `Q_S` when `t_k = 1`.
pub fn minus_one_vector(bf: &BlockForm) -> Option<Vec<i64>> {
    has_minus_one(bf).then(|| {
        let mut x = vec![0; 2 * bf.k()];
        let dim = x.len();
        x[dim - 2] = 1;
        x[dim - 1] = *bf.s().last().unwrap() as i64;
        x
    })
}

/// `(t_1, −1, 0, …, 0)`, the `+1` eigenvector of `Q_S` when `s_1 = 1`.
pub fn plus_one_vector(bf: &BlockForm) -> Option<Vec<i64>> {
    has_plus_one(bf).then(|| {
        let mut x = vec![0; 2 * bf.k()];
        x[0] = bf.t()[0] as i64;
        x[1] = -1;
        x
    })
}

/// The `n × 2k` cell-indicator matrix `P`, `P[v][c] = 1` iff vertex `v` is in cell `c`.
pub fn indicator_matrix(bf: &BlockForm) -> Vec<Vec<i64>> {
    let dim = 2 * bf.k();
    bf.cell_of_vertices()
        .into_iter()
        .map(|c| {
            let mut row = vec![0; dim];
            row[c] = 1;
            row
        })
        .collect()
}

/// Checks `S·P = P·Q_S` entrywise.
pub fn check_lifting_identity(s: &SeidelMatrix, bf: &BlockForm, q: &QuotientMatrix) -> Result<()> {
    let p = indicator_matrix(bf);
    let n = s.n();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    let dim = q.dim();
    for v in 0..n {
        for c in 0..dim {
            let sp: i64 = (0..n).map(|u| s.get(v, u) as i64 * p[u][c]).sum();
            let pq: i64 = (0..dim).map(|d| p[v][d] * q.get(d, c)).sum();
            if sp != pq {
                return Err(Error::Verification(format!(
                    "(SP)[{v}][{c}] = {sp} but (PQ)[{v}][{c}] = {pq}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{block_form, parse_sequence, seidel_matrix};

    fn bf(s: &[usize], t: &[usize]) -> BlockForm {
        BlockForm::from_runs(s.to_vec(), t.to_vec()).unwrap()
    }

    #[test]
    fn single_pair() {
        let q = quotient_matrix(&bf(&[4], &[2]));
        assert_eq!(q.entries(), &[vec![3, -2], vec![-4, -1]]);
        let q = quotient_matrix(&bf(&[2], &[2]));
        assert_eq!(q.entries(), &[vec![1, -2], vec![-2, -1]]);
    }

    #[test]
    fn two_pairs() {
        let q = quotient_matrix(&bf(&[1, 3], &[1, 1]));
        assert_eq!(
            q.entries(),
            &[
                vec![0, -1, 3, -1],
                vec![-1, 0, 3, -1],
                vec![1, 1, 2, -1],
                vec![-1, -1, -3, 0],
            ]
        );
        assert_eq!(q.cell_sizes(), &[1, 1, 3, 1]);
    }

    #[test]
    fn symmetrization() {
        let q = quotient_matrix(&bf(&[2], &[2]));
        assert_eq!(
            symmetrize(&q).entries(),
            &[vec![1.0, -2.0], vec![-2.0, -1.0]]
        );

        let q = quotient_matrix(&bf(&[4], &[2]));
        let m = symmetrize(&q);
        let r8 = 8f64.sqrt();
        assert_eq!(m.entries()[0][0], 3.0);
        assert_eq!(m.entries()[1][1], -1.0);
        assert!((m.entries()[0][1] + r8).abs() < 1e-15);
        assert_eq!(m.entries()[0][1], m.entries()[1][0]);
    }

    #[test]
    fn eigenvalue_examples() {
        let r5 = 5f64.sqrt();
        let e = quotient_eigenvalues(&quotient_matrix(&bf(&[2], &[2]))).unwrap();
        assert!(
            (e[0] + r5).abs() < 1e-12 && (e[1] - r5).abs() < 1e-12,
            "{e:?}"
        );

        let e = quotient_eigenvalues(&quotient_matrix(&bf(&[1], &[3]))).unwrap();
        assert!(
            (e[0] + 3.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12,
            "{e:?}"
        );

        // 010^{n−3}1 with n = 6 carries both −1 and +1.
        let e = quotient_eigenvalues(&quotient_matrix(&bf(&[1, 3], &[1, 1]))).unwrap();
        assert!(e.iter().any(|x| (x + 1.0).abs() < 1e-9), "{e:?}");
        assert!(e.iter().any(|x| (x - 1.0).abs() < 1e-9), "{e:?}");
    }

    #[test]
    fn plus_minus_one_predicates() {
        assert!(has_minus_one(&bf(&[1, 1], &[2, 1])));
        assert!(!has_minus_one(&bf(&[1], &[4])));
        assert!(has_plus_one(&bf(&[1, 2], &[2, 3])));
        assert!(!has_plus_one(&bf(&[2], &[2])));

        let b = block_form(&parse_sequence("0101").unwrap()).unwrap();
        assert!(has_minus_one(&b));
        let e = quotient_eigenvalues(&quotient_matrix(&b)).unwrap();
        assert!(e.iter().any(|x| (x + 1.0).abs() < 1e-9), "{e:?}");
    }

    #[test]
    fn exact_plus_minus_one_vectors() {
        let b = bf(&[1, 2], &[2, 3]);
        let q = quotient_matrix(&b);
        let x = plus_one_vector(&b).unwrap();
        assert_eq!(x, vec![2, -1, 0, 0]);
        assert_eq!(q.mul_vec(&x), x);
        assert_eq!(minus_one_vector(&b), None);

        let b = bf(&[2, 3], &[2, 1]);
        let q = quotient_matrix(&b);
        let x = minus_one_vector(&b).unwrap();
        assert_eq!(x, vec![0, 0, 1, 3]);
        assert_eq!(q.mul_vec(&x), x.iter().map(|v| -v).collect::<Vec<_>>());
    }

    #[test]
    fn lifting_identity_on_example() {
        let seq = parse_sequence("01100111").unwrap();
        let b = block_form(&seq).unwrap();
        check_lifting_identity(&seidel_matrix(&seq), &b, &quotient_matrix(&b)).unwrap();
        assert_eq!(indicator_matrix(&b)[2], vec![0, 1, 0, 0]);
    }
}
