//! Brute-force linear algebra used to cross-check the closed forms.
//!
//! Nothing here knows about threshold graphs. Determinants use
//! fraction-free (Bareiss) elimination, characteristic polynomials are
//! interpolated from determinants at `x = 0, 1, …, n`, nullities come from
//! rational row reduction and eigenvalues from cyclic Jacobi rotations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::LinalgError;
use crate::poly::IntPoly;
use crate::sequence::SeidelMatrix;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::NotSquare {
                rows: n,
                len: bad.len(),
            });
        }
        Ok(Self {
            n,
            entries: rows.iter().flatten().map(|&e| BigInt::from(e)).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// `self + c·I`.
    pub fn shifted(&self, c: i64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.entries[i * self.n + i] += c;
        }
        m
    }

    /// `x·I − self`.
    pub fn char_matrix_at(&self, x: &BigInt) -> Self {
        let mut m = Self {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        };
        for i in 0..self.n {
            m.entries[i * self.n + i] += x;
        }
        m
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[BigInt]>::to_vec)
            .collect()
    }
}

impl From<&SeidelMatrix> for ExactMatrix {
    fn from(s: &SeidelMatrix) -> Self {
        Self {
            n: s.n(),
            entries: s.rows().flatten().map(|&e| BigInt::from(e)).collect(),
        }
    }
}

/// Determinant by Bareiss fraction-free elimination with row swaps.
pub fn det_exact(m: &ExactMatrix) -> BigInt {
    let n = m.n;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                debug_assert!(num.is_multiple_of(&prev));
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `det(xI − m)` recovered from its values at `x = 0, 1, …, n` by Newton
/// forward differences.
pub fn charpoly_exact(m: &ExactMatrix) -> IntPoly {
    let n = m.n;
    let values: Vec<BigRational> = (0..=n)
        .map(|x| BigRational::from_integer(det_exact(&m.char_matrix_at(&BigInt::from(x)))))
        .collect();

    // Newton coefficients c_k = Δ^k v_0 / k!.
    let mut diffs = values;
    let mut newton = Vec::with_capacity(n + 1);
    let mut factorial = BigRational::one();
    for k in 0..=n {
        if k > 0 {
            factorial *= BigRational::from_integer(BigInt::from(k));
        }
        newton.push(&diffs[0] / &factorial);
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // Σ c_k · x(x−1)…(x−k+1), expanded in Horner form from the top.
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for k in (0..=n).rev() {
        // coeffs ← coeffs · (x − k) + c_k
        let shift = BigRational::from_integer(BigInt::from(k));
        let mut next = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i < n {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * &shift;
        }
        next[0] += &newton[k];
        coeffs = next;
    }
    let ints = coeffs
        .into_iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "characteristic polynomial of an integer matrix must be integral"
            );
            c.to_integer()
        })
        .collect();
    IntPoly::new(ints)
}

/// Nullity of `m` over the rationals.
pub fn kernel_rank(m: &ExactMatrix) -> usize {
    let n = m.n;
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot, rank);
        let inv = a[rank][col].recip();
        for j in col..n {
            a[rank][j] = &a[rank][j] * &inv;
        }
        for i in 0..n {
            if i == rank || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in col..n {
                let delta = &factor * &a[rank][j];
                a[i][j] -= delta;
            }
        }
        rank += 1;
    }
    n - rank
}

/// Symmetry tolerance for [`eig_symmetric`] inputs.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Off-diagonal Frobenius norm target, relative to the input norm.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues of a real symmetric matrix in ascending order, by cyclic
/// Jacobi rotations with a fixed row-by-row sweep order.
pub fn eig_symmetric(m: &[Vec<f64>]) -> Result<Vec<f64>, LinalgError> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(LinalgError::NotSquare {
            rows: n,
            len: bad.len(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = (m[i][j] - m[j][i]).abs();
            if gap > SYMMETRY_TOLERANCE || gap.is_nan() {
                return Err(LinalgError::NotSymmetric { i, j, gap });
            }
        }
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let norm = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_TOLERANCE * norm;
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sum += a[i][j] * a[i][j];
                }
            }
        }
        sum.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Applies the rotation that annihilates `a[p][q]` (and `a[q][p]`).
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.len();
    for k in 0..n {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}

/// Eigenvalues of an exact integer symmetric matrix.
pub fn eig_exact_symmetric(m: &ExactMatrix) -> Result<Vec<f64>, LinalgError> {
    use num_traits::ToPrimitive;
    let rows: Vec<Vec<f64>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    eig_symmetric(&rows)
}

/// True when `|a − b| ≤ tol · max(1, |a|, |b|)`.
pub fn close_relative(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}
