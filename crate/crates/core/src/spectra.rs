//! Multiplicities of `±1`, the assembled Seidel spectrum and explicit
//! integer eigenvectors.
//!
//! Inside a 0-run of length `s` the Seidel matrix is `J − I`, inside a 1-run
//! of length `t` it is `I − J`, and every other block is constant. A vector
//! supported on one run with zero sum there is therefore an eigenvector for
//! `−1` (0-run) or `+1` (1-run). Those give `Σ(s_i − 1) + Σ(t_i − 1)`
//! eigenvectors; the remaining `2k` eigenvalues are the simple eigenvalues of
//! the quotient matrix, lifted to vectors that are constant on each run.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotient::{
    has_minus_one, has_plus_one, minus_one_vector, plus_one_vector, quotient_eigenvalues,
    quotient_matrix,
};
use crate::sequence::{block_form, seidel_matrix, BlockForm, CreationSequence, SeidelMatrix};

/// Two eigenvalues closer than this are counted as one.
pub const DISTINCT_TOLERANCE: f64 = 1e-7;
/// Largest distance at which a quotient eigenvalue is snapped to exactly `±1`.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// Total multiplicities of `−1` and `+1` in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Multiplicities {
    pub n_minus1: usize,
    pub n_plus1: usize,
}

pub fn multiplicities(bf: &BlockForm) -> Multiplicities {
    let k = bf.k();
    let s: usize = bf.s().iter().sum();
    let t: usize = bf.t().iter().sum();
    Multiplicities {
        n_minus1: s - k + usize::from(has_minus_one(bf)),
        n_plus1: t - k + usize::from(has_plus_one(bf)),
    }
}

/// Seidel spectrum: `±1` copies outside the quotient plus the `2k` quotient
/// eigenvalues (ascending, with `±1` stored exactly when present).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub minus_one: usize,
    pub plus_one: usize,
    pub quotient: Vec<f64>,
    pub n: usize,
}

impl Spectrum {
    /// Every eigenvalue with multiplicity, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut all = Vec::with_capacity(self.n);
        all.extend(std::iter::repeat_n(-1.0, self.minus_one));
        all.extend(std::iter::repeat_n(1.0, self.plus_one));
        all.extend_from_slice(&self.quotient);
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn total_minus_one(&self) -> usize {
        self.minus_one + self.quotient.iter().filter(|&&x| x == -1.0).count()
    }

    pub fn total_plus_one(&self) -> usize {
        self.plus_one + self.quotient.iter().filter(|&&x| x == 1.0).count()
    }

    pub fn multiplicities(&self) -> Multiplicities {
        Multiplicities {
            n_minus1: self.total_minus_one(),
            n_plus1: self.total_plus_one(),
        }
    }

    /// Number of distinct eigenvalues, merging values closer than
    /// [`DISTINCT_TOLERANCE`].
    pub fn distinct_count(&self) -> usize {
        let all = self.eigenvalues();
        match all.first() {
            None => 0,
            Some(_) => {
                1 + all
                    .windows(2)
                    .filter(|w| w[1] - w[0] >= DISTINCT_TOLERANCE)
                    .count()
            }
        }
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues().iter().sum()
    }

    pub fn product(&self) -> f64 {
        self.eigenvalues().iter().product()
    }
}

fn block_form_of(seq: &CreationSequence) -> Result<BlockForm> {
    block_form(seq).map_err(Error::from)
}

fn snap(values: &mut [f64], target: f64) -> Result<()> {
    let (idx, dist) = values
        .iter()
        .enumerate()
        .map(|(i, v)| (i, (v - target).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Verification("empty quotient spectrum".into()))?;
    if dist > SNAP_TOLERANCE {
        return Err(Error::Verification(format!(
            "expected {target} among the quotient eigenvalues, nearest is {}",
            values[idx]
        )));
    }
    values[idx] = target;
    Ok(())
}

/// Quotient eigenvalues with the `±1` guaranteed by the run lengths made exact.
pub fn snapped_quotient_eigenvalues(bf: &BlockForm) -> Result<Vec<f64>> {
    let mut eig = quotient_eigenvalues(&quotient_matrix(bf))?;
    if has_minus_one(bf) {
        snap(&mut eig, -1.0)?;
    }
    if has_plus_one(bf) {
        snap(&mut eig, 1.0)?;
    }
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

pub fn assemble_spectrum(seq: &CreationSequence) -> Result<Spectrum> {
    let bf = block_form_of(seq)?;
    let k = bf.k();
    let quotient = snapped_quotient_eigenvalues(&bf)?;
    Ok(Spectrum {
        minus_one: bf.s().iter().sum::<usize>() - k,
        plus_one: bf.t().iter().sum::<usize>() - k,
        quotient,
        n: bf.n(),
    })
}

/// Integer eigenvectors sharing one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigvecFamily {
    pub value: i64,
    pub vectors: Vec<Vec<i64>>,
}

/// `e_1 + … + e_j − j·e_{j+1}` in `R^len`, for `1 ≤ j < len`.
pub fn run_vector(len: usize, j: usize) -> Vec<i64> {
    assert!(j >= 1 && j < len, "need 1 <= j < len");
    let mut x = vec![0; len];
    x[..j].fill(1);
    x[j] = -(j as i64);
    x
}

fn check_eigenvector(s: &SeidelMatrix, v: &[i64], value: i64) -> Result<()> {
    let sv = s.mul_vec(v);
    if sv.iter().zip(v).any(|(a, b)| *a != value * b) {
        return Err(Error::Verification(format!(
            "S·{v:?} = {sv:?}, expected {value} times the vector"
        )));
    }
    Ok(())
}

/// Zero-sum-per-run eigenvectors: the `−1` family from the 0-runs and the
/// `+1` family from the 1-runs. Each vector is checked against `S` exactly.
pub fn eigvec_families(seq: &CreationSequence) -> Result<(EigvecFamily, EigvecFamily)> {
    let bf = block_form_of(seq)?;
    let n = bf.n();
    let offsets = bf.cell_offsets();
    let mut minus = EigvecFamily {
        value: -1,
        vectors: Vec::new(),
    };
    let mut plus = EigvecFamily {
        value: 1,
        vectors: Vec::new(),
    };
    for (p, &size) in bf.cell_sizes().iter().enumerate() {
        let family = if BlockForm::is_one_cell(p) {
            &mut plus
        } else {
            &mut minus
        };
        for j in 1..size {
            let mut v = vec![0; n];
            v[offsets[p]..offsets[p + 1]].copy_from_slice(&run_vector(size, j));
            family.vectors.push(v);
        }
    }
    let s = seidel_matrix(seq);
    for family in [&minus, &plus] {
        for v in &family.vectors {
            check_eigenvector(&s, v, family.value)?;
        }
    }
    Ok((minus, plus))
}

/// `P·x`: repeats each quotient coordinate over its run.
pub fn lift_quotient_vector<T: Clone>(bf: &BlockForm, x: &[T]) -> Result<Vec<T>> {
    let dim = 2 * bf.k();
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    Ok(bf
        .cell_of_vertices()
        .into_iter()
        .map(|c| x[c].clone())
        .collect())
}

/// A quotient eigenvector for `±1` and its lift to `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedVector {
    pub value: i64,
    pub quotient_vector: Vec<i64>,
    pub vector: Vec<i64>,
}

/// Lifted `−1` (when `t_k = 1`) and `+1` (when `s_1 = 1`) eigenvectors,
/// verified exactly against `S`.
pub fn lifted_unit_eigenvectors(seq: &CreationSequence) -> Result<Vec<LiftedVector>> {
    let bf = block_form_of(seq)?;
    let s = seidel_matrix(seq);
    let mut out = Vec::new();
    for (value, x) in [(-1, minus_one_vector(&bf)), (1, plus_one_vector(&bf))] {
        if let Some(x) = x {
            let vector = lift_quotient_vector(&bf, &x)?;
            check_eigenvector(&s, &vector, value)?;
            out.push(LiftedVector {
                value,
                quotient_vector: x,
                vector,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SequenceError;
    use crate::sequence::parse_sequence;

    fn seq(s: &str) -> CreationSequence {
        parse_sequence(s).unwrap()
    }

    fn mult(s: &str) -> (usize, usize) {
        let m = multiplicities(&block_form(&seq(s)).unwrap());
        (m.n_minus1, m.n_plus1)
    }

    fn assert_close(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-9, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(mult("01100111"), (1, 4));
        assert_eq!(mult("001111"), (1, 3));
        assert_eq!(mult("0^4 1"), (4, 0));
    }

    #[test]
    fn spectrum_examples() {
        let r5 = 5f64.sqrt();
        let sp = assemble_spectrum(&seq("0011")).unwrap();
        assert_close(&sp.eigenvalues(), &[-r5, -1.0, 1.0, r5]);
        assert_eq!((sp.minus_one, sp.plus_one), (1, 1));

        let sp = assemble_spectrum(&seq("0111")).unwrap();
        assert_close(&sp.eigenvalues(), &[-3.0, 1.0, 1.0, 1.0]);
        assert_eq!(sp.distinct_count(), 2);

        // 010^{2}1: −1 twice, +1 once, roots of x² − x − 8.
        let sp = assemble_spectrum(&seq("01001")).unwrap();
        let r33 = 33f64.sqrt();
        assert_close(
            &sp.eigenvalues(),
            &[(1.0 - r33) / 2.0, -1.0, -1.0, 1.0, (1.0 + r33) / 2.0],
        );
        assert_eq!(
            sp.multiplicities(),
            Multiplicities {
                n_minus1: 2,
                n_plus1: 1
            }
        );
    }

    #[test]
    fn spectrum_rejects_singleton() {
        assert!(matches!(
            assemble_spectrum(&seq("0")),
            Err(Error::Sequence(SequenceError::Singleton))
        ));
    }

    #[test]
    fn worked_example_families() {
        let (minus, plus) = eigvec_families(&seq("01100111")).unwrap();
        assert_eq!(minus.vectors, vec![vec![0, 0, 0, 1, -1, 0, 0, 0]]);
        assert_eq!(
            plus.vectors,
            vec![
                vec![0, 1, -1, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 1, -1, 0],
                vec![0, 0, 0, 0, 0, 1, 1, -2],
            ]
        );
        let (minus, plus) = eigvec_families(&seq("01")).unwrap();
        assert!(minus.vectors.is_empty() && plus.vectors.is_empty());
    }

    #[test]
    fn lifted_vectors() {
        let b = block_form(&seq("01100111")).unwrap();
        assert_eq!(
            lift_quotient_vector(&b, &[2, -1, 0, 0]).unwrap(),
            vec![2, -1, -1, 0, 0, 0, 0, 0]
        );
        assert!(matches!(
            lift_quotient_vector(&b, &[1, 2, 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
        let lifted = lifted_unit_eigenvectors(&seq("01100111")).unwrap();
        assert_eq!(lifted.len(), 1);
        assert_eq!(lifted[0].value, 1);
        assert_eq!(lifted[0].vector, vec![2, -1, -1, 0, 0, 0, 0, 0]);

        // t_k = 1: (0, …, 0, 1, s_k) lifts to a −1 eigenvector.
        let lifted = lifted_unit_eigenvectors(&seq("0011000001")).unwrap();
        assert_eq!(lifted.len(), 1);
        assert_eq!(lifted[0].quotient_vector, vec![0, 0, 1, 5]);
        assert_eq!(lifted[0].vector, vec![0, 0, 0, 0, 1, 1, 1, 1, 1, 5]);

        let b = block_form(&seq("0101")).unwrap();
        let real = lift_quotient_vector(&b, &[0.5, -1.0, 2.0, 3.0]).unwrap();
        assert_eq!(real, vec![0.5, -1.0, 2.0, 3.0]);
    }

    #[test]
    fn run_vectors() {
        assert_eq!(run_vector(2, 1), vec![1, -1]);
        assert_eq!(run_vector(3, 2), vec![1, 1, -2]);
    }
}
