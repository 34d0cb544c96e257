//! Exhaustive cross-check of the fast paths against the brute-force oracle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::charpoly::{char_poly, determinant, pivot_sequence};
use crate::classify::closed_form_distinct_count;
use crate::error::{Error, Result};
use crate::oracle::{charpoly_exact, det_exact, eig_symmetric, kernel_rank, ExactMatrix};
use crate::quotient::{
    check_lifting_identity, has_minus_one, has_plus_one, quotient_eigenvalues, quotient_matrix,
};
use crate::sequence::{
    block_form, seidel_matrix, sequence_count, split_range, CreationSequence, Sequences,
    MAX_ENUMERATION_N,
};
use crate::spectra::{
    assemble_spectrum, eigvec_families, lifted_unit_eigenvectors, multiplicities,
};

/// Spectrum agreement with the dense eigensolver, per eigenvalue.
pub const SPECTRUM_TOLERANCE: f64 = 1e-8;
/// Smallest accepted gap between quotient eigenvalues, and the distance
/// within which `±1` counts as a quotient eigenvalue.
pub const QUOTIENT_GAP: f64 = 1e-8;

/// Largest `n` accepted by [`verify`]; the dense oracle is cubic per graph
/// and the graph count doubles with each step.
pub const MAX_VERIFY_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    CharPoly,
    Determinant,
    Multiplicities,
    Spectrum,
    Lifting,
    PivotBound,
    Eigenvectors,
    QuotientSimple,
    QuotientUnits,
    DistinctCount,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Check::CharPoly => "char_poly",
            Check::Determinant => "determinant",
            Check::Multiplicities => "multiplicities",
            Check::Spectrum => "spectrum",
            Check::Lifting => "lifting",
            Check::PivotBound => "pivot_bound",
            Check::Eigenvectors => "eigenvectors",
            Check::QuotientSimple => "quotient_simple",
            Check::QuotientUnits => "quotient_units",
            Check::DistinctCount => "distinct_count",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sequence: CreationSequence,
    pub check: Check,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.sequence, self.check, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub graphs: u64,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Collector<'a> {
    seq: &'a CreationSequence,
    failures: Vec<Failure>,
}

impl Collector<'_> {
    fn fail(&mut self, check: Check, detail: impl Into<String>) {
        self.failures.push(Failure {
            sequence: self.seq.clone(),
            check,
            detail: detail.into(),
        });
    }

    fn record<T>(&mut self, check: Check, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(check, e.to_string());
                None
            }
        }
    }
}

/// Runs every check on one connected sequence and returns what failed.
pub fn check_sequence(seq: &CreationSequence) -> Vec<Failure> {
    let mut c = Collector {
        seq,
        failures: Vec::new(),
    };
    let Some(bf) = c.record(Check::Lifting, block_form(seq).map_err(Error::from)) else {
        return c.failures;
    };
    let n = seq.len();
    let s = seidel_matrix(seq);
    let exact = ExactMatrix::from(&s);

    let phi = char_poly(seq);
    let oracle_phi = charpoly_exact(&exact);
    if phi != oracle_phi {
        c.fail(
            Check::CharPoly,
            format!("recurrence {phi}, oracle {oracle_phi}"),
        );
    }

    let det_oracle = det_exact(&exact);
    let sign = if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let det_phi = sign * phi.coeff(0);
    if let Some(det) = c.record(Check::Determinant, determinant(seq)) {
        if det != det_oracle || det != det_phi {
            c.fail(
                Check::Determinant,
                format!("pivots {det}, oracle {det_oracle}, (-1)^n Φ(0) {det_phi}"),
            );
        }
    }
    if let Some(d) = c.record(Check::PivotBound, pivot_sequence(seq)) {
        let one = BigRational::one();
        if let Some((i, di)) = d.pivots()[..n - 1]
            .iter()
            .enumerate()
            .find(|(_, di)| di.abs() <= one)
        {
            c.fail(Check::PivotBound, format!("|d_{}| = |{di}| <= 1", i + 1));
        }
    }

    let m = multiplicities(&bf);
    let null_minus = kernel_rank(&exact.shifted(1));
    let null_plus = kernel_rank(&exact.shifted(-1));
    if (m.n_minus1, m.n_plus1) != (null_minus, null_plus) {
        c.fail(
            Check::Multiplicities,
            format!(
                "formula ({}, {}), nullities of S+I and S-I ({null_minus}, {null_plus})",
                m.n_minus1, m.n_plus1
            ),
        );
    }

    let q = quotient_matrix(&bf);
    c.record(Check::Lifting, check_lifting_identity(&s, &bf, &q));

    if let Some(spec) = c.record(Check::Spectrum, assemble_spectrum(seq)) {
        let ours = spec.eigenvalues();
        match eig_symmetric(&s.to_f64_rows()) {
            Ok(dense) => {
                let worst = ours
                    .iter()
                    .zip(&dense)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                if ours.len() != dense.len() || worst > SPECTRUM_TOLERANCE {
                    c.fail(
                        Check::Spectrum,
                        format!("assembled {ours:?}, dense {dense:?}"),
                    );
                }
            }
            Err(e) => c.fail(Check::Spectrum, e.to_string()),
        }
        let observed = spec.distinct_count();
        let k = bf.k();
        let closed = closed_form_distinct_count(&bf);
        if observed == 3 || observed < 2 * k || observed > 2 * k + 2 || observed != closed {
            c.fail(
                Check::DistinctCount,
                format!("observed {observed}, closed form {closed}, k = {k}"),
            );
        }
    }

    if let Some((minus, plus)) = c.record(Check::Eigenvectors, eigvec_families(seq)) {
        let all: Vec<&Vec<i64>> = minus.vectors.iter().chain(&plus.vectors).collect();
        for (i, u) in all.iter().enumerate() {
            for v in &all[i + 1..] {
                let dot: i64 = u.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                if dot != 0 {
                    c.fail(Check::Eigenvectors, format!("{u:?} . {v:?} = {dot}"));
                }
            }
        }
    }
    c.record(Check::Eigenvectors, lifted_unit_eigenvectors(seq));

    match quotient_eigenvalues(&q) {
        Ok(eig) => {
            let gap = eig
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min);
            if gap <= QUOTIENT_GAP {
                c.fail(
                    Check::QuotientSimple,
                    format!("minimum gap {gap:e} in {eig:?}"),
                );
            }
            let contains = |t: f64| eig.iter().any(|e| (e - t).abs() <= QUOTIENT_GAP);
            if contains(-1.0) != has_minus_one(&bf) || contains(1.0) != has_plus_one(&bf) {
                c.fail(
                    Check::QuotientUnits,
                    format!("quotient eigenvalues {eig:?} for {bf}"),
                );
            }
        }
        Err(e) => c.fail(Check::QuotientSimple, e.to_string()),
    }

    c.failures
}

/// [`check_sequence`] over every connected sequence with `2 ≤ n ≤ max_n`,
/// splitting each length across `jobs` threads.
pub fn verify(max_n: usize, jobs: usize) -> Result<VerifyReport> {
    let cap = MAX_VERIFY_N.min(MAX_ENUMERATION_N);
    if !(2..=cap).contains(&max_n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: max_n,
            min: 2,
            max: cap,
        });
    }
    let mut report = VerifyReport {
        max_n,
        graphs: 0,
        failures: Vec::new(),
    };
    for n in 2..=max_n {
        let count = sequence_count(n)?;
        let chunks: Vec<Vec<Failure>> = std::thread::scope(|scope| {
            let handles: Vec<_> = split_range(count, jobs)
                .into_iter()
                .map(|range| {
                    scope.spawn(move || -> Result<Vec<Failure>> {
                        Ok(Sequences::range(n, range)?
                            .flat_map(|s| check_sequence(&s))
                            .collect())
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verify worker panicked"))
                .collect::<Result<_>>()
        })?;
        report.graphs += count;
        report.failures.extend(chunks.into_iter().flatten());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::parse_sequence;

    #[test]
    fn single_sequences_pass() {
        for s in ["01", "0011", "0101", "01100111", "001111", "0010001"] {
            let f = check_sequence(&parse_sequence(s).unwrap());
            assert!(f.is_empty(), "{s}: {f:?}");
        }
    }

    #[test]
    fn small_sweep_is_clean() {
        let r = verify(7, 1).unwrap();
        assert_eq!(r.graphs, (0..=5).map(|e| 1u64 << e).sum::<u64>());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(verify(7, 3).unwrap(), r);
    }

    #[test]
    fn range_is_enforced() {
        assert!(verify(1, 1).is_err());
        assert!(verify(MAX_VERIFY_N + 1, 1).is_err());
    }
}
