//! Distinct-eigenvalue classification and Seidel-cospectral families.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::charpoly::{char_poly, fingerprint};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::quotient::{has_minus_one, has_plus_one};
use crate::sequence::{
    block_form, parse_sequence, sequence_count, split_range, BlockForm, CreationSequence, Sequences,
};
use crate::spectra::assemble_spectrum;

/// String pattern a sequence matches in the few-eigenvalue characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PatternClass {
    /// `01^{n−1}`
    #[serde(rename = "Two_Complete")]
    TwoComplete,
    /// `0^{n−1}1`
    #[serde(rename = "Two_Star")]
    TwoStar,
    /// `01^{t_1}0^{s_2}1`
    #[serde(rename = "Four_TypeA")]
    FourTypeA,
    /// `0^{s_1}1^{t_1}`, `s_1 > 1`, `t_1 > 1`
    #[serde(rename = "Four_TypeB")]
    FourTypeB,
    /// `01^{t_1}0^{s_2}1^{t_2}`, `t_2 > 1`
    #[serde(rename = "Five_TypeA")]
    FiveTypeA,
    /// `0^{s_1}1^{t_1}0^{s_2}1`, `s_1 > 1`
    #[serde(rename = "Five_TypeB")]
    FiveTypeB,
    General,
}

impl PatternClass {
    /// Distinct-eigenvalue count the pattern is expected to force.
    pub fn predicted_count(self) -> Option<usize> {
        match self {
            PatternClass::TwoComplete | PatternClass::TwoStar => Some(2),
            PatternClass::FourTypeA | PatternClass::FourTypeB => Some(4),
            PatternClass::FiveTypeA | PatternClass::FiveTypeB => Some(5),
            PatternClass::General => None,
        }
    }
}

impl fmt::Display for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PatternClass::TwoComplete => "Two_Complete",
            PatternClass::TwoStar => "Two_Star",
            PatternClass::FourTypeA => "Four_TypeA",
            PatternClass::FourTypeB => "Four_TypeB",
            PatternClass::FiveTypeA => "Five_TypeA",
            PatternClass::FiveTypeB => "Five_TypeB",
            PatternClass::General => "General",
        };
        f.write_str(name)
    }
}

/// Pattern match on the run lengths alone.
pub fn pattern_class(bf: &BlockForm) -> PatternClass {
    let (s, t) = (bf.s(), bf.t());
    match bf.k() {
        1 if s[0] == 1 => PatternClass::TwoComplete,
        1 if t[0] == 1 => PatternClass::TwoStar,
        1 => PatternClass::FourTypeB,
        2 => match (s[0] == 1, t[1] == 1) {
            (true, true) => PatternClass::FourTypeA,
            (true, false) => PatternClass::FiveTypeA,
            (false, true) => PatternClass::FiveTypeB,
            (false, false) => PatternClass::General,
        },
        _ => PatternClass::General,
    }
}

/// Number of distinct Seidel eigenvalues from the run lengths: the `2k`
/// simple quotient eigenvalues, plus `−1` when it has copies outside the
/// quotient but is not already a quotient eigenvalue, and likewise for `+1`.
pub fn closed_form_distinct_count(bf: &BlockForm) -> usize {
    let k = bf.k();
    let extra_minus = bf.s().iter().any(|&s| s > 1) && !has_minus_one(bf);
    let extra_plus = bf.t().iter().any(|&t| t > 1) && !has_plus_one(bf);
    2 * k + usize::from(extra_minus) + usize::from(extra_plus)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctClass {
    pub predicted: PatternClass,
    /// `None` for [`PatternClass::General`], which fixes no count.
    pub predicted_count: Option<usize>,
    pub observed_count: usize,
}

impl DistinctClass {
    pub fn agrees(&self) -> bool {
        self.predicted_count
            .is_none_or(|c| c == self.observed_count)
    }
}

/// Pattern prediction next to the count observed on the assembled spectrum,
/// without judging whether they agree.
pub fn distinct_class(seq: &CreationSequence) -> Result<DistinctClass> {
    let bf = block_form(seq)?;
    let predicted = pattern_class(&bf);
    Ok(DistinctClass {
        predicted,
        predicted_count: predicted.predicted_count(),
        observed_count: assemble_spectrum(seq)?.distinct_count(),
    })
}

/// [`distinct_class`], failing when a characterized pattern's count differs
/// from the observed one.
pub fn classify(seq: &CreationSequence) -> Result<DistinctClass> {
    let class = distinct_class(seq)?;
    if !class.agrees() {
        return Err(Error::Verification(format!(
            "{seq} matches {} (predicted {} distinct eigenvalues) but has {}",
            class.predicted,
            class.predicted_count.unwrap_or_default(),
            class.observed_count
        )));
    }
    Ok(class)
}

/// The two eigenvalues of `01^{t_1}0^{s_2}1` other than `±1`, larger first:
/// `((s_2 − t_1) ± √((s_2 − t_1)² + 4(1 + t_1 + s_2 + 2 t_1 s_2))) / 2`.
pub fn four_type_a_roots(t1: usize, s2: usize) -> Result<(f64, f64)> {
    for (what, value) in [("t1", t1), ("s2", s2)] {
        if value == 0 {
            return Err(Error::OutOfRange {
                what,
                value,
                min: 1,
                max: usize::MAX,
            });
        }
    }
    let (t1, s2) = (t1 as f64, s2 as f64);
    let d = s2 - t1;
    let root = (d * d + 4.0 * (1.0 + t1 + s2 + 2.0 * t1 * s2)).sqrt();
    Ok(((d + root) / 2.0, (d - root) / 2.0))
}

/// `0^{n−2}1^2` and `010^{n−3}1` with their shared characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CospectralPair {
    pub members: [CreationSequence; 2],
    pub charpoly: IntPoly,
    /// `x² + (4 − n)x + (7 − 3n)`.
    pub quadratic: IntPoly,
    pub degree_sequences: [Vec<usize>; 2],
}

pub fn cospectral_pair(n: usize) -> Result<CospectralPair> {
    if n < 4 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 4,
            max: usize::MAX,
        });
    }
    let first = parse_sequence(&format!("0^{} 1^2", n - 2))?;
    let second = parse_sequence(&format!("0 1 0^{} 1", n - 3))?;
    let p1 = char_poly(&first);
    let p2 = char_poly(&second);
    if p1 != p2 {
        return Err(Error::Verification(format!(
            "{first} and {second} have different characteristic polynomials: {p1} vs {p2}"
        )));
    }
    let n_i = n as i64;
    let quadratic = IntPoly::from_i64(&[7 - 3 * n_i, 4 - n_i, 1]);
    let mut roots = vec![-1i64; n - 3];
    roots.push(1);
    let expected = &IntPoly::from_roots(&roots) * &quadratic;
    if expected != p1 {
        return Err(Error::Verification(format!(
            "characteristic polynomial {p1} is not (x + 1)^{}(x − 1)({quadratic})",
            n - 3
        )));
    }
    let degree_sequences = [first.degree_sequence(), second.degree_sequence()];
    Ok(CospectralPair {
        members: [first, second],
        charpoly: p1,
        quadratic,
        degree_sequences,
    })
}

/// Sequences of one length sharing a characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CospectralClass {
    pub fingerprint: IntPoly,
    pub members: Vec<CreationSequence>,
}

pub const DEFAULT_SEARCH_CAP: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `n` accepted.
    pub cap: usize,
    /// Worker threads; each takes a contiguous range of enumeration indices.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SEARCH_CAP,
            jobs: 1,
        }
    }
}

/// Groups all `2^{n−2}` sequences of length `n` by exact fingerprint and
/// returns every group with at least two members, ordered by size and then
/// by smallest member.
pub fn cospectral_search(n: usize, opts: SearchOptions) -> Result<Vec<CospectralClass>> {
    let cap = opts.cap.min(crate::sequence::MAX_ENUMERATION_N);
    if !(2..=cap).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: cap,
        });
    }
    let count = sequence_count(n)?;
    let ranges = split_range(count, opts.jobs);
    let chunks: Vec<Vec<(Vec<BigInt>, CreationSequence)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                scope.spawn(move || -> Result<Vec<(Vec<BigInt>, CreationSequence)>> {
                    Ok(Sequences::range(n, range)?
                        .map(|seq| (fingerprint(&seq), seq))
                        .collect())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect::<Result<_>>()
    })?;

    let mut groups: HashMap<Vec<BigInt>, Vec<CreationSequence>> = HashMap::new();
    for (key, seq) in chunks.into_iter().flatten() {
        groups.entry(key).or_default().push(seq);
    }
    let mut classes: Vec<CospectralClass> = groups
        .into_iter()
        .filter(|(_, members)| members.len() >= 2)
        .map(|(key, mut members)| {
            members.sort();
            CospectralClass {
                fingerprint: IntPoly::new(key),
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members[0].cmp(&b.members[0]))
    });
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CreationSequence {
        parse_sequence(s).unwrap()
    }

    fn class_of(s: &str) -> DistinctClass {
        classify(&seq(s)).unwrap()
    }

    #[test]
    fn classification_examples() {
        let c = class_of("01111");
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::TwoComplete, 2)
        );
        let c = class_of("00001");
        assert_eq!((c.predicted, c.observed_count), (PatternClass::TwoStar, 2));
        let c = class_of("0011");
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::FourTypeB, 4)
        );
        let c = class_of("010011");
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::FiveTypeA, 5)
        );
        let c = class_of("0101");
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::FourTypeA, 4)
        );
        let c = class_of("001101");
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::FiveTypeB, 5)
        );
        let c = class_of("010101");
        assert_eq!(c.predicted, PatternClass::General);
        assert_eq!(c.predicted_count, None);
    }

    #[test]
    fn pattern_counts_that_do_not_hold() {
        // 01^1 0^1 1^2 matches the five-eigenvalue pattern but has four.
        let c = distinct_class(&seq("01011")).unwrap();
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::FiveTypeA, 4)
        );
        assert!(!c.agrees());
        assert!(matches!(
            classify(&seq("01011")),
            Err(Error::Verification(_))
        ));
        // 0^2 1 0^3 1 likewise.
        let c = distinct_class(&seq("0010001")).unwrap();
        assert_eq!(
            (c.predicted, c.observed_count),
            (PatternClass::FiveTypeB, 4)
        );
        assert_eq!(
            closed_form_distinct_count(&block_form(&seq("0010001")).unwrap()),
            4
        );
    }

    #[test]
    fn closed_form_count_examples() {
        for (s, want) in [
            ("01", 2),
            ("0011", 4),
            ("01011", 4),
            ("010011", 5),
            ("01100111", 5),
        ] {
            let bf = block_form(&seq(s)).unwrap();
            assert_eq!(closed_form_distinct_count(&bf), want, "{s}");
        }
    }

    #[test]
    fn type_a_roots() {
        let r5 = 5f64.sqrt();
        let (a, b) = four_type_a_roots(1, 1).unwrap();
        assert!((a - r5).abs() < 1e-12 && (b + r5).abs() < 1e-12);
        let r33 = 33f64.sqrt();
        let (a, b) = four_type_a_roots(1, 2).unwrap();
        assert!((a - (1.0 + r33) / 2.0).abs() < 1e-12 && (b - (1.0 - r33) / 2.0).abs() < 1e-12);
        let (a, b) = four_type_a_roots(2, 1).unwrap();
        assert!((a - (-1.0 + r33) / 2.0).abs() < 1e-12 && (b - (-1.0 - r33) / 2.0).abs() < 1e-12);
        assert!(four_type_a_roots(0, 1).is_err());
    }

    #[test]
    fn type_a_roots_are_eigenvalues() {
        for t1 in 1..=4 {
            for s2 in 1..=4 {
                let s = seq(&format!("0 1^{t1} 0^{s2} 1"));
                let eig = assemble_spectrum(&s).unwrap().eigenvalues();
                let (a, b) = four_type_a_roots(t1, s2).unwrap();
                for r in [a, b] {
                    assert!(
                        eig.iter().any(|e| (e - r).abs() < 1e-9),
                        "{s}: {r} not in {eig:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn pair_examples() {
        let p = cospectral_pair(4).unwrap();
        assert_eq!(p.members[0].to_string(), "0011");
        assert_eq!(p.members[1].to_string(), "0101");
        assert_eq!(p.charpoly, IntPoly::from_i64(&[5, 0, -6, 0, 1]));
        assert_ne!(p.degree_sequences[0], p.degree_sequences[1]);

        let p = cospectral_pair(5).unwrap();
        assert_eq!(p.members[0].to_string(), "00011");
        assert_eq!(p.members[1].to_string(), "01001");
        assert_eq!(p.quadratic, IntPoly::from_i64(&[-8, -1, 1]));
        assert!(cospectral_pair(3).is_err());
    }

    #[test]
    fn search_small() {
        assert!(cospectral_search(3, SearchOptions::default())
            .unwrap()
            .is_empty());
        let found = cospectral_search(4, SearchOptions::default()).unwrap();
        assert_eq!(found.len(), 1);
        let members: Vec<String> = found[0].members.iter().map(|s| s.to_string()).collect();
        assert_eq!(members, vec!["0011", "0101"]);

        let found = cospectral_search(5, SearchOptions::default()).unwrap();
        assert!(found
            .iter()
            .any(|c| c.members.contains(&seq("00011")) && c.members.contains(&seq("01001"))));
        assert!(matches!(
            cospectral_search(19, SearchOptions::default()),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn search_is_independent_of_job_count() {
        let one = cospectral_search(
            9,
            SearchOptions {
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let four = cospectral_search(
            9,
            SearchOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }
}
