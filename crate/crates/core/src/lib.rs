//! Seidel spectra of connected threshold graphs, computed from creation
//! sequences in exact arithmetic where possible.
//!
//! ```
//! use threshold_seidel::{char_poly, determinant, parse_sequence};
//!
//! let g = parse_sequence("0^2 1^4").unwrap();
//! assert_eq!(g.to_string(), "001111");
//! assert_eq!(determinant(&g).unwrap(), 11.into());
//! assert_eq!(char_poly(&parse_sequence("0101").unwrap()).to_string(), "x^4 - 6x^2 + 5");
//! ```

#![allow(clippy::needless_range_loop)]

pub mod charpoly;
pub mod classify;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod quotient;
pub mod sequence;
pub mod spectra;
pub mod verify;

pub use charpoly::{
    char_poly, char_poly_with, determinant, fingerprint, pivot_sequence, PivotSequence,
    RecurrenceCoefficient,
};
pub use classify::{
    classify, closed_form_distinct_count, cospectral_pair, cospectral_search, distinct_class,
    four_type_a_roots, pattern_class, CospectralClass, CospectralPair, DistinctClass, PatternClass,
    SearchOptions,
};
pub use error::{Error, LinalgError, Result, SequenceError};
pub use poly::IntPoly;
pub use quotient::{quotient_eigenvalues, quotient_matrix, QuotientMatrix};
pub use sequence::{
    adjacency, block_form, enumerate_sequences, parse_sequence, seidel_matrix, sequence_at,
    sequence_count, BlockForm, CreationSequence, SeidelMatrix, Sequences,
};
pub use spectra::{
    assemble_spectrum, eigvec_families, lifted_unit_eigenvectors, multiplicities, EigvecFamily,
    LiftedVector, Multiplicities, Spectrum,
};
pub use verify::{check_sequence, verify, VerifyReport};
