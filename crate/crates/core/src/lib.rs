//! Exact combined matrices over the rationals.
//!
//! The combined matrix of a nonsingular `A` is `C(A) = A ∘ A^-T`, the
//! Hadamard product of `A` with the transpose of its inverse. This crate
//! builds `C(A)` exactly, computes its characteristic polynomial, deflates the
//! eigenvalue 1 every combined matrix carries, classifies the Galois group of
//! what is left when that is small enough, and checks the known structural
//! identities on fixed examples and on seeded random group elements.
//!
//! ```
//! use combined_matrix::{combined, Matrix, Rational};
//!
//! let a = Matrix::from_ints(&[[1, 2], [3, 4]]);
//! let c = combined(&a).unwrap();
//! assert_eq!(c.combined, Matrix::from_ints(&[[-2, 3], [3, -2]]));
//! assert_eq!(c.det_source, Rational::from(-2));
//! ```

pub mod combined;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sampler;
pub mod spectra;

pub use combined::{
    combined, combined_trace, combined_via_cofactors, fixed_eigenpair_check,
    orthogonal_shortcut_check, reversing_commutes, triangular_identity_check, CombinedResult,
};
pub use error::{Error, Result};
pub use matrix::{Matrix, ReversingPair};
pub use poly::Polynomial;
pub use rational::{rat_arith, rat_is_square, ArithOp, Integer, Rational, SquareTest};
pub use sampler::{certify, sample, DetSign, Group, SampleSpec};
pub use spectra::{
    charpoly, combined2_closed_form, deflate_at_one, eigen_report, galois_tag,
    matrix_function_2x2, rational_roots, sl2_closed_form, EigenReport, GaloisTag,
};
