use thiserror::Error;

use crate::rational::Rational;

/// Every failure the engine can report. Nothing in the crate panics on bad
/// input; operations that would leave the rationals or violate a shape
/// precondition return one of these instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("singular matrix (det = {det})")]
    Singular { det: Rational },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// Indices are reported 1-based.
    #[error("index ({i}, {j}) out of range for {n}x{n} matrix")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("minors need n >= 2, got n = {n}")]
    MinorOfScalar { n: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("polynomial does not vanish at 1 (p(1) = {value})")]
    NotARootAtOne { value: Rational },

    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,

    #[error("matrix is neither upper nor lower triangular")]
    NotTriangular,

    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    WrongDimension { expected: usize, rows: usize, cols: usize },

    #[error("determinant must be 1 or -1, got {det}")]
    NotUnimodular { det: Rational },

    #[error("sampler for {group} gave up after {attempts} attempts")]
    SamplerExhausted { group: String, attempts: usize },

    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),

    #[error("unknown suite {name:?}; registered suites: {known}")]
    UnknownSuite { name: String, known: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
