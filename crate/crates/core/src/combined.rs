//! The combined matrix `C(A) = A ∘ A^-T` and the structural identities it
//! satisfies.
//!
//! Two constructions are provided and kept independent: [`combined`] goes
//! through the inverse and a Hadamard product, [`combined_via_cofactors`]
//! builds each entry as `(-1)^(i+j) a_ij A_ij / det A` directly from minors.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedResult {
    pub source: Matrix,
    pub combined: Matrix,
    pub det_source: Rational,
}

impl fmt::Display for CombinedResult {
    /// The combined matrix in the text format, preceded by `#` annotation
    /// lines so the output still parses as a matrix file.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# det A = {}", self.det_source)?;
        writeln!(f, "# C(A) = {}", self.combined.to_factored())?;
        f.write_str(&self.combined.to_text())
    }
}

fn nonsingular_det(a: &Matrix) -> Result<Rational> {
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::Singular { det });
    }
    Ok(det)
}

/// `A ∘ (A^-1)^T`.
pub fn combined(a: &Matrix) -> Result<CombinedResult> {
    let det_source = nonsingular_det(a)?;
    let inv_t = a.inverse()?.transpose();
    Ok(CombinedResult {
        source: a.clone(),
        combined: a.hadamard(&inv_t)?,
        det_source,
    })
}

/// Entry `(i, j)` is `(-1)^(i+j) · a_ij · minor(A, i, j) / det A`.
pub fn combined_via_cofactors(a: &Matrix) -> Result<Matrix> {
    let det = nonsingular_det(a)?;
    let n = a.rows();
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    let inv_det = det.recip()?;
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let aij = &a[(i - 1, j - 1)];
            if aij.is_zero() {
                row.push(Rational::zero());
                continue;
            }
            row.push(&(aij * &a.cofactor(i, j)?) * &inv_det);
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// `(1 / det A) · Σ a_ii · minor(A, i, i)`.
pub fn combined_trace(a: &Matrix) -> Result<Rational> {
    let det = nonsingular_det(a)?;
    let n = a.rows();
    if n == 1 {
        return Ok(Rational::one());
    }
    let mut sum = Rational::zero();
    for i in 1..=n {
        let aii = &a[(i - 1, i - 1)];
        if !aii.is_zero() {
            sum += &(aii * &a.minor(i, i)?);
        }
    }
    sum.checked_div(&det)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenpairCheck {
    Holds,
    /// 1-based index of the first row whose sum differs from 1.
    Violated { row: usize },
}

/// Checks that `C · (1, …, 1)^T = (1, …, 1)^T`, i.e. every row sums to 1.
pub fn fixed_eigenpair_check(c: &Matrix) -> Result<EigenpairCheck> {
    if !c.is_square() {
        return Err(Error::NotSquare {
            rows: c.rows(),
            cols: c.cols(),
        });
    }
    let ones = vec![Rational::one(); c.cols()];
    let image = c.mul_vec(&ones)?;
    Ok(match image.iter().position(|x| !x.is_one()) {
        Some(r) => EigenpairCheck::Violated { row: r + 1 },
        None => EigenpairCheck::Holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identity {
    Holds,
    Violated { expected: Matrix, actual: Matrix },
}

impl Identity {
    pub fn holds(&self) -> bool {
        matches!(self, Identity::Holds)
    }

    fn compare(expected: Matrix, actual: Matrix) -> Self {
        if expected == actual {
            Identity::Holds
        } else {
            Identity::Violated { expected, actual }
        }
    }
}

/// `C(R(A)) = R(C(A))`.
pub fn reversing_commutes(a: &Matrix) -> Result<Identity> {
    let rc = combined(a)?.combined.reversing()?;
    let cr = combined(&a.reversing()?)?.combined;
    Ok(Identity::compare(rc, cr))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthogonalCheck {
    OrthogonalAndMatches,
    /// `A` is orthogonal but `C(A) ≠ A ∘ A`; never expected.
    OrthogonalMismatch { combined: Matrix, hadamard_square: Matrix },
    NotOrthogonal,
}

pub fn is_orthogonal(a: &Matrix) -> bool {
    a.is_square()
        && a.matmul(&a.transpose())
            .is_ok_and(|p| p == Matrix::identity(a.rows()))
}

/// For orthogonal `A`, `C(A)` must coincide with `A ∘ A`. Makes no claim about
/// non-orthogonal input.
pub fn orthogonal_shortcut_check(a: &Matrix) -> Result<OrthogonalCheck> {
    let c = combined(a)?.combined;
    if !is_orthogonal(a) {
        return Ok(OrthogonalCheck::NotOrthogonal);
    }
    let sq = a.hadamard(a)?;
    Ok(if c == sq {
        OrthogonalCheck::OrthogonalAndMatches
    } else {
        OrthogonalCheck::OrthogonalMismatch {
            combined: c,
            hadamard_square: sq,
        }
    })
}

/// For triangular `T` with nonzero diagonal, `C(T) = I`.
pub fn triangular_identity_check(t: &Matrix) -> Result<Identity> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    if !t.is_upper_triangular() && !t.is_lower_triangular() {
        return Err(Error::NotTriangular);
    }
    let c = combined(t)?.combined;
    Ok(Identity::compare(Matrix::identity(t.rows()), c))
}
