//! Test-only oracles. These deliberately share no code path with the library
//! routines they check: determinants and characteristic polynomials by
//! Laplace expansion, products by explicit column dot products.

#![allow(dead_code)]

use combined_matrix::{Matrix, Polynomial, Rational};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn orthogonal3() -> Matrix {
    Matrix::from_ints(&[[2, -2, 1], [1, 2, 2], [2, 1, -2]]).scale(&q("-1/3"))
}

pub fn orthogonal3_combined() -> Matrix {
    Matrix::from_ints(&[[4, 4, 1], [1, 4, 4], [4, 1, 4]]).scale(&q("1/9"))
}

/// Cofactor expansion along the first row over any commutative ring given by
/// closures. Exponential; only for small n.
fn laplace<T: Clone>(
    m: &[Vec<T>],
    zero: &T,
    one: &T,
    add: &dyn Fn(&T, &T) -> T,
    sub: &dyn Fn(&T, &T) -> T,
    mul: &dyn Fn(&T, &T) -> T,
) -> T {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = zero.clone();
    for j in 0..n {
        let sub_m: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = mul(&m[0][j], &laplace(&sub_m, zero, one, add, sub, mul));
        acc = if j % 2 == 0 { add(&acc, &term) } else { sub(&acc, &term) };
    }
    acc
}

pub fn laplace_det(a: &Matrix) -> Rational {
    laplace(
        &a.to_rows(),
        &Rational::zero(),
        &Rational::one(),
        &|x, y| x + y,
        &|x, y| x - y,
        &|x, y| x * y,
    )
}

/// `det(λI − M)` with polynomial entries, expanded symbolically.
pub fn laplace_charpoly(m: &Matrix) -> Polynomial {
    let n = m.rows();
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -&m[(i, j)];
                    if i == j {
                        Polynomial::new(vec![c, Rational::one()])
                    } else {
                        Polynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    laplace(
        &entries,
        &Polynomial::zero(),
        &Polynomial::constant(Rational::one()),
        &|x, y| x + y,
        &|x, y| x - y,
        &|x, y| x * y,
    )
}

/// `(A B)_ij` as the dot product of row i of A with column j of B, written out
/// independently of `Matrix::matmul`.
pub fn dot_matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let bt = b.transpose();
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        a.row(i).iter().zip(bt.row(j)).map(|(x, y)| x * y).sum()
    })
}

/// Combined matrix straight from the definition: `a_ij · cof_ij / det`, with
/// cofactors and determinant from Laplace expansion.
pub fn oracle_combined(a: &Matrix) -> Matrix {
    let n = a.rows();
    let det = laplace_det(a);
    Matrix::from_fn(n, n, |i, j| {
        let minor = if n == 1 { Rational::one() } else { laplace_det(&a.without(i, j)) };
        let cof = if (i + j) % 2 == 0 { minor } else { -minor };
        (&a[(i, j)] * &cof).checked_div(&det).unwrap()
    })
}
