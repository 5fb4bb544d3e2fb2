//! Dense exact matrices over the rationals.
//!
//! Public row/column indices in [`Matrix::minor`] and [`Matrix::cofactor`]
//! are 1-based, as are the indices carried by errors. Element access through
//! `Index<(usize, usize)>` is 0-based like any Rust container.

use std::fmt;
use std::ops::Index;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Integer, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Dimension above which [`Matrix::inverse`] switches from the adjugate
/// formula to Gauss-Jordan elimination.
pub const ADJUGATE_MAX_DIM: usize = 4;

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::ShapeMismatch {
                op: "new",
                left_rows: rows,
                left_cols: cols,
                right_rows: data.len(),
                right_cols: 1,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::ShapeMismatch {
                    op: "from_rows",
                    left_rows: n,
                    left_cols: m,
                    right_rows: 1,
                    right_cols: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols: m, data })
    }

    /// Integer-entry convenience constructor. Panics on ragged input, so it is
    /// meant for literals in tests and examples.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// The all-ones matrix, the neutral element of the Hadamard product.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::one())
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn shape_err(&self, other: &Matrix, op: &'static str) -> Error {
        Error::ShapeMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(self.shape_err(other, "matmul"));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let (a, b) = (&self[(i, k)], &other[(k, j)]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                op: "mul_vec",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_err(other, "hadamard"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_err(other, "add"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_err(other, "sub"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Result<Rational> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| &self[(i, i)]).sum())
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &self[(i, j)]).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled by the lcm of its denominators so elimination
    /// runs over the integers; the scaling is divided out at the end.
    pub fn det(&self) -> Result<Rational> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = Integer::one();
        let mut work: Vec<Vec<Integer>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
            work.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let det = bareiss_det(work);
        Rational::new(det, scale)
    }

    /// Submatrix with 0-based row `i` and column `j` removed.
    pub fn without(&self, i: usize, j: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    fn check_minor_index(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.require_square()?;
        if n < 2 {
            return Err(Error::MinorOfScalar { n });
        }
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        Ok(n)
    }

    /// Minor `A_ij`, with 1-based `i` and `j`.
    pub fn minor(&self, i: usize, j: usize) -> Result<Rational> {
        self.check_minor_index(i, j)?;
        self.without(i - 1, j - 1).det()
    }

    /// Cofactor `(-1)^(i+j) A_ij`, with 1-based `i` and `j`.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<Rational> {
        let m = self.minor(i, j)?;
        Ok(if (i + j) % 2 == 0 { m } else { -m })
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(Matrix::identity(1));
        }
        let mut adj = Matrix::zeros(n, n);
        for i in 1..=n {
            for j in 1..=n {
                adj.data[(j - 1) * n + (i - 1)] = self.cofactor(i, j)?;
            }
        }
        Ok(adj)
    }

    /// Exact inverse: adjugate over determinant for `n <= 4`, elimination
    /// beyond that.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        if n <= ADJUGATE_MAX_DIM {
            self.inverse_adjugate()
        } else {
            self.inverse_elimination()
        }
    }

    pub fn inverse_adjugate(&self) -> Result<Matrix> {
        self.require_square()?;
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::Singular { det });
        }
        let inv_det = det.recip()?;
        Ok(self.adjugate()?.scale(&inv_det))
    }

    /// Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse_elimination(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::Singular { det: Rational::zero() });
            };
            a.swap(col, p);
            inv.swap(col, p);
            let pivot_inv = a[col][col].recip()?;
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x *= &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let d = &f * &a[col][c];
                        a[r][c] -= &d;
                    }
                    if !inv[col][c].is_zero() {
                        let d = &f * &inv[col][c];
                        inv[r][c] -= &d;
                    }
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// 180° rotation: entry `(i, j)` becomes `A[n-i+1][n-j+1]`.
    pub fn reversing(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        Ok(Matrix::from_fn(n, n, |i, j| self[(n - 1 - i, n - 1 - j)].clone()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_upper_triangular() && self.is_lower_triangular()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows) && self.is_square()
    }

    /// The diagonal part, off-diagonal entries zeroed.
    pub fn diag_part(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        Ok(Matrix::from_fn(n, n, |i, j| {
            if i == j {
                self[(i, j)].clone()
            } else {
                Rational::zero()
            }
        }))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
    }

    /// One-line nested-list form, e.g. `[[1,2],[3,4]]`.
    pub fn to_compact(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Pulls out the largest positive rational factor that leaves coprime
    /// integer entries, e.g. `1/9·[[4,4,1],[1,4,4],[4,1,4]]`. The factor is
    /// omitted when it is 1.
    pub fn to_factored(&self) -> String {
        let (factor, ints) = self.factor_out();
        if factor.is_one() {
            ints.to_compact()
        } else {
            format!("{}\u{b7}{}", factor, ints.to_compact())
        }
    }

    /// Returns `(c, B)` with `self = c·B`, `c > 0`, `B` integral with
    /// coprime entries. The zero matrix gives `(1, 0)`.
    pub fn factor_out(&self) -> (Rational, Matrix) {
        let l = self.data.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        let g = self
            .data
            .iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .fold(Integer::zero(), |acc, x| acc.gcd(&x));
        if g.is_zero() {
            return (Rational::one(), self.clone());
        }
        let factor = Rational::new(g, l).expect("lcm of denominators is nonzero");
        let inv = factor.recip().expect("factor is nonzero");
        (factor, self.scale(&inv))
    }

    /// Renders the plain text format: a header `rows cols`, then one line per
    /// row of whitespace-separated rationals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the plain text format. Blank lines and lines starting with `#`
    /// are skipped; errors carry 1-based line numbers.
    pub fn parse_text(input: &str) -> Result<Matrix> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header \"rows cols\"".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("invalid dimension {s:?}"),
            })
        };
        let (rows, cols) = match dims.as_slice() {
            [r, c] => (parse_dim(r)?, parse_dim(c)?),
            _ => {
                return Err(Error::Parse {
                    line: hline,
                    msg: "header must be two integers \"rows cols\"".into(),
                })
            }
        };
        if rows.checked_mul(cols).is_none() {
            return Err(Error::Parse {
                line: hline,
                msg: "matrix dimensions overflow".into(),
            });
        }

        let mut data = Vec::new();
        let mut seen = 0usize;
        let mut last_line = hline;
        for (lineno, line) in lines {
            last_line = lineno;
            if seen == rows {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected extra row (header declares {rows})"),
                });
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                let x: Rational = tok.parse().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("{e}"),
                })?;
                data.push(x);
            }
            let got = data.len() - before;
            if got != cols {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {cols} entries, found {got}"),
                });
            }
            seen += 1;
        }
        if seen != rows {
            return Err(Error::Parse {
                line: last_line + 1,
                msg: format!("expected {rows} rows, found {seen}"),
            });
        }
        Matrix::new(rows, cols, data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    /// Parses `{"rows": r, "cols": c, "entries": [["p/q", ...], ...]}`.
    pub fn parse_json(input: &str) -> Result<Matrix> {
        serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line().max(1),
            msg: e.to_string(),
        })
    }

    /// Accepts either format, choosing JSON when the first non-blank
    /// character is `{`.
    pub fn parse(input: &str) -> Result<Matrix> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }
}

/// Bareiss elimination over the integers. Consumes the working matrix.
fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = Integer::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self.to_compact())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.to_rows(),
        }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = String;
    fn try_from(r: MatrixRepr) -> std::result::Result<Self, String> {
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(format!(
                "entries do not match declared shape {}x{}",
                r.rows, r.cols
            ));
        }
        if r.rows == 0 && r.cols != 0 {
            return Err("a matrix with no rows must declare 0 columns".into());
        }
        Ok(Matrix {
            rows: r.rows,
            cols: r.cols,
            data: r.entries.into_iter().flatten().collect(),
        })
    }
}

/// The two anti-diagonal permutation matrices of order `n` whose product
/// conjugation realises the Reversing operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversingPair {
    /// `[δ(n-i+1, j)]`, left factor.
    pub m_rc: Matrix,
    /// `[δ(i, n-j+1)]`, right factor.
    pub m_rr: Matrix,
}

impl ReversingPair {
    pub fn new(n: usize) -> Self {
        let anti = |i: usize, j: usize| {
            if i + j == n - 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        };
        ReversingPair {
            m_rc: Matrix::from_fn(n, n, anti),
            m_rr: Matrix::from_fn(n, n, anti),
        }
    }

    /// `m_rc · A · m_rr`.
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        self.m_rc.matmul(a)?.matmul(&self.m_rr)
    }
}
