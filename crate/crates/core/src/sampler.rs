//! Seeded generators for random elements of structured matrix groups.
//!
//! Every generator draws from a ChaCha8 stream seeded with
//! [`SampleSpec::seed`], so a spec always reproduces the same matrix on every
//! platform. Membership is guaranteed by construction and re-checked with
//! [`certify`] in the test suites.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combined::is_orthogonal;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    GeneralLinear,
    SpecialLinearInteger,
    UpperTriangular,
    LowerTriangular,
    Diagonal,
    Orthogonal,
    Permutation,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::GeneralLinear,
        Group::SpecialLinearInteger,
        Group::UpperTriangular,
        Group::LowerTriangular,
        Group::Diagonal,
        Group::Orthogonal,
        Group::Permutation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::GeneralLinear => "general_linear",
            Group::SpecialLinearInteger => "special_linear_integer",
            Group::UpperTriangular => "upper_triangular",
            Group::LowerTriangular => "lower_triangular",
            Group::Diagonal => "diagonal",
            Group::Orthogonal => "orthogonal",
            Group::Permutation => "permutation",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown group {s:?}")))
    }
}

/// Requested determinant sign for the groups that support it
/// (`special_linear_integer` and `orthogonal`); ignored elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetSign {
    Plus,
    Minus,
}

impl DetSign {
    pub fn value(self) -> i64 {
        match self {
            DetSign::Plus => 1,
            DetSign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleSpec {
    pub group: Group,
    pub dim: usize,
    pub seed: u64,
    /// Magnitude cap for numerators, denominators and elementary multipliers.
    pub bound: u64,
    /// Number of elementary factors for `special_linear_integer`.
    pub steps: usize,
    pub det_sign: DetSign,
}

pub const DEFAULT_BOUND: u64 = 5;
/// Rejection loops give up after this many draws.
pub const MAX_ATTEMPTS: usize = 10_000;

impl SampleSpec {
    /// Defaults: `bound = 5`, `steps = 2·dim`, positive determinant.
    pub fn new(group: Group, dim: usize, seed: u64) -> Self {
        SampleSpec {
            group,
            dim,
            seed,
            bound: DEFAULT_BOUND,
            steps: (2 * dim).max(1),
            det_sign: DetSign::Plus,
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_det_sign(mut self, sign: DetSign) -> Self {
        self.det_sign = sign;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 1 {
            return Err(Error::InvalidSpec("dim must be at least 1".into()));
        }
        if self.bound < 1 || self.bound > i64::MAX as u64 {
            return Err(Error::InvalidSpec("bound must be in 1..=i64::MAX".into()));
        }
        if self.steps < 1 {
            return Err(Error::InvalidSpec("steps must be at least 1".into()));
        }
        Ok(())
    }
}

struct Draw {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Draw {
    fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.bound..=self.bound)
    }

    fn nonzero_int(&mut self) -> i64 {
        let k = self.rng.gen_range(1..=self.bound);
        if self.rng.gen_bool(0.5) {
            -k
        } else {
            k
        }
    }

    fn rational(&mut self) -> Rational {
        let den = self.rng.gen_range(1..=self.bound);
        Rational::new(self.int(), den).expect("positive denominator")
    }

    fn nonzero_rational(&mut self) -> Rational {
        let den = self.rng.gen_range(1..=self.bound);
        Rational::new(self.nonzero_int(), den).expect("positive denominator")
    }
}

fn reflection(n: usize) -> Matrix {
    let mut d = vec![Rational::one(); n];
    d[0] = -Rational::one();
    Matrix::diagonal(&d)
}

/// Draws one matrix from the requested group.
pub fn sample(spec: &SampleSpec) -> Result<Matrix> {
    spec.validate()?;
    let n = spec.dim;
    let mut g = Draw {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        bound: spec.bound as i64,
    };
    let m = match spec.group {
        Group::GeneralLinear => {
            let mut found = None;
            for _ in 0..MAX_ATTEMPTS {
                let m = Matrix::from_fn(n, n, |_, _| g.rational());
                if !m.det()?.is_zero() {
                    found = Some(m);
                    break;
                }
            }
            found.ok_or(Error::SamplerExhausted {
                group: spec.group.to_string(),
                attempts: MAX_ATTEMPTS,
            })?
        }
        Group::SpecialLinearInteger => {
            let mut m = Matrix::identity(n);
            if n > 1 {
                for _ in 0..spec.steps {
                    let i = g.rng.gen_range(0..n);
                    let mut j = g.rng.gen_range(0..n - 1);
                    if j >= i {
                        j += 1;
                    }
                    let k = g.nonzero_int();
                    // row_i += k·row_j, i.e. left-multiply by I + k·e_ij
                    let e = Matrix::from_fn(n, n, |r, c| {
                        if r == c {
                            Rational::one()
                        } else if r == i && c == j {
                            Rational::from(k)
                        } else {
                            Rational::zero()
                        }
                    });
                    m = e.matmul(&m)?;
                }
            }
            if spec.det_sign == DetSign::Minus {
                m = m.matmul(&reflection(n))?;
            }
            m
        }
        Group::UpperTriangular | Group::LowerTriangular => {
            let upper = spec.group == Group::UpperTriangular;
            Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    g.nonzero_rational()
                } else if (i < j) == upper {
                    g.rational()
                } else {
                    Rational::zero()
                }
            })
        }
        Group::Diagonal => {
            let d: Vec<Rational> = (0..n).map(|_| g.nonzero_rational()).collect();
            Matrix::diagonal(&d)
        }
        Group::Orthogonal => {
            let mut s = Matrix::zeros(n, n).to_rows();
            for i in 0..n {
                for j in i + 1..n {
                    let x = g.rational();
                    s[j][i] = -&x;
                    s[i][j] = x;
                }
            }
            let q = cayley(&Matrix::from_rows(s)?)?;
            if spec.det_sign == DetSign::Minus {
                q.matmul(&reflection(n))?
            } else {
                q
            }
        }
        Group::Permutation => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut g.rng);
            Matrix::from_fn(n, n, |i, j| {
                if perm[i] == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
        }
    };
    Ok(m)
}

/// Cayley transform `(I − S)(I + S)⁻¹` of a skew-symmetric `S`.
///
/// `I + S` is always invertible for real skew-symmetric `S` (its eigenvalues
/// are `1 + it`), so this never fails on valid input.
pub fn cayley(s: &Matrix) -> Result<Matrix> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let id = Matrix::identity(s.rows());
    id.sub(s)?.matmul(&id.add(s)?.inverse()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember(String),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Exact membership test for `group`.
pub fn certify(m: &Matrix, group: Group) -> Membership {
    use Membership::*;
    if !m.is_square() {
        return NotMember(format!("not square ({}x{})", m.rows(), m.cols()));
    }
    let det = match m.det() {
        Ok(d) => d,
        Err(e) => return NotMember(e.to_string()),
    };
    if det.is_zero() {
        return NotMember("det = 0".into());
    }
    match group {
        Group::GeneralLinear => Member,
        Group::SpecialLinearInteger => {
            if !m.is_integral() {
                NotMember("non-integer entry".into())
            } else if !det.abs().is_one() {
                NotMember(format!("det = {det}"))
            } else {
                Member
            }
        }
        Group::UpperTriangular if !m.is_upper_triangular() => {
            NotMember("nonzero entry below the diagonal".into())
        }
        Group::LowerTriangular if !m.is_lower_triangular() => {
            NotMember("nonzero entry above the diagonal".into())
        }
        Group::Diagonal if !m.is_diagonal() => NotMember("nonzero off-diagonal entry".into()),
        Group::UpperTriangular | Group::LowerTriangular | Group::Diagonal => Member,
        Group::Orthogonal => {
            if is_orthogonal(m) {
                Member
            } else {
                NotMember("M·Mᵀ ≠ I".into())
            }
        }
        Group::Permutation => {
            let n = m.rows();
            let zero_one = m.entries().iter().all(|x| x.is_zero() || x.is_one());
            let rows_ok = m.row_sums().iter().all(Rational::is_one);
            let cols_ok = m.col_sums().iter().all(Rational::is_one);
            if zero_one && rows_ok && cols_ok && n > 0 {
                Member
            } else {
                NotMember("not a 0/1 matrix with one 1 per row and column".into())
            }
        }
    }
}
