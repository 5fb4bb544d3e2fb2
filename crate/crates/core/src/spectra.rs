//! Characteristic polynomials, deflation at the eigenvalue 1, rational roots,
//! Galois tags for small quotients, and the closed-form 2×2 theory.
//!
//! Characteristic polynomials are monic: `det(λI − M)`. This differs from
//! `det(M − λI)` by `(−1)^n` and has the same roots.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::rational::{Integer, Rational};

/// Monic characteristic polynomial by the Faddeev–LeVerrier recurrence:
/// `M_k = A·M_{k-1} + c_{n-k+1}·I`, `c_{n-k} = −tr(A·M_k)/k`.
pub fn charpoly(m: &Matrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let id = Matrix::identity(n);
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let am = m.matmul(&mk)?;
        mk = am.add(&id.scale(&coeffs[n - k + 1]))?;
        let tr = m.matmul(&mk)?.trace()?;
        coeffs[n - k] = -tr.checked_div(&Rational::from(k as i64))?;
    }
    Ok(Polynomial::new(coeffs))
}

/// Divides out `(λ − 1)`. Fails with the value `p(1)` when 1 is not a root.
pub fn deflate_at_one(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, rem) = p.div_linear(&Rational::one());
    if !rem.is_zero() {
        return Err(Error::NotARootAtOne { value: rem });
    }
    Ok(q)
}

/// All rational roots with multiplicities, ascending.
///
/// Denominators are cleared first; with `F` the resulting integer polynomial
/// and `c` its leading coefficient, every rational root `x` makes `c·x` an
/// integer root of the monic polynomial `G(y) = c^(d-1) F(y/c)`, and that
/// integer divides `G(0)`. Instead of factoring `G(0)` to enumerate its
/// divisors (hopeless for the coefficient sizes combined matrices produce),
/// the integer candidates are located by exact Sturm bisection and then
/// filtered by the divisibility condition and an exact evaluation.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Rational, usize)>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut roots = Vec::new();
    if deg == 0 {
        return Ok(roots);
    }

    // integer coefficients
    let l = p.coeffs().iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<Integer> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();

    let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
        ints.drain(..zero_mult);
    }
    let d = ints.len() - 1;
    if d == 0 {
        return Ok(roots);
    }

    let lc = ints[d].clone();
    let monic: Vec<Integer> = ints
        .iter()
        .enumerate()
        .map(|(i, a)| if i == d { Integer::one() } else { a * num_traits::pow(lc.clone(), d - 1 - i) })
        .collect();
    let g0 = monic[0].clone();
    let bound = monic[..d].iter().map(|c| c.abs()).max().unwrap_or_default() + Integer::one();

    let g = Polynomial::new(monic.iter().cloned().map(Rational::from).collect());
    let sturm = SturmChain::new(&g.squarefree_part()?);
    let mut candidates = Vec::new();
    let lo = -&bound - Integer::one();
    let v_lo = sturm.variations(&lo);
    let v_hi = sturm.variations(&bound);
    sturm.integer_roots(lo, bound, v_lo, v_hi, &mut candidates);

    let mut rest = p.clone();
    for y in candidates {
        if y.is_zero() || !(&g0 % &y).is_zero() {
            continue;
        }
        let x = Rational::new(y, lc.clone())?;
        let mut mult = 0;
        loop {
            let (quo, rem) = rest.div_linear(&x);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            mult += 1;
        }
        if mult > 0 {
            roots.push((x, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

struct SturmChain {
    seq: Vec<Polynomial>,
}

impl SturmChain {
    fn new(p: &Polynomial) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while let [.., a, b] = seq.as_slice() {
            if b.is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = a.div_rem(b).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        SturmChain { seq }
    }

    fn variations(&self, x: &Integer) -> usize {
        let x = Rational::from(x.clone());
        let signs: Vec<i32> = self
            .seq
            .iter()
            .map(|p| p.eval(&x).signum())
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Integer roots in `(a, b]`, where `va`, `vb` are the sign variations at
    /// the endpoints. Bisects only intervals known to contain real roots.
    fn integer_roots(&self, a: Integer, b: Integer, va: usize, vb: usize, out: &mut Vec<Integer>) {
        if va <= vb {
            return;
        }
        if &b - &a == Integer::one() {
            if self.seq[0].eval(&Rational::from(b.clone())).is_zero() {
                out.push(b);
            }
            return;
        }
        let mid = (&a + &b).div_floor(&Integer::from(2));
        let vm = self.variations(&mid);
        self.integer_roots(a, mid.clone(), va, vm, out);
        self.integer_roots(mid, b, vm, vb, out);
    }
}

/// Galois group of a small polynomial over the rationals, up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisTag {
    Identity,
    #[serde(rename = "order_2")]
    Order2,
    #[serde(rename = "cyclic_3")]
    Cyclic3,
    #[serde(rename = "sym_3")]
    Sym3,
    Undetermined,
}

impl GaloisTag {
    /// Group order, or `None` when undetermined.
    pub fn order(self) -> Option<u64> {
        match self {
            GaloisTag::Identity => Some(1),
            GaloisTag::Order2 => Some(2),
            GaloisTag::Cyclic3 => Some(3),
            GaloisTag::Sym3 => Some(6),
            GaloisTag::Undetermined => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GaloisTag::Identity => "identity",
            GaloisTag::Order2 => "order_2",
            GaloisTag::Cyclic3 => "cyclic_3",
            GaloisTag::Sym3 => "sym_3",
            GaloisTag::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for GaloisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn quadratic_discriminant(q: &Polynomial) -> Rational {
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    &(&b * &b) - &(&Rational::from(4) * &(&a * &c))
}

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²` for `aλ³ + bλ² + cλ + d`.
fn cubic_discriminant(q: &Polynomial) -> Rational {
    let (d, c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2), q.coeff(3));
    let r = |x: i64| Rational::from(x);
    let t1 = &r(18) * &(&(&a * &b) * &(&c * &d));
    let t2 = &r(4) * &(&(&b * &b) * &(&b * &d));
    let t3 = &(&b * &b) * &(&c * &c);
    let t4 = &r(4) * &(&a * &(&c * &(&c * &c)));
    let t5 = &r(27) * &(&(&a * &a) * &(&d * &d));
    &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
}

/// Classifies the Galois group of `q` for degree ≤ 3; higher degrees are
/// reported as [`GaloisTag::Undetermined`].
pub fn galois_tag(q: &Polynomial) -> GaloisTag {
    match q.degree() {
        None => GaloisTag::Undetermined,
        Some(0 | 1) => GaloisTag::Identity,
        Some(2) => {
            if quadratic_discriminant(q).is_square() {
                GaloisTag::Identity
            } else {
                GaloisTag::Order2
            }
        }
        Some(3) => {
            let roots = rational_roots(q).expect("cubic is nonzero");
            if let Some((r, _)) = roots.first() {
                let (quad, _) = q.div_linear(r);
                galois_tag(&quad)
            } else if cubic_discriminant(q).is_square() {
                GaloisTag::Cyclic3
            } else {
                GaloisTag::Sym3
            }
        }
        Some(_) => GaloisTag::Undetermined,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub charpoly: Polynomial,
    /// `charpoly / (λ − 1)`.
    pub quotient: Polynomial,
    pub rational_eigenvalues: Vec<(Rational, usize)>,
    pub galois_tag: GaloisTag,
    /// Eigenvectors for 1 and for the second eigenvalue; only for 2×2 input.
    pub eigenvectors_2x2: Option<[Vec<Rational>; 2]>,
}

fn ones_and_alternating() -> [Vec<Rational>; 2] {
    [
        vec![Rational::one(), Rational::one()],
        vec![Rational::one(), -Rational::one()],
    ]
}

/// Spectral data of a matrix with eigenvalue 1 (any combined matrix).
pub fn eigen_report(c: &Matrix) -> Result<EigenReport> {
    let charpoly = charpoly(c)?;
    let quotient = deflate_at_one(&charpoly)?;
    let rational_eigenvalues = rational_roots(&charpoly)?;
    let galois_tag = galois_tag(&quotient);
    let eigenvectors_2x2 = if c.rows() == 2 {
        let vs = ones_and_alternating();
        let second = -quotient.coeff(0);
        let ok = c.mul_vec(&vs[0])? == vs[0]
            && c.mul_vec(&vs[1])? == vs[1].iter().map(|x| x * &second).collect::<Vec<_>>();
        ok.then_some(vs)
    } else {
        None
    };
    Ok(EigenReport {
        charpoly,
        quotient,
        rational_eigenvalues,
        galois_tag,
        eigenvectors_2x2,
    })
}

fn require_2x2(a: &Matrix) -> Result<()> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

fn det_2x2(a: &Matrix) -> Rational {
    &(&a[(0, 0)] * &a[(1, 1)]) - &(&a[(0, 1)] * &a[(1, 0)])
}

/// Eigenvector basis `P = [[1, −1], [1, 1]]` (columns `(1,1)ᵀ`, `(−1,1)ᵀ`).
pub fn basis_2x2() -> Matrix {
    Matrix::from_ints(&[[1, -1], [1, 1]])
}

/// Closed-form spectral theory of `C(A)` for nonsingular 2×2 `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combined2 {
    pub report: EigenReport,
    /// `(1, det C(A))`.
    pub eigenvalues: (Rational, Rational),
    pub trace: Rational,
    pub det_combined: Rational,
    pub p: Matrix,
    pub d: Matrix,
    pub p_inv: Matrix,
}

impl Combined2 {
    /// `P · D · P⁻¹`.
    pub fn reconstruct(&self) -> Result<Matrix> {
        self.p.matmul(&self.d)?.matmul(&self.p_inv)
    }
}

/// Builds everything from the entries of `A` without forming `C(A)`:
/// `Tr C = 2a₁₁a₂₂/det A`, `det C = (a₁₁a₂₂ + a₁₂a₂₁)/det A`, eigenvalues
/// `{1, det C}` with eigenvectors `(1,1)ᵀ`, `(1,−1)ᵀ`, and `C = P·D·P⁻¹`.
pub fn combined2_closed_form(a: &Matrix) -> Result<Combined2> {
    require_2x2(a)?;
    let det = det_2x2(a);
    if det.is_zero() {
        return Err(Error::Singular { det });
    }
    let diag = &a[(0, 0)] * &a[(1, 1)];
    let anti = &a[(0, 1)] * &a[(1, 0)];
    let trace = (&diag + &diag).checked_div(&det)?;
    let det_combined = (&diag + &anti).checked_div(&det)?;
    let charpoly = Polynomial::new(vec![det_combined.clone(), -&trace, Rational::one()]);
    let quotient = deflate_at_one(&charpoly)?;
    let rational_eigenvalues = if det_combined.is_one() {
        vec![(Rational::one(), 2)]
    } else {
        let mut v = vec![(Rational::one(), 1), (det_combined.clone(), 1)];
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    };
    let galois_tag = galois_tag(&quotient);
    let p = basis_2x2();
    let p_inv = p.inverse()?;
    let d = Matrix::diagonal(&[Rational::one(), det_combined.clone()]);
    Ok(Combined2 {
        report: EigenReport {
            charpoly,
            quotient,
            rational_eigenvalues,
            galois_tag,
            eigenvectors_2x2: Some(ones_and_alternating()),
        },
        eigenvalues: (Rational::one(), det_combined.clone()),
        trace,
        det_combined,
        p,
        d,
        p_inv,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2ClosedForm {
    pub trace: Rational,
    pub det_combined: Rational,
    pub charpoly: Polynomial,
}

/// For `det A = ε ∈ {1, −1}`: `Tr C(A) = 2 + 2ε·a₁₂a₂₁`, `det C(A) = Tr − 1`.
pub fn sl2_closed_form(a: &Matrix) -> Result<Sl2ClosedForm> {
    require_2x2(a)?;
    let eps = det_2x2(a);
    if !eps.abs().is_one() {
        return Err(Error::NotUnimodular { det: eps });
    }
    let two = Rational::from(2);
    let anti = &a[(0, 1)] * &a[(1, 0)];
    let trace = &two + &(&two * &(&eps * &anti));
    let det_combined = &trace - &Rational::one();
    let charpoly = Polynomial::new(vec![det_combined.clone(), -&trace, Rational::one()]);
    Ok(Sl2ClosedForm {
        trace,
        det_combined,
        charpoly,
    })
}

/// `f(C(A)) = P · diag(f(1), f(det C(A))) · P⁻¹`, with the two values of `f`
/// supplied by the caller.
pub fn matrix_function_2x2(a: &Matrix, f1: &Rational, f2: &Rational) -> Result<Matrix> {
    require_2x2(a)?;
    let det = det_2x2(a);
    if det.is_zero() {
        return Err(Error::Singular { det });
    }
    let p = basis_2x2();
    p.matmul(&Matrix::diagonal(&[f1.clone(), f2.clone()]))?
        .matmul(&p.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn poly(cs: &[&str]) -> Polynomial {
        Polynomial::new(cs.iter().map(|c| q(c)).collect())
    }

    fn orthogonal3_combined() -> Matrix {
        Matrix::from_ints(&[[4, 4, 1], [1, 4, 4], [4, 1, 4]]).scale(&q("1/9"))
    }

    #[test]
    fn charpoly_examples() {
        let c = Matrix::from_ints(&[[-2, 3], [3, -2]]);
        assert_eq!(charpoly(&c).unwrap(), Polynomial::from_ints(&[-5, 4, 1]));
        let lm1 = Polynomial::from_ints(&[-1, 1]);
        for n in 0..6 {
            assert_eq!(charpoly(&Matrix::identity(n)).unwrap(), lm1.pow(n as u32));
        }
        let expected = &lm1 * &poly(&["1/9", "-1/3", "1"]);
        assert_eq!(charpoly(&orthogonal3_combined()).unwrap(), expected);
        assert!(charpoly(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn deflation_examples() {
        assert_eq!(
            deflate_at_one(&Polynomial::from_ints(&[-5, 4, 1])).unwrap(),
            Polynomial::from_ints(&[5, 1])
        );
        let lm1 = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(deflate_at_one(&lm1.pow(4)).unwrap(), lm1.pow(3));
        let cubic = &lm1 * &poly(&["1/9", "-1/3", "1"]);
        assert_eq!(deflate_at_one(&cubic).unwrap(), poly(&["1/9", "-1/3", "1"]));
        assert_eq!(
            deflate_at_one(&Polynomial::from_ints(&[1, 1])),
            Err(Error::NotARootAtOne { value: q("2") })
        );
        assert_eq!(deflate_at_one(&Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(
            rational_roots(&Polynomial::from_ints(&[-5, 4, 1])).unwrap(),
            vec![(q("-5"), 1), (q("1"), 1)]
        );
        assert_eq!(rational_roots(&poly(&["1/9", "-1/3", "1"])).unwrap(), vec![]);
        let lm1 = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(rational_roots(&lm1.pow(3)).unwrap(), vec![(q("1"), 3)]);
        assert_eq!(rational_roots(&Polynomial::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(rational_roots(&Polynomial::from_ints(&[3])).unwrap(), vec![]);
    }

    #[test]
    fn rational_roots_with_fractions_and_zero() {
        // 6x^4 - x^3 - x^2 = x^2 (3x + 1)(2x - 1)
        let p = Polynomial::from_ints(&[0, 0, -1, -1, 6]);
        assert_eq!(rational_roots(&p).unwrap(), vec![(q("-1/3"), 1), (q("0"), 2), (q("1/2"), 1)]);
        // x^2 - 2 has none
        assert_eq!(rational_roots(&Polynomial::from_ints(&[-2, 0, 1])).unwrap(), vec![]);
        // rational coefficients: (x - 2/3)^2 (x + 7/5)
        let r1 = Polynomial::linear_root(&q("2/3"));
        let r2 = Polynomial::linear_root(&q("-7/5"));
        let p = &(&r1 * &r1) * &r2;
        assert_eq!(rational_roots(&p).unwrap(), vec![(q("-7/5"), 1), (q("2/3"), 2)]);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(galois_tag(&Polynomial::from_ints(&[5, 1])), GaloisTag::Identity);
        assert_eq!(galois_tag(&poly(&["1/9", "-1/3", "1"])), GaloisTag::Order2);
        assert_eq!(galois_tag(&Polynomial::from_ints(&[2, -3, 1])), GaloisTag::Identity);
        assert_eq!(galois_tag(&Polynomial::from_ints(&[7])), GaloisTag::Identity);
        // x^3 - 3x + 1 has square discriminant 81
        assert_eq!(galois_tag(&Polynomial::from_ints(&[1, -3, 0, 1])), GaloisTag::Cyclic3);
        assert_eq!(galois_tag(&Polynomial::from_ints(&[-2, 0, 0, 1])), GaloisTag::Sym3);
        // (x - 1)(x^2 + 1)
        assert_eq!(galois_tag(&Polynomial::from_ints(&[-1, 1, -1, 1])), GaloisTag::Order2);
        assert_eq!(galois_tag(&Polynomial::from_ints(&[1, 0, 0, 0, 1])), GaloisTag::Undetermined);
    }

    #[test]
    fn closed_form_gl2() {
        let a = Matrix::from_ints(&[[1, 2], [3, 4]]);
        let cf = combined2_closed_form(&a).unwrap();
        assert_eq!(cf.eigenvalues, (q("1"), q("-5")));
        let c = Matrix::from_ints(&[[-2, 3], [3, -2]]);
        let v = vec![q("1"), q("-1")];
        assert_eq!(c.mul_vec(&v).unwrap(), vec![q("-5"), q("5")]);
        assert_eq!(cf.reconstruct().unwrap(), c);
        assert_eq!(cf.p_inv, Matrix::from_ints(&[[1, 1], [-1, 1]]).scale(&q("1/2")));
        assert_eq!(cf.report.galois_tag, GaloisTag::Identity);

        let id = combined2_closed_form(&Matrix::identity(2)).unwrap();
        assert_eq!(id.eigenvalues, (q("1"), q("1")));
        assert_eq!(id.d, Matrix::identity(2));
        assert_eq!(id.report.rational_eigenvalues, vec![(q("1"), 2)]);

        let tri = combined2_closed_form(&Matrix::from_ints(&[[2, 9], [0, -3]])).unwrap();
        assert_eq!(tri.det_combined, q("1"));
        assert_eq!(tri.d, Matrix::identity(2));

        assert!(matches!(
            combined2_closed_form(&Matrix::from_ints(&[[1, 2], [2, 4]])),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            combined2_closed_form(&Matrix::identity(3)),
            Err(Error::WrongDimension { expected: 2, .. })
        ));
    }

    #[test]
    fn closed_form_sl2() {
        let cf = sl2_closed_form(&Matrix::from_ints(&[[2, 3], [1, 2]])).unwrap();
        assert_eq!((cf.trace.clone(), cf.det_combined.clone()), (q("8"), q("7")));
        assert_eq!(
            rational_roots(&cf.charpoly).unwrap(),
            vec![(q("1"), 1), (q("7"), 1)]
        );
        let cf = sl2_closed_form(&Matrix::identity(2)).unwrap();
        assert_eq!((cf.trace, cf.det_combined), (q("2"), q("1")));
        let cf = sl2_closed_form(&Matrix::from_ints(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!((cf.trace.clone(), cf.det_combined.clone()), (q("0"), q("-1")));
        assert_eq!(
            rational_roots(&cf.charpoly).unwrap(),
            vec![(q("-1"), 1), (q("1"), 1)]
        );
        assert_eq!(
            sl2_closed_form(&Matrix::from_ints(&[[1, 2], [3, 4]])),
            Err(Error::NotUnimodular { det: q("-2") })
        );
    }

    #[test]
    fn matrix_function_examples() {
        let a = Matrix::from_ints(&[[1, 2], [3, 4]]);
        let id = matrix_function_2x2(&a, &q("1"), &q("-5")).unwrap();
        assert_eq!(id, Matrix::from_ints(&[[-2, 3], [3, -2]]));
        assert_eq!(matrix_function_2x2(&a, &q("1"), &q("1")).unwrap(), Matrix::identity(2));
        assert_eq!(
            matrix_function_2x2(&a, &q("1"), &q("25")).unwrap(),
            Matrix::from_ints(&[[13, -12], [-12, 13]])
        );
        assert!(matrix_function_2x2(&Matrix::from_ints(&[[1, 1], [1, 1]]), &q("1"), &q("1")).is_err());
    }

    #[test]
    fn eigen_report_for_orthogonal3() {
        let r = eigen_report(&orthogonal3_combined()).unwrap();
        assert_eq!(r.quotient, poly(&["1/9", "-1/3", "1"]));
        assert_eq!(r.rational_eigenvalues, vec![(q("1"), 1)]);
        assert_eq!(r.galois_tag, GaloisTag::Order2);
        assert_eq!(r.eigenvectors_2x2, None);

        let r2 = eigen_report(&Matrix::from_ints(&[[-2, 3], [3, -2]])).unwrap();
        assert!(r2.eigenvectors_2x2.is_some());
        assert_eq!(r2.galois_tag, GaloisTag::Identity);
    }
}
