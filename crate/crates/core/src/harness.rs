//! Seeded property suites over random group elements.
//!
//! Each registered [`Suite`] pairs a sampler (how to draw one trial's input
//! matrices) with a checker (a pure function of those matrices). Reports keep
//! the failing inputs, so any counterexample can be re-checked without the
//! generator via [`recheck`], and a whole run replays from its seed.
//!
//! Two kinds of suite exist. Invariants must hold on every trial; the first
//! violation is a `fail`. Searches look for counterexamples to statements that
//! are claimed but not established; they always end as `gap_documented`, with
//! the counterexample attached when one turned up.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combined::{
    combined, combined_trace, combined_via_cofactors, fixed_eigenpair_check, is_orthogonal,
    orthogonal_shortcut_check, reversing_commutes, triangular_identity_check, EigenpairCheck,
    Identity, OrthogonalCheck,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::sampler::{sample, DetSign, Group, SampleSpec, DEFAULT_BOUND};
use crate::spectra::{
    charpoly, combined2_closed_form, deflate_at_one, galois_tag, matrix_function_2x2,
    sl2_closed_form, GaloisTag,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    GapDocumented,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::GapDocumented => "gap_documented",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Invariant,
    Search,
}

/// Which dimensions a suite runs at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimPolicy {
    /// The requested range, clamped into `min..=max`.
    Range { min: usize, max: usize },
    /// Always exactly this dimension, whatever was requested.
    Fixed(usize),
}

impl DimPolicy {
    pub fn resolve(self, requested: &RangeInclusive<usize>) -> RangeInclusive<usize> {
        match self {
            DimPolicy::Fixed(n) => n..=n,
            DimPolicy::Range { min, max } => {
                let lo = (*requested.start()).clamp(min, max);
                let hi = (*requested.end()).clamp(min, max);
                lo..=hi.max(lo)
            }
        }
    }
}

/// What a failed check saw. Both sides are rendered text so that any kind of
/// value (matrix, polynomial, scalar, tag) fits one schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub expected: String,
    pub actual: String,
}

impl From<Error> for Mismatch {
    fn from(e: Error) -> Self {
        Mismatch {
            expected: "no error".into(),
            actual: format!("error: {e}"),
        }
    }
}

type Check = std::result::Result<(), Mismatch>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// 0-based trial index within its dimension.
    pub trial: u64,
    pub dim: usize,
    pub inputs: Vec<Matrix>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub millis: u64,
}

impl PropertyReport {
    /// One human-readable summary line.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{:<28} {:<15} trials={:<6} seed={} ({} ms)",
            self.suite,
            self.verdict.to_string(),
            self.trials,
            self.seed,
            self.millis
        );
        if let Some(c) = &self.counterexample {
            let inputs: Vec<String> = c.inputs.iter().map(Matrix::to_compact).collect();
            s.push_str(&format!(
                "\n    counterexample (n={}, trial {}): inputs {}; expected {}; actual {}",
                c.dim,
                c.trial,
                inputs.join(", "),
                c.expected,
                c.actual
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Trials per dimension.
    pub trials: u64,
    pub dims: RangeInclusive<usize>,
    pub seed: u64,
    pub bound: u64,
    /// Elementary factors per special-linear sample; `None` means `2n`.
    pub steps: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            trials: 200,
            dims: 2..=5,
            seed: 7,
            bound: DEFAULT_BOUND,
            steps: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if *self.dims.start() < 1 || self.dims.start() > self.dims.end() {
            return Err(Error::InvalidSpec(format!(
                "dims must be a nonempty range of positive integers, got {}..{}",
                self.dims.start(),
                self.dims.end()
            )));
        }
        if self.bound < 1 {
            return Err(Error::InvalidSpec("bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// Draws trial inputs. Every matrix comes from a fresh [`SampleSpec`] whose
/// seed is the next value of one ChaCha8 stream, so a run is a pure function
/// of its configuration.
pub struct TrialSampler {
    rng: ChaCha8Rng,
    bound: u64,
    steps: Option<usize>,
}

impl TrialSampler {
    pub fn new(cfg: &RunConfig) -> Self {
        TrialSampler {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            bound: cfg.bound,
            steps: cfg.steps,
        }
    }

    pub fn spec(&mut self, group: Group, dim: usize) -> SampleSpec {
        let mut spec = SampleSpec::new(group, dim, self.rng.next_u64()).with_bound(self.bound);
        if let Some(k) = self.steps {
            spec = spec.with_steps(k);
        }
        spec
    }

    pub fn draw(&mut self, group: Group, dim: usize) -> Result<Matrix> {
        sample(&self.spec(group, dim))
    }

    pub fn draw_signed(&mut self, group: Group, dim: usize, sign: DetSign) -> Result<Matrix> {
        sample(&self.spec(group, dim).with_det_sign(sign))
    }

    pub fn draw_bounded(&mut self, group: Group, dim: usize, bound: u64) -> Result<Matrix> {
        sample(&self.spec(group, dim).with_bound(bound))
    }

    /// A random nonzero rational with numerator and denominator within the bound.
    pub fn nonzero_scalar(&mut self) -> Rational {
        let b = self.bound as i64;
        let num = self.rng.gen_range(1..=b) * if self.rng.gen_bool(0.5) { -1 } else { 1 };
        let den = self.rng.gen_range(1..=b);
        Rational::new(num, den).expect("positive denominator")
    }
}

type SampleFn = fn(&mut TrialSampler, usize) -> Result<Vec<Matrix>>;
type CheckFn = fn(&[Matrix]) -> Check;

pub struct Suite {
    pub name: &'static str,
    /// The statement under test.
    pub claim: &'static str,
    pub kind: SuiteKind,
    pub dims: DimPolicy,
    sample: SampleFn,
    check: CheckFn,
}

impl fmt::Debug for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Suite")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("dims", &self.dims)
            .finish()
    }
}

impl Suite {
    pub fn sample(&self, sampler: &mut TrialSampler, dim: usize) -> Result<Vec<Matrix>> {
        (self.sample)(sampler, dim)
    }

    pub fn check(&self, inputs: &[Matrix]) -> std::result::Result<(), Mismatch> {
        (self.check)(inputs)
    }
}

// ---------------------------------------------------------------------------
// rendering helpers for mismatches

trait Render {
    fn render(&self) -> String;
}

impl Render for Matrix {
    fn render(&self) -> String {
        self.to_compact()
    }
}

impl Render for Polynomial {
    fn render(&self) -> String {
        Polynomial::render(self)
    }
}

impl Render for Rational {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for Vec<Rational> {
    fn render(&self) -> String {
        let v: Vec<String> = self.iter().map(ToString::to_string).collect();
        format!("({})", v.join(","))
    }
}

impl Render for GaloisTag {
    fn render(&self) -> String {
        self.to_string()
    }
}

fn same<T: PartialEq + Render>(what: &str, expected: &T, actual: &T) -> Check {
    if expected == actual {
        Ok(())
    } else {
        Err(Mismatch {
            expected: format!("{what} = {}", expected.render()),
            actual: format!("{what} = {}", actual.render()),
        })
    }
}

fn require(what: &str, ok: bool, actual: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(Mismatch {
            expected: what.to_string(),
            actual: actual(),
        })
    }
}

fn identity_holds(what: &str, id: Identity) -> Check {
    match id {
        Identity::Holds => Ok(()),
        Identity::Violated { expected, actual } => same(what, &expected, &actual),
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

// ---------------------------------------------------------------------------
// samplers

fn one_gl(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![s.draw(Group::GeneralLinear, n)?])
}

fn two_gl(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![s.draw(Group::GeneralLinear, n)?, s.draw(Group::GeneralLinear, n)?])
}

fn gl_and_scalar(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    let a = s.draw(Group::GeneralLinear, n)?;
    let c = s.nonzero_scalar();
    Ok(vec![a, Matrix::from_rows(vec![vec![c]])?])
}

fn triangular_triple(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![
        s.draw(Group::UpperTriangular, n)?,
        s.draw(Group::LowerTriangular, n)?,
        s.draw(Group::Diagonal, n)?,
    ])
}

fn upper_lower_pair(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![s.draw(Group::UpperTriangular, n)?, s.draw(Group::LowerTriangular, n)?])
}

fn triangular_pairs(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![
        s.draw(Group::UpperTriangular, n)?,
        s.draw(Group::UpperTriangular, n)?,
        s.draw(Group::LowerTriangular, n)?,
        s.draw(Group::LowerTriangular, n)?,
    ])
}

/// One Cayley sample of each determinant sign, plus a permutation.
fn orthogonal_and_permutation(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![
        s.draw_signed(Group::Orthogonal, n, DetSign::Plus)?,
        s.draw_signed(Group::Orthogonal, n, DetSign::Minus)?,
        s.draw(Group::Permutation, n)?,
    ])
}

fn unimodular_pair(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![
        s.draw_signed(Group::SpecialLinearInteger, n, DetSign::Plus)?,
        s.draw_signed(Group::SpecialLinearInteger, n, DetSign::Minus)?,
    ])
}

/// Entries in {-1, 0, 1} make singular Hadamard products common.
fn sparse_gl_pair(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![
        s.draw_bounded(Group::GeneralLinear, n, 1)?,
        s.draw_bounded(Group::GeneralLinear, n, 1)?,
    ])
}

fn sparse_gl(s: &mut TrialSampler, n: usize) -> Result<Vec<Matrix>> {
    Ok(vec![s.draw_bounded(Group::GeneralLinear, n, 1)?])
}

// ---------------------------------------------------------------------------
// checkers

fn check_cofactor_form(x: &[Matrix]) -> Check {
    let a = &x[0];
    same("C(A)", &combined(a)?.combined, &combined_via_cofactors(a)?)
}

fn check_trace_form(x: &[Matrix]) -> Check {
    let a = &x[0];
    same("Tr C(A)", &combined(a)?.combined.trace()?, &combined_trace(a)?)
}

fn check_fixed_vector(x: &[Matrix]) -> Check {
    let c = combined(&x[0])?.combined;
    if let EigenpairCheck::Violated { row } = fixed_eigenpair_check(&c)? {
        return Err(Mismatch {
            expected: "C(A)·1 = 1".into(),
            actual: format!("row {row} sums to {}", c.row_sums()[row - 1]),
        });
    }
    let n = c.rows();
    let ones = vec![Rational::one(); n];
    same("row sums", &ones, &c.row_sums())?;
    same("column sums", &ones, &c.col_sums())
}

fn check_galois_bound(x: &[Matrix]) -> Check {
    let c = combined(&x[0])?.combined;
    let n = c.rows();
    let p = charpoly(&c)?;
    same("p(1)", &Rational::zero(), &p.eval(&Rational::one()))?;
    let q = deflate_at_one(&p)?;
    require(&format!("deg q = {}", n - 1), q.degree() == Some(n - 1), || {
        format!("deg q = {:?}", q.degree())
    })?;
    same("(λ-1)·q", &p, &(&Polynomial::linear_root(&Rational::one()) * &q))?;
    let tag = galois_tag(&q);
    match tag.order() {
        Some(order) => require(
            &format!("|Gal| divides {}!", n - 1),
            factorial(n - 1) % order == 0,
            || format!("tag {tag} of order {order}"),
        ),
        None => require("tag determined for deg q <= 3", n - 1 > 3, || {
            format!("undetermined tag for degree {}", n - 1)
        }),
    }
}

fn check_reversing_commute(x: &[Matrix]) -> Check {
    identity_holds("C(R(A)) vs R(C(A))", reversing_commutes(&x[0])?)
}

fn check_reversing_morphism(x: &[Matrix]) -> Check {
    let (a, b) = (&x[0], &x[1]);
    let lhs = a.hadamard(b)?.reversing()?;
    let rhs = a.reversing()?.hadamard(&b.reversing()?)?;
    same("R(A∘B)", &rhs, &lhs)?;
    same("R(R(A))", a, &a.reversing()?.reversing()?)
}

fn check_triangular_hadamard(x: &[Matrix]) -> Check {
    let (up, lo) = (&x[0], &x[1]);
    let expected = up.diag_part()?.matmul(&lo.diag_part()?)?;
    same("T+∘T-", &expected, &up.hadamard(lo)?)
}

fn check_triangular_identity(x: &[Matrix]) -> Check {
    for t in x {
        identity_holds("C(T)", triangular_identity_check(t)?)?;
        let r = crate::spectra::rational_roots(&charpoly(&combined(t)?.combined)?)?;
        same(
            "spectrum of C(T)",
            &vec![Rational::one(), Rational::from(t.rows() as i64)],
            &r.first()
                .map(|(v, m)| vec![v.clone(), Rational::from(*m as i64)])
                .unwrap_or_default(),
        )?;
    }
    Ok(())
}

fn check_triangular_morphism(x: &[Matrix]) -> Check {
    for pair in x.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let lhs = combined(&a.matmul(b)?)?.combined;
        let rhs = combined(a)?.combined.matmul(&combined(b)?.combined)?;
        same("C(AB)", &rhs, &lhs)?;
        same("C(AB)", &Matrix::identity(a.rows()), &lhs)?;
    }
    Ok(())
}

fn check_orthogonal_shortcut(x: &[Matrix]) -> Check {
    for q in x {
        match orthogonal_shortcut_check(q)? {
            OrthogonalCheck::OrthogonalAndMatches => {}
            OrthogonalCheck::OrthogonalMismatch {
                combined,
                hadamard_square,
            } => return same("C(Q)", &hadamard_square, &combined),
            OrthogonalCheck::NotOrthogonal => {
                return Err(Mismatch {
                    expected: "Q·Qᵀ = I".into(),
                    actual: format!("Q·Qᵀ = {}", q.matmul(&q.transpose())?.to_compact()),
                })
            }
        }
    }
    Ok(())
}

fn check_combined_symmetries(x: &[Matrix]) -> Check {
    let a = &x[0];
    let c = x[1][(0, 0)].clone();
    let ca = combined(a)?.combined;
    same("C(Aᵀ)", &ca.transpose(), &combined(&a.transpose())?.combined)?;
    same("C(A⁻¹)", &ca.transpose(), &combined(&a.inverse()?)?.combined)?;
    same("C(cA)", &ca, &combined(&a.scale(&c))?.combined)
}

fn check_gl2_closed_forms(x: &[Matrix]) -> Check {
    let a = &x[0];
    let c = combined(a)?.combined;
    let cf = combined2_closed_form(a)?;
    same("p_C(λ)", &charpoly(&c)?, &cf.report.charpoly)?;
    same("Tr C(A)", &c.trace()?, &cf.trace)?;
    same("det C(A)", &c.det()?, &cf.det_combined)?;
    same("1 + det C(A)", &cf.trace, &(&Rational::one() + &cf.det_combined))?;
    same(
        "Λ",
        &vec![Rational::one(), c.det()?],
        &vec![cf.eigenvalues.0.clone(), cf.eigenvalues.1.clone()],
    )?;
    let vs = cf.report.eigenvectors_2x2.clone().ok_or_else(|| Mismatch {
        expected: "eigenvectors present".into(),
        actual: "none".into(),
    })?;
    for (v, lambda) in vs.iter().zip([&cf.eigenvalues.0, &cf.eigenvalues.1]) {
        let lv: Vec<Rational> = v.iter().map(|x| x * lambda).collect();
        same("C·v", &lv, &c.mul_vec(v)?)?;
    }
    Ok(())
}

fn check_sl2_closed_forms(x: &[Matrix]) -> Check {
    x.iter().try_for_each(check_sl2_one)
}

fn check_sl2_one(a: &Matrix) -> Check {
    let eps = a.det()?;
    let c = combined(a)?.combined;
    let sl = sl2_closed_form(a)?;
    let expected_trace = &Rational::from(2)
        + &(&Rational::from(2) * &(&eps * &(&a[(0, 1)] * &a[(1, 0)])));
    same("Tr C(A)", &c.trace()?, &sl.trace)?;
    same("2 + 2·det(A)·a12·a21", &expected_trace, &sl.trace)?;
    same("det C(A)", &c.det()?, &sl.det_combined)?;
    same("Tr C(A) - 1", &(&sl.trace - &Rational::one()), &sl.det_combined)?;
    same("p_C(λ)", &charpoly(&c)?, &sl.charpoly)
}

fn check_gl2_galois(x: &[Matrix]) -> Check {
    let c = combined(&x[0])?.combined;
    let q = deflate_at_one(&charpoly(&c)?)?;
    same("Gal", &GaloisTag::Identity, &galois_tag(&q))
}

fn check_diagonalization(x: &[Matrix]) -> Check {
    let a = &x[0];
    let cf = combined2_closed_form(a)?;
    same("P·P⁻¹", &Matrix::identity(2), &cf.p.matmul(&cf.p_inv)?)?;
    same("P·D·P⁻¹", &combined(a)?.combined, &cf.reconstruct()?)
}

fn check_matrix_function(x: &[Matrix]) -> Check {
    let a = &x[0];
    let c = combined(a)?.combined;
    let one = Rational::one();
    let lam = c.det()?;
    same("f(C), f = id", &c, &matrix_function_2x2(a, &one, &lam)?)?;
    same("f(C), f = x²", &c.matmul(&c)?, &matrix_function_2x2(a, &one, &(&lam * &lam))?)?;
    if !lam.is_zero() {
        same("f(C), f = 1/x", &c.inverse()?, &matrix_function_2x2(a, &one, &lam.recip()?)?)?;
    }
    Ok(())
}

fn search_hadamard_closure(x: &[Matrix]) -> Check {
    let h = x[0].hadamard(&x[1])?;
    let d = h.det()?;
    require("det(A∘B) ≠ 0 for nonsingular A, B", !d.is_zero(), || {
        format!("A∘B = {} has det 0", h.to_compact())
    })
}

fn search_orthogonal_converse(x: &[Matrix]) -> Check {
    let a = &x[0];
    let c = combined(a)?.combined;
    let matches = c == a.hadamard(a)?;
    require(
        "C(A) = A∘A implies A·Aᵀ = I",
        !matches || is_orthogonal(a),
        || format!("C(A) = A∘A but A·Aᵀ = {}", a.matmul(&a.transpose()).map(|m| m.to_compact()).unwrap_or_default()),
    )
}

const ANY: DimPolicy = DimPolicy::Range { min: 1, max: 8 };

static REGISTRY: [Suite; 18] = [
    Suite {
        name: "cofactor_form",
        claim: "m_ij = (-1)^(i+j) a_ij A_ij / det A equals A ∘ A^-T entrywise",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: one_gl,
        check: check_cofactor_form,
    },
    Suite {
        name: "trace_form",
        claim: "Tr C(A) = (1/det A) Σ a_ii A_ii",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: one_gl,
        check: check_trace_form,
    },
    Suite {
        name: "fixed_vector",
        claim: "C(A)·(1,…,1)ᵀ = (1,…,1)ᵀ; all row and column sums are 1",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: one_gl,
        check: check_fixed_vector,
    },
    Suite {
        name: "galois_bound",
        claim: "p_C(1) = 0, deflation is exact, deg q = n-1, |Gal(q)| divides (n-1)!",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: one_gl,
        check: check_galois_bound,
    },
    Suite {
        name: "reversing_commute",
        claim: "C(R(A)) = R(C(A))",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: one_gl,
        check: check_reversing_commute,
    },
    Suite {
        name: "reversing_hadamard_morphism",
        claim: "R(A∘B) = R(A)∘R(B) and R is an involution",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: two_gl,
        check: check_reversing_morphism,
    },
    Suite {
        name: "triangular_hadamard",
        claim: "T+ ∘ T- = diag(T+)·diag(T-)",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: upper_lower_pair,
        check: check_triangular_hadamard,
    },
    Suite {
        name: "triangular_identity",
        claim: "C(T) = I_n and Λ(C(T)) = {1} (multiplicity n) for triangular and diagonal T",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Range { min: 1, max: 6 },
        sample: triangular_triple,
        check: check_triangular_identity,
    },
    Suite {
        name: "triangular_morphism",
        claim: "C(AB) = C(A)·C(B) for same-orientation triangular A, B",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Range { min: 1, max: 6 },
        sample: triangular_pairs,
        check: check_triangular_morphism,
    },
    Suite {
        name: "orthogonal_shortcut",
        claim: "C(Q) = Q∘Q for orthogonal Q (Cayley samples of both determinant signs, permutations)",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Range { min: 1, max: 6 },
        sample: orthogonal_and_permutation,
        check: check_orthogonal_shortcut,
    },
    Suite {
        name: "combined_symmetries",
        claim: "C(Aᵀ) = C(A)ᵀ, C(A⁻¹) = C(A)ᵀ, C(cA) = C(A)",
        kind: SuiteKind::Invariant,
        dims: ANY,
        sample: gl_and_scalar,
        check: check_combined_symmetries,
    },
    Suite {
        name: "gl2_closed_forms",
        claim: "2x2: closed-form trace, det and charpoly; Λ = {1, det C}; eigenvectors (1,1), (1,-1)",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Fixed(2),
        sample: one_gl,
        check: check_gl2_closed_forms,
    },
    Suite {
        name: "sl2_closed_forms",
        claim: "2x2, det A = ±1: Tr C = 2 + 2·det(A)·a12·a21, det C = Tr C - 1",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Fixed(2),
        sample: unimodular_pair,
        check: check_sl2_closed_forms,
    },
    Suite {
        name: "gl2_galois_identity",
        claim: "2x2: the deflated quotient splits, Galois group trivial",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Fixed(2),
        sample: one_gl,
        check: check_gl2_galois,
    },
    Suite {
        name: "diagonalization_2x2",
        claim: "2x2: C(A) = P·D·P⁻¹ with P = [[1,-1],[1,1]], D = diag(1, det C)",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Fixed(2),
        sample: one_gl,
        check: check_diagonalization,
    },
    Suite {
        name: "matrix_function_2x2",
        claim: "2x2: P·diag(f(1), f(det C))·P⁻¹ equals f(C) for f = id, x², 1/x",
        kind: SuiteKind::Invariant,
        dims: DimPolicy::Fixed(2),
        sample: one_gl,
        check: check_matrix_function,
    },
    Suite {
        name: "hadamard_group_claim",
        claim: "(GL_n, ∘) is closed: the Hadamard product of nonsingular matrices is nonsingular",
        kind: SuiteKind::Search,
        dims: DimPolicy::Fixed(3),
        sample: sparse_gl_pair,
        check: search_hadamard_closure,
    },
    Suite {
        name: "orthogonal_converse",
        claim: "C(A) = A∘A implies A is orthogonal",
        kind: SuiteKind::Search,
        dims: DimPolicy::Range { min: 2, max: 8 },
        sample: sparse_gl,
        check: search_orthogonal_converse,
    },
];

pub fn registry() -> &'static [Suite] {
    &REGISTRY
}

pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name).collect()
}

pub fn find_suite(name: &str) -> Result<&'static Suite> {
    REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite {
            name: name.to_string(),
            known: suite_names().join(", "),
        })
}

/// Runs `cfg.trials` trials per resolved dimension, stopping at the first
/// failure (invariants) or the first counterexample (searches).
pub fn run_suite(suite: &Suite, cfg: &RunConfig) -> Result<PropertyReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut sampler = TrialSampler::new(cfg);
    let mut run = 0u64;
    let mut found = None;
    'dims: for dim in suite.dims.resolve(&cfg.dims) {
        for trial in 0..cfg.trials {
            let inputs = suite.sample(&mut sampler, dim)?;
            run += 1;
            if let Err(m) = suite.check(&inputs) {
                found = Some(Counterexample {
                    trial,
                    dim,
                    inputs,
                    expected: m.expected,
                    actual: m.actual,
                });
                break 'dims;
            }
        }
    }
    let verdict = match (suite.kind, &found) {
        (SuiteKind::Search, _) => Verdict::GapDocumented,
        (SuiteKind::Invariant, Some(_)) => Verdict::Fail,
        (SuiteKind::Invariant, None) => Verdict::Pass,
    };
    Ok(PropertyReport {
        suite: suite.name.to_string(),
        seed: cfg.seed,
        trials: run,
        verdict,
        counterexample: found,
        millis: start.elapsed().as_millis() as u64,
    })
}

pub fn run_named(name: &str, cfg: &RunConfig) -> Result<PropertyReport> {
    run_suite(find_suite(name)?, cfg)
}

/// Runs every registered suite, concurrently, returning reports in registry
/// order.
pub fn run_all(cfg: &RunConfig) -> Result<Vec<PropertyReport>> {
    cfg.validate()?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = REGISTRY
            .iter()
            .map(|suite| scope.spawn(move || run_suite(suite, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

/// Re-runs a suite's checker on a reported counterexample. Returns the
/// mismatch when the counterexample still reproduces.
pub fn recheck(suite: &Suite, cex: &Counterexample) -> Option<Mismatch> {
    suite.check(&cex.inputs).err()
}

/// Parses `a..b` (inclusive) or a single dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimRange(pub RangeInclusive<usize>);

impl FromStr for DimRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("invalid dimension range {s:?} (expected a..b)"));
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if lo < 1 || lo > hi {
            return Err(bad());
        }
        Ok(DimRange(lo..=hi))
    }
}
