//! Randomized test-function families with analytic Fourier partners.
//!
//! Two bases are provided:
//! - [`BasisKind::Hermite1D`]: even Hermite–Fourier modes `u_0 … u_8`, each an
//!   eigenfunction of the 1-D Fourier transform with eigenvalue `±1`;
//! - [`BasisKind::LaguerreRadial`]: `e^{-x/2}` times nine normalized Laguerre
//!   polynomials, whose Fourier–Bessel partners are rational in `p²`.
//!
//! A [`CoefficientVector`] is a unit vector of mixing coefficients in one of
//! them. [`classify`] labels it against its analytic transform and
//! [`sample_corpus`] draws labelled corpora.

mod corpus;
mod hermite;
mod laguerre;
pub(crate) mod poly;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use poly::nonnegative_beyond;

pub use corpus::{
    candidate_seed, read_corpus, sample_corpus, sample_corpus_with, write_corpus, Corpus, CORPUS_FORMAT_VERSION,
};
pub use laguerre::laguerre_coefficients_from_monomials;

/// Default absolute threshold below which an analytic `φ` counts as negative.
pub const DEFAULT_LABEL_EPS: f64 = 1e-12;

/// Label grid for `φ`: `s` (or `p`) in `[0, 12]` with step `1e-3`.
pub const LABEL_GRID_MAX: f64 = 12.0;
pub const LABEL_GRID_STEP: f64 = 1e-3;

/// Positivity grid for 1-D `ψ`: `r ∈ [0, 12]`, step `1e-3`.
pub const HERMITE_POSITIVITY_MAX: f64 = 12.0;
pub const HERMITE_POSITIVITY_STEP: f64 = 1e-3;
/// Positivity grid for radial `ψ`: `x ∈ [0, 60]`, step `1e-2`.
pub const RADIAL_POSITIVITY_MAX: f64 = 60.0;
pub const RADIAL_POSITIVITY_STEP: f64 = 1e-2;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    #[serde(rename = "hermite1d")]
    Hermite1D,
    #[serde(rename = "laguerre-radial")]
    LaguerreRadial,
}

impl BasisKind {
    /// Number of mixing coefficients.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            BasisKind::Hermite1D => 5,
            BasisKind::LaguerreRadial => 9,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::Hermite1D => "hermite1d",
            BasisKind::LaguerreRadial => "laguerre-radial",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hermite1d" | "hermite" | "1d" => Ok(BasisKind::Hermite1D),
            "laguerre-radial" | "laguerre" | "radial" | "2d" => Ok(BasisKind::LaguerreRadial),
            other => Err(Error::InvalidParameter(format!("unknown basis kind `{other}`"))),
        }
    }
}

/// Ground-truth class of a test function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    /// `ψ ≥ 0` and `φ ≥ 0`.
    PP,
    /// `ψ ≥ 0` while `φ` takes both signs.
    PN,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::PP => "pp",
            Label::PN => "pn",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pp" => Ok(Label::PP),
            "pn" => Ok(Label::PN),
            other => Err(Error::InvalidParameter(format!("unknown label `{other}`"))),
        }
    }
}

/// Unit-norm mixing coefficients of one test function.
///
/// For [`BasisKind::Hermite1D`] the entries are `c_0, c_2, c_4, c_6, c_8`;
/// for [`BasisKind::LaguerreRadial`] they are `c_0 … c_8`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    kind: BasisKind,
    coeffs: Vec<f64>,
}

impl CoefficientVector {
    /// Wraps coefficients that are already unit norm (within `1e-12`).
    pub fn new(kind: BasisKind, coeffs: Vec<f64>) -> Result<Self> {
        Self::check_len(kind, &coeffs)?;
        let norm2: f64 = coeffs.iter().map(|c| c * c).sum();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "coefficients must have unit norm, got Σc² = {norm2}"
            )));
        }
        Ok(CoefficientVector { kind, coeffs })
    }

    /// Scales arbitrary non-zero coefficients onto the unit sphere.
    pub fn normalized(kind: BasisKind, raw: &[f64]) -> Result<Self> {
        Self::check_len(kind, raw)?;
        let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        Ok(CoefficientVector {
            kind,
            coeffs: raw.iter().map(|c| c / norm).collect(),
        })
    }

    fn check_len(kind: BasisKind, coeffs: &[f64]) -> Result<()> {
        if coeffs.len() != kind.len() {
            return Err(Error::InvalidParameter(format!(
                "{kind} needs {} coefficients, got {}",
                kind.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("coefficients must be finite".into()));
        }
        Ok(())
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Prepared 1-D evaluator; fails for radial vectors.
    pub fn hermite(&self) -> Result<Hermite1D> {
        self.expect(BasisKind::Hermite1D)?;
        Ok(Hermite1D {
            psi_poly: hermite::combined_poly(&self.coeffs, false),
            phi_poly: hermite::combined_poly(&self.coeffs, true),
        })
    }

    /// Prepared radial evaluator; fails for 1-D vectors.
    pub fn laguerre(&self) -> Result<LaguerreRadial> {
        self.expect(BasisKind::LaguerreRadial)?;
        Ok(LaguerreRadial {
            psi_poly: laguerre::combined_poly(&self.coeffs),
            phi: laguerre::PhiRadial::new(&self.coeffs),
        })
    }

    fn expect(&self, kind: BasisKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind { expected: kind, actual: self.kind })
        }
    }
}

/// A real even function together with its 1-D Fourier transform.
pub trait FourierPair1D: Sync {
    fn psi(&self, r: f64) -> f64;
    fn phi(&self, s: f64) -> f64;
}

/// A radial function on the plane together with its Fourier–Bessel transform.
pub trait RadialPair: Sync {
    fn psi(&self, x: f64) -> f64;
    fn phi(&self, p: f64) -> f64;
}

/// `ψ(r) = e^{-r²/2}`, its own transform.
#[derive(Debug, Clone, Copy, Default)]
pub struct Gaussian1D;

impl FourierPair1D for Gaussian1D {
    fn psi(&self, r: f64) -> f64 {
        (-0.5 * r * r).exp()
    }
    fn phi(&self, s: f64) -> f64 {
        (-0.5 * s * s).exp()
    }
}

/// `ψ(x) = e^{-x²/2}` on the plane, its own Fourier–Bessel transform.
#[derive(Debug, Clone, Copy, Default)]
pub struct RadialGaussian;

impl RadialPair for RadialGaussian {
    fn psi(&self, x: f64) -> f64 {
        (-0.5 * x * x).exp()
    }
    fn phi(&self, p: f64) -> f64 {
        (-0.5 * p * p).exp()
    }
}

/// Hermite combination with its polynomial factors expanded once.
#[derive(Debug, Clone)]
pub struct Hermite1D {
    psi_poly: [f64; 5],
    phi_poly: [f64; 5],
}

impl Hermite1D {
    /// `ψ(r) ≥ 0` on the positivity grid and beyond it.
    pub fn psi_is_nonnegative(&self) -> bool {
        let n = (HERMITE_POSITIVITY_MAX / HERMITE_POSITIVITY_STEP).round() as usize;
        grid_nonnegative(n, |k| {
            let r = k as f64 * HERMITE_POSITIVITY_STEP;
            poly::horner(&self.psi_poly, r * r)
        }) && nonnegative_beyond(&self.psi_poly, HERMITE_POSITIVITY_MAX.powi(2))
    }

    /// Minimum of the analytic `φ` on the label grid.
    pub fn phi_min(&self) -> f64 {
        let n = (LABEL_GRID_MAX / LABEL_GRID_STEP).round() as usize;
        (0..=n)
            .map(|k| self.phi(k as f64 * LABEL_GRID_STEP))
            .fold(f64::INFINITY, f64::min)
    }
}

impl FourierPair1D for Hermite1D {
    fn psi(&self, r: f64) -> f64 {
        hermite::eval(&self.psi_poly, r)
    }
    fn phi(&self, s: f64) -> f64 {
        hermite::eval(&self.phi_poly, s)
    }
}

/// Laguerre combination with its polynomial factors expanded once.
#[derive(Debug, Clone)]
pub struct LaguerreRadial {
    psi_poly: [f64; 9],
    phi: laguerre::PhiRadial,
}

impl LaguerreRadial {
    /// `ψ(x) ≥ 0` on the positivity grid and beyond it.
    pub fn psi_is_nonnegative(&self) -> bool {
        let n = (RADIAL_POSITIVITY_MAX / RADIAL_POSITIVITY_STEP).round() as usize;
        grid_nonnegative(n, |k| {
            poly::horner(&self.psi_poly, k as f64 * RADIAL_POSITIVITY_STEP)
        }) && nonnegative_beyond(&self.psi_poly, RADIAL_POSITIVITY_MAX)
    }

    /// Minimum of the analytic `φ` on the label grid, extended to the
    /// algebraic tail `p > 12` whenever the common numerator can turn
    /// negative there.
    pub fn phi_min(&self) -> f64 {
        let n = (LABEL_GRID_MAX / LABEL_GRID_STEP).round() as usize;
        let grid = (0..=n)
            .map(|k| self.phi(k as f64 * LABEL_GRID_STEP))
            .fold(f64::INFINITY, f64::min);
        let numerator = self.phi.common_numerator();
        if nonnegative_beyond(&numerator, LABEL_GRID_MAX * LABEL_GRID_MAX) {
            return grid;
        }
        // p from 12 to 1.2e5, geometrically spaced
        const TAIL_POINTS: usize = 4000;
        let tail = (0..=TAIL_POINTS)
            .map(|j| {
                let p = LABEL_GRID_MAX * 1e4f64.powf(j as f64 / TAIL_POINTS as f64);
                self.phi(p)
            })
            .fold(f64::INFINITY, f64::min);
        grid.min(tail)
    }
}

impl RadialPair for LaguerreRadial {
    fn psi(&self, x: f64) -> f64 {
        laguerre::eval_psi(&self.psi_poly, x)
    }
    fn phi(&self, p: f64) -> f64 {
        self.phi.eval(p)
    }
}

/// Coarse pass first so that most rejections are cheap.
fn grid_nonnegative(n: usize, value: impl Fn(usize) -> f64) -> bool {
    const STRIDE: usize = 16;
    (0..=n).step_by(STRIDE).all(|k| value(k) >= 0.0) && (0..=n).all(|k| value(k) >= 0.0)
}

/// `ψ(r) = Σ_p c_{2p} u_{2p}(r)`.
pub fn eval_psi_1d(cv: &CoefficientVector, r: f64) -> Result<f64> {
    Ok(cv.hermite()?.psi(r))
}

/// `φ(s)`: the same expansion with the `c_2` and `c_6` terms negated.
pub fn eval_phi_1d(cv: &CoefficientVector, s: f64) -> Result<f64> {
    Ok(cv.hermite()?.phi(s))
}

/// `ψ(x) = e^{-x/2} Σ_i c_i L̃_i(x)`, `x ≥ 0`.
pub fn eval_psi_radial(cv: &CoefficientVector, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("radial argument {x} must be ≥ 0")));
    }
    Ok(cv.laguerre()?.psi(x))
}

/// `φ(p) = Σ_i c_i φ_i(p)`, `p ≥ 0`.
pub fn eval_phi_radial(cv: &CoefficientVector, p: f64) -> Result<f64> {
    if !(p >= 0.0) {
        return Err(Error::Domain(format!("radial argument {p} must be ≥ 0")));
    }
    Ok(cv.laguerre()?.phi(p))
}

/// Whether `ψ` is non-negative on its positivity grid (and beyond it).
pub fn psi_is_nonnegative(cv: &CoefficientVector) -> bool {
    match cv.kind {
        BasisKind::Hermite1D => cv.hermite().map(|h| h.psi_is_nonnegative()),
        BasisKind::LaguerreRadial => cv.laguerre().map(|l| l.psi_is_nonnegative()),
    }
    .unwrap_or(false)
}

/// Minimum of the analytic `φ` over the label grid.
pub fn phi_min(cv: &CoefficientVector) -> f64 {
    match cv.kind {
        BasisKind::Hermite1D => cv.hermite().map(|h| h.phi_min()),
        BasisKind::LaguerreRadial => cv.laguerre().map(|l| l.phi_min()),
    }
    .unwrap_or(f64::NAN)
}

/// Labels `cv` with the default threshold [`DEFAULT_LABEL_EPS`].
pub fn classify(cv: &CoefficientVector) -> Label {
    classify_with(cv, DEFAULT_LABEL_EPS)
}

/// `PN` iff the analytic `φ` dips below `-eps` on the label grid.
pub fn classify_with(cv: &CoefficientVector, eps: f64) -> Label {
    if phi_min(cv) < -eps {
        Label::PN
    } else {
        Label::PP
    }
}

/// One corpus member.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledFunction {
    pub cv: CoefficientVector,
    pub label: Label,
    /// Seed of the generator that drew this candidate.
    pub seed: u64,
}

/// Reference functions drawn in figures of the original study.
pub mod named {
    use super::*;

    /// 1-D example whose transform is positive.
    pub const HERMITE_PP_RAW: [f64; 5] = [0.901, 0.276, 0.259, 0.006, 0.214];
    /// 1-D example whose transform takes both signs.
    pub const HERMITE_PN_RAW: [f64; 5] = [0.772, 0.304, 0.386, 0.171, 0.366];

    /// Monomial coefficients of the polynomial factor of the radial
    /// Fourier-positive example.
    pub const LAGUERRE_PP_MONOMIALS: [f64; 9] = [
        3.6096, -6.7462, 4.8826, -1.6141, 0.28086, -0.027009, 0.00145, -0.000042169, 5.63539e-7,
    ];
    /// Monomial coefficients of the radial non Fourier-positive example.
    pub const LAGUERRE_PN_MONOMIALS: [f64; 9] = [
        2.49362, -6.84573, 6.76697, -3.04127, 0.723816, -0.0959944, 0.00705616, -0.000265057,
        3.93896e-6,
    ];

    pub fn gaussian_1d() -> CoefficientVector {
        CoefficientVector::new(BasisKind::Hermite1D, vec![1.0, 0.0, 0.0, 0.0, 0.0])
            .expect("unit vector")
    }

    pub fn hermite_pp() -> CoefficientVector {
        CoefficientVector::normalized(BasisKind::Hermite1D, &HERMITE_PP_RAW).expect("non-zero")
    }

    pub fn hermite_pn() -> CoefficientVector {
        CoefficientVector::normalized(BasisKind::Hermite1D, &HERMITE_PN_RAW).expect("non-zero")
    }

    pub fn laguerre_pp() -> CoefficientVector {
        let c = laguerre_coefficients_from_monomials(&LAGUERRE_PP_MONOMIALS);
        CoefficientVector::normalized(BasisKind::LaguerreRadial, &c).expect("non-zero")
    }

    pub fn laguerre_pn() -> CoefficientVector {
        let c = laguerre_coefficients_from_monomials(&LAGUERRE_PN_MONOMIALS);
        CoefficientVector::normalized(BasisKind::LaguerreRadial, &c).expect("non-zero")
    }

    /// Looks a reference function up by its CLI name.
    pub fn by_name(name: &str) -> Result<CoefficientVector> {
        match name {
            "gaussian" => Ok(gaussian_1d()),
            "hermite-pp" => Ok(hermite_pp()),
            "hermite-pn" => Ok(hermite_pn()),
            "laguerre-pp" => Ok(laguerre_pp()),
            "laguerre-pn" => Ok(laguerre_pn()),
            other => Err(Error::InvalidParameter(format!("unknown named function `{other}`"))),
        }
    }

    pub const NAMES: [&str; 5] = ["gaussian", "hermite-pp", "hermite-pn", "laguerre-pp", "laguerre-pn"];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::hermite_u;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn unit(kind: BasisKind, i: usize) -> CoefficientVector {
        let mut c = vec![0.0; kind.len()];
        c[i] = 1.0;
        CoefficientVector::new(kind, c).unwrap()
    }

    #[test]
    fn coefficient_vector_enforces_unit_norm() {
        assert!(CoefficientVector::new(BasisKind::Hermite1D, vec![1.0, 0.1, 0.0, 0.0, 0.0]).is_err());
        assert!(CoefficientVector::new(BasisKind::Hermite1D, vec![1.0; 4]).is_err());
        assert!(CoefficientVector::normalized(BasisKind::LaguerreRadial, &[0.0; 9]).is_err());
        let cv = CoefficientVector::normalized(BasisKind::LaguerreRadial, &[2.0; 9]).unwrap();
        let n: f64 = cv.coeffs().iter().map(|c| c * c).sum();
        assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn explicit_polynomials_match_hermite_recursion() {
        for p in 0..5 {
            let cv = unit(BasisKind::Hermite1D, p);
            for &r in &[0.0, 0.3, 1.1, 2.7, 5.0] {
                let want = hermite_u(2 * p, r).unwrap();
                assert_abs_diff_eq!(eval_psi_1d(&cv, r).unwrap(), want, epsilon = 1e-14);
                let sign = hermite::FOURIER_SIGNS[p];
                assert_abs_diff_eq!(eval_phi_1d(&cv, r).unwrap(), sign * want, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn gaussian_mode_is_self_dual() {
        let cv = named::gaussian_1d();
        assert_abs_diff_eq!(eval_psi_1d(&cv, 0.0).unwrap(), PI.powf(-0.25), epsilon = 1e-15);
        for &s in &[0.0, 0.5, 2.0, 4.5] {
            assert_eq!(eval_psi_1d(&cv, s).unwrap(), eval_phi_1d(&cv, s).unwrap());
        }
        assert_eq!(classify(&cv), Label::PP);
    }

    #[test]
    fn parity_is_exact() {
        let cv = named::hermite_pn();
        for &r in &[0.1, 0.77, 2.3, 6.1] {
            assert_eq!(eval_psi_1d(&cv, r).unwrap(), eval_psi_1d(&cv, -r).unwrap());
        }
    }

    #[test]
    fn hermite_reference_values() {
        // Direct evaluation of the explicit bracket at r = 0.
        let [c0, c2, c4, c6, c8] = [0.901, 0.276, 0.259, 0.006, 0.214];
        let bracket = c0 - c2 / 2f64.sqrt() + c4 * 3.0 / (2.0 * 6f64.sqrt())
            - c6 * 15.0 / (12.0 * 5f64.sqrt())
            + c8 * 105.0 / (24.0 * 70f64.sqrt());
        let raw = CoefficientVector {
            kind: BasisKind::Hermite1D,
            coeffs: vec![c0, c2, c4, c6, c8],
        };
        assert_abs_diff_eq!(eval_psi_1d(&raw, 0.0).unwrap(), PI.powf(-0.25) * bracket, epsilon = 1e-15);

        let single = unit(BasisKind::Hermite1D, 1);
        for &s in &[0.0, 0.9, 2.2] {
            assert_abs_diff_eq!(
                eval_phi_1d(&single, s).unwrap(),
                -hermite_u(2, s).unwrap(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn named_examples_classify_as_published() {
        assert_eq!(classify(&named::hermite_pp()), Label::PP);
        assert_eq!(classify(&named::hermite_pn()), Label::PN);
        assert_eq!(classify(&named::laguerre_pp()), Label::PP);
        assert_eq!(classify(&named::laguerre_pn()), Label::PN);
        for cv in [named::hermite_pp(), named::hermite_pn(), named::laguerre_pp(), named::laguerre_pn()] {
            assert!(psi_is_nonnegative(&cv));
        }
        let pn = named::hermite_pn();
        let h = pn.hermite().unwrap();
        let mut saw_neg = false;
        let mut saw_pos = false;
        for k in 0..=800 {
            let v = h.phi(k as f64 * 0.01);
            saw_neg |= v < 0.0;
            saw_pos |= v > 0.0;
        }
        assert!(saw_neg && saw_pos);
    }

    #[test]
    fn radial_reference_values() {
        assert_eq!(eval_psi_radial(&unit(BasisKind::LaguerreRadial, 0), 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(eval_phi_radial(&unit(BasisKind::LaguerreRadial, 0), 0.0).unwrap(), 4.0);
        let c = laguerre_coefficients_from_monomials(&named::LAGUERRE_PP_MONOMIALS);
        let poly = laguerre::combined_poly(&c);
        for (a, b) in poly.iter().zip(named::LAGUERRE_PP_MONOMIALS) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-6));
        }
        assert_abs_diff_eq!(laguerre::eval_psi(&poly, 0.0), 3.6096, epsilon = 1e-12);
        let cv = named::laguerre_pn();
        assert!(eval_phi_radial(&cv, 1e4).unwrap().abs() < 1e-9);
    }

    #[test]
    fn radial_domain_and_kind_errors() {
        let cv = unit(BasisKind::LaguerreRadial, 3);
        assert!(matches!(eval_psi_radial(&cv, -0.1), Err(Error::Domain(_))));
        assert!(matches!(eval_phi_radial(&cv, -1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_psi_1d(&cv, 0.0), Err(Error::WrongKind { .. })));
        assert!(matches!(
            eval_phi_radial(&named::gaussian_1d(), 0.0),
            Err(Error::WrongKind { .. })
        ));
    }

    #[test]
    fn common_numerator_reproduces_phi() {
        let cv = named::laguerre_pn();
        let l = cv.laguerre().unwrap();
        let num = l.phi.common_numerator();
        for &p in &[0.0, 0.3, 1.7, 5.0, 20.0] {
            let q: f64 = p * p;
            let v = poly::horner(&num, q) / (1.0 + 4.0 * q).powf(9.5);
            assert!((v - l.phi(p)).abs() <= 1e-10 * (1.0 + l.phi(p).abs()), "p = {p}");
        }
    }
}
