//! Brute-force transforms used to cross-check the analytic partners and the
//! Poisson machinery.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::basis::FourierPair1D;
use crate::error::{Error, Result};
use crate::specialfn::bessel_j0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Trapezoid,
    Simpson,
}

/// Fixed-step quadrature on `[0, upper_limit]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub upper_limit: f64,
    pub step: f64,
    pub rule: Rule,
}

impl QuadratureSpec {
    pub fn new(upper_limit: f64, step: f64, rule: Rule) -> Result<Self> {
        if !(upper_limit > 0.0 && step > 0.0 && step <= upper_limit) || !upper_limit.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs 0 < step ≤ upper limit, got step {step}, limit {upper_limit}"
            )));
        }
        Ok(QuadratureSpec { upper_limit, step, rule })
    }

    /// `U = 12`, step `1e-3`, Simpson.
    pub fn default_1d() -> Self {
        QuadratureSpec { upper_limit: 12.0, step: 1e-3, rule: Rule::Simpson }
    }

    /// `U = 80`, step `2e-3`, Simpson.
    pub fn default_radial() -> Self {
        QuadratureSpec { upper_limit: 80.0, step: 2e-3, rule: Rule::Simpson }
    }

    /// Same rule and limit with half the step.
    pub fn refined(&self) -> Self {
        QuadratureSpec { step: 0.5 * self.step, ..*self }
    }

    /// `∫_0^U f`. Simpson rounds the interval count up to an even number.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut n = (self.upper_limit / self.step).round().max(1.0) as usize;
        if self.rule == Rule::Simpson && n % 2 == 1 {
            n += 1;
        }
        let h = self.upper_limit / n as f64;
        let ends = f(0.0) + f(self.upper_limit);
        match self.rule {
            Rule::Trapezoid => {
                let inner: f64 = (1..n).map(|i| f(i as f64 * h)).sum();
                h * (0.5 * ends + inner)
            }
            Rule::Simpson => {
                let odd: f64 = (1..n).step_by(2).map(|i| f(i as f64 * h)).sum();
                let even: f64 = (2..n).step_by(2).map(|i| f(i as f64 * h)).sum();
                h / 3.0 * (ends + 4.0 * odd + 2.0 * even)
            }
        }
    }
}

/// `φ(s) = √(2/π) ∫_0^U cos(s r) ψ(r) dr` for an even `ψ`.
pub fn fourier_1d(psi: impl Fn(f64) -> f64, s: f64, q: &QuadratureSpec) -> f64 {
    (2.0 / PI).sqrt() * q.integrate(|r| (s * r).cos() * psi(r))
}

/// `φ(s) = ∫_0^U r J_0(s r) ψ(r) dr`.
pub fn hankel(psi: impl Fn(f64) -> f64, s: f64, q: &QuadratureSpec) -> f64 {
    let s = s.abs();
    q.integrate(|r| r * bessel_j0(s * r).expect("finite non-negative argument") * psi(r))
}

/// `|Σ_{|h|≤H} φ(s + 2πh/r) − (|r|/√(2π)) Σ_{|k|≤K} ψ(k r) e^{i k r s}|`.
///
/// Both sides are real for an even pair; the comb side is summed as cosines.
pub fn poisson_identity_residual<P: FourierPair1D + ?Sized>(
    pair: &P,
    r: f64,
    s: f64,
    k: usize,
    h: usize,
) -> Result<f64> {
    if r == 0.0 || !r.is_finite() || !s.is_finite() {
        return Err(Error::Domain(format!("comb spacing must be finite and non-zero, got {r}")));
    }
    let period = 2.0 * PI / r;
    let mut alias = pair.phi(s);
    for j in 1..=h {
        let shift = j as f64 * period;
        alias += pair.phi(s + shift) + pair.phi(s - shift);
    }
    let mut comb = pair.psi(0.0);
    for j in 1..=k {
        let x = j as f64 * r;
        comb += 2.0 * pair.psi(x) * (x * s).cos();
    }
    comb *= r.abs() / (2.0 * PI).sqrt();
    Ok((alias - comb).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{named, Gaussian1D};

    #[test]
    fn gaussian_transforms() {
        let q = QuadratureSpec::default_1d();
        let g = |r: f64| (-0.5 * r * r).exp();
        assert!((fourier_1d(g, 0.0, &q) - 1.0).abs() < 1e-8);
        assert!((fourier_1d(g, 2.0, &q) - (-2.0f64).exp()).abs() < 1e-8);
    }

    #[test]
    fn laguerre_leading_element() {
        let q = QuadratureSpec::default_radial();
        let e = |x: f64| (-0.5 * x).exp();
        assert!((hankel(e, 0.0, &q) - 4.0).abs() < 1e-6);
        assert!((hankel(e, 1.0, &q) - 4.0 / 5f64.powf(1.5)).abs() < 1e-6);
    }

    #[test]
    fn rules_agree_under_refinement() {
        let g = |r: f64| (-0.5 * r * r).exp() * (1.0 + r * r);
        for rule in [Rule::Trapezoid, Rule::Simpson] {
            let q = QuadratureSpec::new(12.0, 1e-2, rule).unwrap();
            let a = fourier_1d(g, 1.3, &q);
            let b = fourier_1d(g, 1.3, &q.refined());
            assert!((a - b).abs() < 1e-7, "{rule:?}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 0.1, Rule::Simpson).is_err());
        assert!(QuadratureSpec::new(1.0, 2.0, Rule::Simpson).is_err());
        assert!(QuadratureSpec::new(1.0, -1.0, Rule::Trapezoid).is_err());
    }

    #[test]
    fn poisson_identity_on_gaussian_and_example() {
        assert!(poisson_identity_residual(&Gaussian1D, 1.0, 0.7, 40, 40).unwrap() <= 1e-10);
        let h = named::hermite_pn().hermite().unwrap();
        for j in 0..=8 {
            let res = poisson_identity_residual(&h, 0.5, j as f64, 60, 40).unwrap();
            assert!(res <= 1e-8, "s = {j}: {res}");
        }
        assert!(poisson_identity_residual(&Gaussian1D, 0.0, 1.0, 4, 4).is_err());
    }

    #[test]
    fn dropped_aliases_show_up_for_coarse_combs() {
        // With H = 0 the residual is the neglected alias mass, which grows with r.
        let small = poisson_identity_residual(&Gaussian1D, 0.5, 0.0, 80, 0).unwrap();
        let large = poisson_identity_residual(&Gaussian1D, 2.0, 0.0, 80, 0).unwrap();
        let exact = 2.0 * (-0.5 * (PI).powi(2)).exp();
        assert!(small < 1e-13);
        assert!((large - exact).abs() < 1e-6);
        assert!(large > 1e9 * small.max(1e-300));
    }

    #[test]
    fn example_most_negative_point_matches_quadrature() {
        let h = named::hermite_pn().hermite().unwrap();
        let (s_min, _) = (0..=8000)
            .map(|k| {
                let s = k as f64 * 1e-3;
                (s, h.phi(s))
            })
            .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        let q = QuadratureSpec::default_1d();
        let got = fourier_1d(|r| h.psi(r), s_min, &q);
        assert!((got - h.phi(s_min)).abs() < 1e-6);
    }
}
