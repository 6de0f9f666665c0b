//! Radial basis: `e^{-x/2}` times nine normalized Laguerre-type polynomials,
//! and their closed-form Fourier–Bessel partners (rational functions of
//! `p²` over powers of `1 + 4p²`).

use super::poly::{horner, mul};

const fn laguerre_numerators() -> [[f64; 9]; 9] {
    [
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [6.0, -6.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-24.0, 36.0, -12.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [120.0, -240.0, 120.0, -20.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [-720.0, 1800.0, -1200.0, 300.0, -30.0, 1.0, 0.0, 0.0, 0.0],
        [5040.0, -15120.0, 12600.0, -4200.0, 630.0, -42.0, 1.0, 0.0, 0.0],
        [-40320.0, 141120.0, -141120.0, 58800.0, -11760.0, 1176.0, -56.0, 1.0, 0.0],
        [362880.0, -1451520.0, 1693440.0, -846720.0, 211680.0, -28224.0, 2016.0, -72.0, 1.0],
    ]
}

fn laguerre_denominators() -> [f64; 9] {
    [
        1.0,
        2f64.sqrt(),
        2.0 * 3f64.sqrt(),
        12.0,
        24.0 * 5f64.sqrt(),
        120.0 * 6f64.sqrt(),
        720.0 * 7f64.sqrt(),
        10080.0 * 2f64.sqrt(),
        120960.0,
    ]
}

/// Monomial coefficients (in `x`) of the normalized basis polynomials.
pub(crate) fn basis_polys() -> [[f64; 9]; 9] {
    let num = laguerre_numerators();
    let den = laguerre_denominators();
    let mut out = [[0.0; 9]; 9];
    for i in 0..9 {
        for j in 0..9 {
            out[i][j] = num[i][j] / den[i];
        }
    }
    out
}

/// Prefactor and numerator polynomial in `q = p²` of each transformed
/// element; element `i` carries the denominator `(1 + 4q)^{(3 + 2i)/2}`.
fn fourier_parts() -> [(f64, &'static [f64]); 9] {
    let s2 = 2f64.sqrt();
    [
        (4.0, &[1.0]),
        (-4.0 * s2, &[-1.0, 8.0]),
        (4.0 * 3f64.sqrt(), &[1.0, -24.0, 48.0]),
        (-8.0, &[-1.0, 48.0, -288.0, 256.0]),
        (4.0 * 5f64.sqrt(), &[1.0, -80.0, 960.0, -2560.0, 1280.0]),
        (-4.0 * 6f64.sqrt(), &[-1.0, 120.0, -2400.0, 12800.0, -19200.0, 6144.0]),
        (
            4.0 * 7f64.sqrt(),
            &[1.0, -168.0, 5040.0, -44800.0, 134400.0, -129024.0, 28672.0],
        ),
        (
            -8.0 * s2,
            &[-1.0, 224.0, -9408.0, 125440.0, -627200.0, 1204224.0, -802816.0, 131072.0],
        ),
        (
            12.0,
            &[
                1.0, -288.0, 16128.0, -301056.0, 2257920.0, -7225344.0, 9633792.0, -4718592.0,
                589824.0,
            ],
        ),
    ]
}

/// Polynomial factor of `ψ(x) = e^{-x/2} P(x)` for the given coefficients.
pub(crate) fn combined_poly(coeffs: &[f64]) -> [f64; 9] {
    let polys = basis_polys();
    let mut out = [0.0; 9];
    for (&c, poly) in coeffs.iter().zip(polys.iter()) {
        for (o, &m) in out.iter_mut().zip(poly) {
            *o += c * m;
        }
    }
    out
}

#[inline]
pub(crate) fn eval_psi(poly: &[f64; 9], x: f64) -> f64 {
    (-0.5 * x).exp() * horner(poly, x)
}

/// Precomputed form of the transformed basis for one coefficient vector.
#[derive(Debug, Clone)]
pub(crate) struct PhiRadial {
    terms: [(f64, &'static [f64]); 9],
}

impl PhiRadial {
    pub(crate) fn new(coeffs: &[f64]) -> Self {
        let mut terms = fourier_parts();
        for (t, &c) in terms.iter_mut().zip(coeffs) {
            t.0 *= c;
        }
        PhiRadial { terms }
    }

    pub(crate) fn eval(&self, p: f64) -> f64 {
        let q = p * p;
        let base = 1.0 + 4.0 * q;
        let mut denom = base * base.sqrt();
        let mut sum = 0.0;
        for &(scale, poly) in &self.terms {
            sum += scale * horner(poly, q) / denom;
            denom *= base;
        }
        sum
    }

    /// Common numerator `N(q)` with `φ(p) = N(p²) / (1 + 4p²)^{19/2}`.
    pub(crate) fn common_numerator(&self) -> Vec<f64> {
        let mut out = vec![0.0; 9];
        for (i, &(scale, poly)) in self.terms.iter().enumerate() {
            let mut factor = vec![1.0];
            for _ in 0..(8 - i) {
                factor = mul(&factor, &[1.0, 4.0]);
            }
            for (o, v) in out.iter_mut().zip(mul(poly, &factor)) {
                *o += scale * v;
            }
        }
        out
    }
}

/// Expansion coefficients of a monomial-form polynomial `P(x)` (degree ≤ 8)
/// in the normalized basis, so that `e^{-x/2} P(x) = Σ c_i e^{-x/2} L̃_i(x)`.
///
/// The basis is triangular in the monomials, so back substitution from the
/// top degree is exact up to rounding.
pub fn laguerre_coefficients_from_monomials(monomials: &[f64; 9]) -> [f64; 9] {
    let polys = basis_polys();
    let mut rest = *monomials;
    let mut c = [0.0; 9];
    for i in (0..9).rev() {
        c[i] = rest[i] / polys[i][i];
        for j in 0..=i {
            rest[j] -= c[i] * polys[i][j];
        }
    }
    c
}
