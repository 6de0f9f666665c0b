//! Even Hermite–Fourier modes `u_0, u_2, u_4, u_6, u_8`, written as
//! polynomials in `t = r²` times `π^{-1/4} e^{-t/2}`.

use std::f64::consts::PI;

use super::poly::horner;

/// Monomial coefficients in `t = r²` of the bracketed factor of each mode.
pub(crate) fn mode_polys() -> [[f64; 5]; 5] {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let s5 = 5f64.sqrt();
    let s70 = 70f64.sqrt();
    [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0 / s2, 2.0 / s2, 0.0, 0.0, 0.0],
        [3.0 / (2.0 * s6), -12.0 / (2.0 * s6), 4.0 / (2.0 * s6), 0.0, 0.0],
        [
            -15.0 / (12.0 * s5),
            90.0 / (12.0 * s5),
            -60.0 / (12.0 * s5),
            8.0 / (12.0 * s5),
            0.0,
        ],
        [
            105.0 / (24.0 * s70),
            -840.0 / (24.0 * s70),
            840.0 / (24.0 * s70),
            -224.0 / (24.0 * s70),
            16.0 / (24.0 * s70),
        ],
    ]
}

/// Fourier eigenvalue signs `i^{2p}` of the modes `u_{2p}`.
pub(crate) const FOURIER_SIGNS: [f64; 5] = [1.0, -1.0, 1.0, -1.0, 1.0];

/// Bracketed polynomial (in `t`) of `Σ sign_p c_{2p} u_{2p}`.
pub(crate) fn combined_poly(coeffs: &[f64], flip: bool) -> [f64; 5] {
    let modes = mode_polys();
    let mut out = [0.0; 5];
    for (p, (&c, mode)) in coeffs.iter().zip(modes.iter()).enumerate() {
        let c = if flip { c * FOURIER_SIGNS[p] } else { c };
        for (o, &m) in out.iter_mut().zip(mode) {
            *o += c * m;
        }
    }
    out
}

#[inline]
pub(crate) fn eval(poly: &[f64; 5], r: f64) -> f64 {
    let t = r * r;
    PI.powf(-0.25) * (-0.5 * t).exp() * horner(poly, t)
}
