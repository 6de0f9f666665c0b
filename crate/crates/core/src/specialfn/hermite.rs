use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Highest Hermite mode supported by [`hermite_u`].
pub const MAX_HERMITE_MODE: usize = 8;

/// Normalized Hermite function `u_p(r) = π^{-1/4} e^{-r²/2} H_p(r)`, with
/// `H_p` square normalized and a positive leading coefficient.
///
/// The three-term recursion runs on the normalized functions themselves,
///
/// ```text
/// u_{p+1} = sqrt(2/(p+1)) r u_p - sqrt(p/(p+1)) u_{p-1}
/// ```
///
/// so the Gaussian envelope is applied once, up front, and no raw polynomial
/// is ever formed.
pub fn hermite_u(p: usize, r: f64) -> Result<f64> {
    if p > MAX_HERMITE_MODE {
        return Err(Error::Domain(format!(
            "Hermite mode {p} unsupported (max {MAX_HERMITE_MODE})"
        )));
    }
    if !r.is_finite() {
        return Err(Error::Domain(format!("Hermite argument {r} is not finite")));
    }
    let u0 = PI.powf(-0.25) * (-0.5 * r * r).exp();
    if p == 0 {
        return Ok(u0);
    }
    let mut prev = u0;
    let mut cur = std::f64::consts::SQRT_2 * r * u0;
    for k in 1..p {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * r * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_modes_match_closed_forms() {
        let c = PI.powf(-0.25);
        assert_abs_diff_eq!(hermite_u(0, 0.0).unwrap(), c, epsilon = 1e-15);
        assert_abs_diff_eq!(hermite_u(1, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            hermite_u(2, 0.0).unwrap(),
            -c / std::f64::consts::SQRT_2,
            epsilon = 1e-15
        );
        for &r in &[-2.5f64, -0.3, 0.7, 1.9, 4.0] {
            let g = c * (-0.5 * r * r).exp();
            let h1 = std::f64::consts::SQRT_2 * r;
            let h3 = (2.0 * r * r * r - 3.0 * r) / 3f64.sqrt();
            assert_abs_diff_eq!(hermite_u(1, r).unwrap(), g * h1, epsilon = 1e-14);
            assert_abs_diff_eq!(hermite_u(3, r).unwrap(), g * h3, epsilon = 1e-14);
        }
    }

    #[test]
    fn parity_follows_mode() {
        for p in 0..=MAX_HERMITE_MODE {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            for &r in &[0.4, 1.3, 3.7] {
                assert_eq!(hermite_u(p, -r).unwrap(), sign * hermite_u(p, r).unwrap());
            }
        }
    }

    #[test]
    fn large_arguments_underflow_cleanly() {
        let v = hermite_u(8, 40.0).unwrap();
        assert!(v.is_finite() && v.abs() < 1e-300);
    }

    #[test]
    fn rejects_unsupported_inputs() {
        assert!(matches!(hermite_u(9, 0.0), Err(Error::Domain(_))));
        assert!(matches!(hermite_u(2, f64::NAN), Err(Error::Domain(_))));
    }
}
