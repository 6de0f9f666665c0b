use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Below this the power series is used.
const SERIES_LIMIT: f64 = 8.0;
/// At and above this the Hankel asymptotic expansion is accurate to rounding.
const ASYMPTOTIC_LIMIT: f64 = 25.0;

/// Bessel function of the first kind of order zero, for `x ≥ 0`.
///
/// Three regimes:
/// - `x < 8`: power series `Σ (-1)^m (x²/4)^m / (m!)²`;
/// - `8 ≤ x < 25`: Miller backward recurrence normalized by
///   `J0 + 2 Σ J_{2k} = 1`;
/// - `x ≥ 25`: Hankel asymptotic expansion truncated at its smallest term.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("J0 argument {x} is not finite")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("J0 argument {x} is negative")));
    }
    Ok(if x < SERIES_LIMIT {
        series(x)
    } else if x < ASYMPTOTIC_LIMIT {
        backward_recurrence(x)
    } else {
        asymptotic(x)
    })
}

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..80 {
        let mf = m as f64;
        term *= q / (mf * mf);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn backward_recurrence(x: f64) -> f64 {
    // Start well above x so that J_N(x) is far below rounding.
    let mut n = (x + 30.0 + 12.0 * x.cbrt()) as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0; // J_{k+1}
    let mut j_cur = 1e-300; // J_k, arbitrary small seed
    let mut norm = 0.0;
    let mut j0 = 0.0;
    for k in (1..=n).rev() {
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        // j_cur now holds J_{k-1}
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * j_cur;
        }
        if k == 1 {
            j0 = j_cur;
        }
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            j0 *= 1e-250;
        }
    }
    j0 / (norm + j0)
}

fn asymptotic(x: f64) -> f64 {
    // a_k = Π_{j≤k} (2j-1)² / (k! 8^k); P takes even k, Q odd k, alternating.
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut inv_pow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= odd * odd / (8.0 * kf);
        inv_pow /= x;
        let term = a * inv_pow;
        if term >= last || term < 1e-18 {
            break;
        }
        last = term;
        // sign pattern: Q: -, +, -, ...  P: -, +, - ... over k = 1, 3, 5 / 2, 4, 6
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q -= sign * term;
        } else {
            p += sign * term;
        }
    }
    let phase = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}
