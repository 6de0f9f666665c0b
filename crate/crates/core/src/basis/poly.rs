//! Small dense-polynomial helpers (coefficients in ascending order).

#[inline]
pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Coefficients of `p(x0 + y)` as a polynomial in `y`.
pub(crate) fn taylor_shift(coeffs: &[f64], x0: f64) -> Vec<f64> {
    let mut b = coeffs.to_vec();
    let n = b.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            b[j] += x0 * b[j + 1];
        }
    }
    b
}

pub(crate) fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Whether `p(x) ≥ 0` for every `x ≥ x0`.
///
/// Exact when the shifted polynomial has no sign change in its coefficients
/// (Descartes). Otherwise the interval up to the Cauchy root bound of the
/// shifted polynomial is scanned densely.
pub(crate) fn nonnegative_beyond(coeffs: &[f64], x0: f64) -> bool {
    let shifted = taylor_shift(coeffs, x0);
    let Some(top) = shifted.iter().rposition(|&c| c != 0.0) else {
        return true;
    };
    let lead = shifted[top];
    if lead < 0.0 {
        return false;
    }
    if shifted[..top].iter().all(|&c| c >= 0.0) {
        return true;
    }
    let bound = 1.0 + shifted[..top].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    const STEPS: usize = 20_000;
    (0..=STEPS).all(|k| {
        // quadratic spacing resolves the region close to x0 more finely
        let t = k as f64 / STEPS as f64;
        horner(&shifted, bound * t * t) >= 0.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_product() {
        // (x - 1)^2 shifted by 1 is y^2
        let p = mul(&[-1.0, 1.0], &[-1.0, 1.0]);
        assert_eq!(p, vec![1.0, -2.0, 1.0]);
        assert_eq!(taylor_shift(&p, 1.0), vec![0.0, 0.0, 1.0]);
        assert_eq!(horner(&p, 3.0), 4.0);
    }

    #[test]
    fn tail_positivity() {
        // (x - 5)(x - 7): negative on (5, 7)
        let p = mul(&[-5.0, 1.0], &[-7.0, 1.0]);
        assert!(!nonnegative_beyond(&p, 0.0));
        assert!(!nonnegative_beyond(&p, 6.0));
        assert!(nonnegative_beyond(&p, 7.0));
        assert!(!nonnegative_beyond(&[1.0, -1.0], 0.0));
        assert!(nonnegative_beyond(&[0.0], 3.0));
    }
}
