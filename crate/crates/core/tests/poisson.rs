mod common;

use std::f64::consts::PI;

use common::random_cvs;
use fourier_positivity::basis::{named, BasisKind, FourierPair1D, Gaussian1D, RadialPair};
use fourier_positivity::oracle::poisson_identity_residual;
use fourier_positivity::poisson::{
    char_fn_1d, char_fn_2d, reconstruct_phi_1d, CharScan1D, Cutoffs, Reconstructor2D,
};

fn alias_terms(r: f64) -> usize {
    (20.0 * r / (2.0 * PI)).ceil() as usize + 1
}

#[test]
fn alias_sum_equals_comb_sum() {
    let cvs = random_cvs(BasisKind::Hermite1D, 20, 7);
    for cv in &cvs {
        let h = cv.hermite().unwrap();
        for r in [0.3f64, 0.55, 0.8, 1.1, 1.5] {
            let k = (14.0 / r).ceil() as usize;
            for j in 0..=16 {
                let s = 0.5 * j as f64;
                let res = poisson_identity_residual(&h, r, s, k, alias_terms(r)).unwrap();
                assert!(res <= 1e-6, "r = {r}, s = {s}: {res}");
            }
        }
    }
}

#[test]
fn gaussian_char_fn_is_aliased_transform() {
    for dr in [0.2, 0.5, 1.0] {
        for s in [0.0, 0.7, 2.0] {
            let f = char_fn_1d(|r| Gaussian1D.psi(r), dr, s, 10.0).unwrap();
            let mut alias = 0.0;
            for h in -10i32..=10 {
                alias += Gaussian1D.phi(s + 2.0 * PI * h as f64 / dr);
            }
            assert!((f - alias).abs() < 1e-12, "{f} vs {alias}");
        }
    }
}

/// Fixing `rK = R`, larger `K` means finer sampling over the same range.
#[test]
fn reconstruction_improves_with_k() {
    let h = named::hermite_pn().hermite().unwrap();
    let range = 8.0;
    let cut = Cutoffs { range, spectral: 8.0 };
    let mut last = f64::INFINITY;
    for k in [10usize, 12, 14, 16, 20, 24] {
        let r = range / k as f64;
        let err = (0..=160)
            .map(|j| {
                let s = 0.05 * j as f64;
                (reconstruct_phi_1d(|x| h.psi(x), r, k, s, &cut).unwrap().value - h.phi(s)).abs()
            })
            .fold(0.0, f64::max);
        assert!(err <= last * (1.0 + 1e-9) + 1e-12, "K = {k}: {err} after {last}");
        last = err;
    }
    assert!(last < 1e-6);
}

#[test]
fn window_is_necessary() {
    let g = |x: f64| Gaussian1D.psi(x);
    let cut = Cutoffs { range: 10.0, spectral: 6.0 };
    let sup = |r: f64, k: usize| {
        (0..=120)
            .map(|j| {
                let s = 0.05 * j as f64;
                (reconstruct_phi_1d(g, r, k, s, &cut).unwrap().value - Gaussian1D.phi(s)).abs()
            })
            .fold(0.0, f64::max)
    };
    let inside = sup(0.25, 40);
    assert!(cut.window_ok(0.25, 40));
    assert!(inside <= 1e-8, "{inside}");
    for (r, k) in [(0.1, 40), (0.9, 12)] {
        assert!(!cut.window_ok(r, k));
        let outside = sup(r, k);
        assert!(outside >= 1e3 * inside.max(1e-14), "r = {r}: {outside}");
    }
}

#[test]
fn radial_reconstruction_is_nearly_isotropic() {
    let l = named::laguerre_pn().laguerre().unwrap();
    let rec = Reconstructor2D::new(|x| l.psi(x), 0.25, 320).unwrap();
    for p in [0.0, 0.5, 1.0, 2.0] {
        let vals: Vec<f64> = (0..8)
            .map(|a| {
                let t = a as f64 * PI / 16.0;
                rec.eval(p * t.cos(), p * t.sin())
            })
            .collect();
        let exact = l.phi(p);
        for v in vals {
            assert!((v - exact).abs() <= 0.1 * exact.abs(), "p = {p}: {v} vs {exact}");
        }
    }
}

#[test]
fn char_fn_2d_of_radial_gaussian_is_not_negative() {
    use fourier_positivity::basis::RadialGaussian;
    for dr in [0.3, 0.7, 1.0] {
        let f0 = char_fn_2d(|x| RadialGaussian.psi(x), dr, 0.0, 0.0, 20.0).unwrap();
        for a in 0..6 {
            for g in 0..6 {
                let f = char_fn_2d(|x| RadialGaussian.psi(x), dr, 0.5 * a as f64, 0.5 * g as f64, 20.0).unwrap();
                assert!(f > -1e-12 * f0, "{f}");
            }
        }
    }
}

#[test]
fn scan_rejects_bad_grids() {
    let scan = CharScan1D { range: -1.0, ..Default::default() };
    assert!(scan.validate().is_err());
}
