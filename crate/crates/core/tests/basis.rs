mod common;

use common::random_cvs;
use fourier_positivity::basis::{
    classify, eval_phi_1d, eval_phi_radial, eval_psi_radial, named, BasisKind, Label,
};
use fourier_positivity::oracle::{fourier_1d, hankel, QuadratureSpec, Rule};

#[test]
fn hermite_partners_match_quadrature() {
    let q = QuadratureSpec::default_1d();
    for cv in random_cvs(BasisKind::Hermite1D, 50, 101) {
        let h = cv.hermite().unwrap();
        use fourier_positivity::basis::FourierPair1D;
        for j in 0..=12 {
            let s = 0.5 * j as f64;
            let got = fourier_1d(|r| h.psi(r), s, &q);
            let want = eval_phi_1d(&cv, s).unwrap();
            assert!((got - want).abs() < 1e-6, "s = {s}: {got} vs {want}");
        }
    }
}

#[test]
fn radial_partners_match_hankel_quadrature() {
    let q = QuadratureSpec::default_radial();
    for cv in random_cvs(BasisKind::LaguerreRadial, 10, 202) {
        for j in 0..=6 {
            let s = j as f64;
            let got = hankel(|x| eval_psi_radial(&cv, x).unwrap(), s, &q);
            let want = eval_phi_radial(&cv, s).unwrap();
            assert!((got - want).abs() < 1e-5, "s = {s}: {got} vs {want}");
        }
    }
}

#[test]
fn radial_basis_is_normalized_on_both_sides() {
    let qx = QuadratureSpec::new(150.0, 2e-3, Rule::Simpson).unwrap();
    let qp = QuadratureSpec::new(400.0, 1e-3, Rule::Simpson).unwrap();
    for cv in random_cvs(BasisKind::LaguerreRadial, 5, 303) {
        let norm = qx.integrate(|x| x * eval_psi_radial(&cv, x).unwrap().powi(2));
        assert!((norm - 1.0).abs() < 1e-8, "{norm}");
        let parseval = qp.integrate(|p| p * eval_phi_radial(&cv, p).unwrap().powi(2));
        assert!((parseval - 1.0).abs() < 1e-5, "{parseval}");
    }
}

#[test]
fn radial_transform_decays() {
    for cv in random_cvs(BasisKind::LaguerreRadial, 5, 404) {
        assert!(eval_phi_radial(&cv, 1e3).unwrap().abs() < 1e-6);
    }
}

#[test]
fn reference_functions() {
    use fourier_positivity::basis::{FourierPair1D, RadialPair};
    assert_eq!(classify(&named::gaussian_1d()), Label::PP);
    assert_eq!(classify(&named::hermite_pp()), Label::PP);
    assert_eq!(classify(&named::hermite_pn()), Label::PN);

    let pn = named::hermite_pn().hermite().unwrap();
    let vals: Vec<f64> = (0..=800).map(|k| pn.phi(0.01 * k as f64)).collect();
    assert!(vals.iter().any(|&v| v < 0.0) && vals.iter().any(|&v| v > 0.0));

    let r = named::laguerre_pn().laguerre().unwrap();
    let vals: Vec<f64> = (0..=4000).map(|k| r.phi(1e-3 * k as f64)).collect();
    assert!(vals.iter().any(|&v| v < 0.0) && vals.iter().any(|&v| v > 0.0));
    assert!((named::laguerre_pp().laguerre().unwrap().psi(0.0) / 3.6096 - 1.0).abs() < 2e-3);
}
