//! Characteristic-function scans and finite-sum Fourier reconstruction.
//!
//! Sampling `ψ` on a comb of spacing `Δr` gives
//! `F(s, Δr) = Σ_h φ(s + 2πh/Δr)`, a sum of `φ` values. A negative `F`
//! therefore witnesses a negative `φ`. The same sum, restricted to the
//! aliasing window, approximates `φ` itself.

use std::f64::consts::PI;

use ndarray::{Array2, Zip};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{DetectorVerdict, SweepGrid, Witness};

/// Relative zero threshold: `ε_F = F_REL_EPS · F(0, Δr)`.
pub const F_REL_EPS: f64 = 1e-10;

fn inv_sqrt_2pi() -> f64 {
    1.0 / (2.0 * PI).sqrt()
}

fn check_spacing(dr: f64) -> Result<()> {
    if dr > 0.0 && dr.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("comb spacing Δr = {dr} must be positive")))
    }
}

/// `K = ceil(R/Δr)`.
pub fn truncation_1d(range: f64, dr: f64) -> usize {
    (range / dr).ceil() as usize
}

/// `K = floor(R/Δr) + 1`.
pub fn truncation_2d(range: f64, dr: f64) -> usize {
    (range / dr).floor() as usize + 1
}

/// `(Δr/√(2π)) [ψ(0) + 2 Σ_{n=1}^{K} ψ(nΔr) cos(nΔr s)]`, `K = ceil(R/Δr)`.
pub fn char_fn_1d(psi: impl Fn(f64) -> f64, dr: f64, s: f64, range: f64) -> Result<f64> {
    check_spacing(dr)?;
    let k = truncation_1d(range, dr);
    Ok(comb_sum_1d(&psi, dr, k, s))
}

fn comb_sum_1d(psi: &impl Fn(f64) -> f64, r: f64, k: usize, s: f64) -> f64 {
    let mut sum = psi(0.0);
    for n in 1..=k {
        let x = n as f64 * r;
        sum += 2.0 * psi(x) * (x * s).cos();
    }
    r * inv_sqrt_2pi() * sum
}

/// `(Δr²/2π) Σ_{m,n=0}^{K} e_m e_n ψ(Δr√(m²+n²)) cos(mα) cos(nγ)`,
/// `e_m = 2 − δ_{m0}`, `K = floor(R/Δr) + 1`.
pub fn char_fn_2d(
    psi: impl Fn(f64) -> f64,
    dr: f64,
    alpha: f64,
    gamma: f64,
    range: f64,
) -> Result<f64> {
    check_spacing(dr)?;
    let k = truncation_2d(range, dr);
    let weights = edge_weighted_samples(&psi, dr, k + 1);
    let ca: Vec<f64> = (0..=k).map(|m| (m as f64 * alpha).cos()).collect();
    let cg: Vec<f64> = (0..=k).map(|n| (n as f64 * gamma).cos()).collect();
    let mut sum = 0.0;
    for m in 0..=k {
        let row: f64 = (0..=k).map(|n| weights[[m, n]] * cg[n]).sum();
        sum += ca[m] * row;
    }
    Ok(dr * dr / (2.0 * PI) * sum)
}

/// `e_m e_n ψ(Δr√(m²+n²))` for `m, n < size`.
fn edge_weighted_samples(psi: &impl Fn(f64) -> f64, dr: f64, size: usize) -> Array2<f64> {
    let mut a = Array2::<f64>::zeros((size, size));
    for m in 0..size {
        for n in m..size {
            let w = if m == 0 { 1.0 } else { 2.0 } * if n == 0 { 1.0 } else { 2.0 };
            let v = w * psi(dr * ((m * m + n * n) as f64).sqrt());
            a[[m, n]] = v;
            a[[n, m]] = v;
        }
    }
    a
}

/// 1-D scan: `Δr` sweep × `s` sweep at range cut-off `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharScan1D {
    pub range: f64,
    pub dr_grid: SweepGrid,
    pub s_grid: SweepGrid,
}

impl Default for CharScan1D {
    /// `R = 10`, `Δr ∈ [0.1, 1]` (19 steps), `s ∈ [0, 8]` (401 steps).
    fn default() -> Self {
        CharScan1D {
            range: 10.0,
            dr_grid: SweepGrid::linear(0.1, 1.0, 19).expect("valid grid"),
            s_grid: SweepGrid::linear(0.0, 8.0, 401).expect("valid grid"),
        }
    }
}

/// Cosine tables of a [`CharScan1D`], reusable across functions.
#[derive(Debug, Clone)]
pub struct Plan1D {
    s: Vec<f64>,
    slices: Vec<Slice1D>,
}

#[derive(Debug, Clone)]
struct Slice1D {
    dr: f64,
    /// `cos(n Δr s_j)`, shape `(K + 1, |s|)`.
    cos: Array2<f64>,
}

impl CharScan1D {
    pub fn validate(&self) -> Result<()> {
        self.dr_grid.validate()?;
        self.s_grid.validate()?;
        if !(self.range > 0.0) || !self.range.is_finite() || !(self.dr_grid.min > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scan needs R > 0 and Δr > 0, got R = {}, Δr ≥ {}",
                self.range, self.dr_grid.min
            )));
        }
        Ok(())
    }

    pub fn plan(&self) -> Result<Plan1D> {
        self.validate()?;
        let s = self.s_grid.values();
        let slices = self
            .dr_grid
            .values()
            .into_iter()
            .map(|dr| {
                let k = truncation_1d(self.range, dr);
                let cos = Array2::from_shape_fn((k + 1, s.len()), |(n, j)| (n as f64 * dr * s[j]).cos());
                Slice1D { dr, cos }
            })
            .collect();
        Ok(Plan1D { s, slices })
    }
}

impl Plan1D {
    fn slice_values(&self, psi: &impl Fn(f64) -> f64, slice: &Slice1D) -> Vec<f64> {
        let k = slice.cos.nrows() - 1;
        let mut weights = ndarray::Array1::from_shape_fn(k + 1, |n| 2.0 * psi(n as f64 * slice.dr));
        weights[0] *= 0.5;
        let f = weights.dot(&slice.cos);
        let scale = slice.dr * inv_sqrt_2pi();
        f.iter().map(|v| scale * v).collect()
    }

    /// `F(s_j, Δr)` on the scan grid, one row per `Δr`.
    pub fn grid(&self, psi: impl Fn(f64) -> f64) -> Vec<(f64, Vec<f64>)> {
        self.slices.iter().map(|sl| (sl.dr, self.slice_values(&psi, sl))).collect()
    }

    pub fn s_values(&self) -> &[f64] {
        &self.s
    }

    /// Most negative point relative to its slice threshold `ε_F`.
    pub fn detect(&self, psi: impl Fn(f64) -> f64) -> DetectorVerdict {
        self.detect_with(psi, F_REL_EPS)
    }

    /// As [`Plan1D::detect`] with `ε_F = f_rel · F(0, Δr)`.
    pub fn detect_with(&self, psi: impl Fn(f64) -> f64, f_rel: f64) -> DetectorVerdict {
        let mut best: Option<DetectorVerdict> = None;
        for sl in &self.slices {
            let values = self.slice_values(&psi, sl);
            let eps = f_rel * comb_sum_1d(&psi, sl.dr, sl.cos.nrows() - 1, 0.0).abs();
            for (&s, &f) in self.s.iter().zip(&values) {
                let v = DetectorVerdict::from_probe(Witness::Char1D { dr: sl.dr, s }, f, eps);
                best = Some(best.map_or(v, |b| b.worse(v)));
            }
        }
        best.expect("scan grid is non-empty")
    }
}

pub fn detect_poisson_1d(psi: impl Fn(f64) -> f64, scan: &CharScan1D) -> Result<DetectorVerdict> {
    Ok(scan.plan()?.detect(psi))
}

/// Radial scan: `Δr` sweep × `(α, γ)` square at range cut-off `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharScan2D {
    pub range: f64,
    pub dr_grid: SweepGrid,
    pub angle_grid: SweepGrid,
}

impl Default for CharScan2D {
    /// `R = 80`, `Δr ∈ [0.2, 1]` (9 steps), `(α, γ) ∈ [0, π]²` (129² points).
    fn default() -> Self {
        CharScan2D {
            range: 80.0,
            dr_grid: SweepGrid::linear(0.2, 1.0, 9).expect("valid grid"),
            angle_grid: SweepGrid::linear(0.0, PI, 129).expect("valid grid"),
        }
    }
}

/// Angle cosine tables of a [`CharScan2D`].
#[derive(Debug, Clone)]
pub struct Plan2D {
    range: f64,
    angles: Vec<f64>,
    slices: Vec<Slice2D>,
}

#[derive(Debug, Clone)]
struct Slice2D {
    dr: f64,
    /// `cos(m θ_j)`, shape `(|θ|, K + 1)`.
    cos: Array2<f64>,
}

/// `F(α_i, γ_j)` at one `Δr`.
#[derive(Debug, Clone)]
pub struct AngleGrid {
    pub dr: f64,
    pub angles: Vec<f64>,
    /// `values[[i, j]] = F(α_i, γ_j)`.
    pub values: Array2<f64>,
}

impl CharScan2D {
    pub fn validate(&self) -> Result<()> {
        self.dr_grid.validate()?;
        self.angle_grid.validate()?;
        if !(self.range > 0.0) || !self.range.is_finite() || !(self.dr_grid.min > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scan needs R > 0 and Δr > 0, got R = {}, Δr ≥ {}",
                self.range, self.dr_grid.min
            )));
        }
        Ok(())
    }

    pub fn plan(&self) -> Result<Plan2D> {
        self.validate()?;
        let angles = self.angle_grid.values();
        let slices = self
            .dr_grid
            .values()
            .into_iter()
            .map(|dr| Slice2D { dr, cos: cos_table(&angles, truncation_2d(self.range, dr)) })
            .collect();
        Ok(Plan2D { range: self.range, angles, slices })
    }
}

fn cos_table(angles: &[f64], k: usize) -> Array2<f64> {
    Array2::from_shape_fn((angles.len(), k + 1), |(j, m)| (m as f64 * angles[j]).cos())
}

fn angle_values(psi: &impl Fn(f64) -> f64, dr: f64, cos: &Array2<f64>) -> Array2<f64> {
    let a = edge_weighted_samples(psi, dr, cos.ncols());
    let mut f = cos.dot(&a).dot(&cos.t());
    let scale = dr * dr / (2.0 * PI);
    f.mapv_inplace(|v| scale * v);
    f
}

impl Plan2D {
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// The `F(α, γ)` grid at one `Δr`, which need not belong to the plan.
    pub fn angle_grid(&self, psi: impl Fn(f64) -> f64, dr: f64) -> Result<AngleGrid> {
        check_spacing(dr)?;
        let cos = match self.slices.iter().find(|s| s.dr == dr) {
            Some(sl) => sl.cos.clone(),
            None => cos_table(&self.angles, truncation_2d(self.range, dr)),
        };
        Ok(AngleGrid { dr, angles: self.angles.clone(), values: angle_values(&psi, dr, &cos) })
    }

    pub fn detect(&self, psi: impl Fn(f64) -> f64) -> DetectorVerdict {
        self.detect_with(psi, F_REL_EPS)
    }

    /// As [`Plan2D::detect`] with `ε_F = f_rel · F(0, 0; Δr)`.
    pub fn detect_with(&self, psi: impl Fn(f64) -> f64, f_rel: f64) -> DetectorVerdict {
        let mut best: Option<DetectorVerdict> = None;
        for sl in &self.slices {
            let f = angle_values(&psi, sl.dr, &sl.cos);
            // α = γ = 0 is the first grid entry when the angle grid starts at 0
            let f0 = if self.angles[0] == 0.0 {
                f[[0, 0]]
            } else {
                char_fn_2d(&psi, sl.dr, 0.0, 0.0, self.range).expect("positive spacing")
            };
            let eps = f_rel * f0.abs();
            let mut arg = (0, 0);
            let mut min = f64::INFINITY;
            Zip::indexed(&f).for_each(|(i, j), &v| {
                if v < min {
                    min = v;
                    arg = (i, j);
                }
            });
            let w = Witness::Char2D { dr: sl.dr, alpha: self.angles[arg.0], gamma: self.angles[arg.1] };
            let v = DetectorVerdict::from_probe(w, min, eps);
            best = Some(best.map_or(v, |b| b.worse(v)));
        }
        best.expect("scan grid is non-empty")
    }
}

pub fn detect_poisson_2d(psi: impl Fn(f64) -> f64, scan: &CharScan2D) -> Result<DetectorVerdict> {
    Ok(scan.plan()?.detect(psi))
}

/// Declared range cut-offs: `ψ` negligible beyond `R`, `φ` beyond `S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cutoffs {
    pub range: f64,
    pub spectral: f64,
}

impl Cutoffs {
    /// `R/K ≤ r < π/S`. The lower end is closed so that `r = R/K` qualifies.
    pub fn window_ok(&self, r: f64, k: usize) -> bool {
        self.range / k as f64 <= r && r < PI / self.spectral
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub value: f64,
    pub window_ok: bool,
}

fn check_reconstruction(r: f64, k: usize) -> Result<()> {
    check_spacing(r)?;
    if k == 0 {
        return Err(Error::InvalidParameter("truncation K must be at least 1".into()));
    }
    Ok(())
}

/// `φ(s) ≈ (r/√(2π)) Σ_{|k|≤K} ψ(kr) e^{ikrs}`, summed as cosines.
pub fn reconstruct_phi_1d(
    psi: impl Fn(f64) -> f64,
    r: f64,
    k: usize,
    s: f64,
    cutoffs: &Cutoffs,
) -> Result<Reconstruction> {
    check_reconstruction(r, k)?;
    Ok(Reconstruction { value: comb_sum_1d(&psi, r, k, s), window_ok: cutoffs.window_ok(r, k) })
}

/// Reusable radial reconstruction at fixed `(r, K)`.
#[derive(Debug, Clone)]
pub struct Reconstructor2D {
    r: f64,
    k: usize,
    weights: Array2<f64>,
}

impl Reconstructor2D {
    pub fn new(psi: impl Fn(f64) -> f64, r: f64, k: usize) -> Result<Self> {
        check_reconstruction(r, k)?;
        Ok(Reconstructor2D { r, k, weights: edge_weighted_samples(&psi, r, k) })
    }

    /// `(r²/2π) Σ_{|m|,|n|<K} ψ(r√(m²+n²)) cos(m s₁ r) cos(n s₂ r)`.
    pub fn eval(&self, s1: f64, s2: f64) -> f64 {
        let c1: Vec<f64> = (0..self.k).map(|m| (m as f64 * s1 * self.r).cos()).collect();
        let c2: Vec<f64> = (0..self.k).map(|n| (n as f64 * s2 * self.r).cos()).collect();
        let mut sum = 0.0;
        for m in 0..self.k {
            let row: f64 = (0..self.k).map(|n| self.weights[[m, n]] * c2[n]).sum();
            sum += c1[m] * row;
        }
        self.r * self.r / (2.0 * PI) * sum
    }
}

pub fn reconstruct_phi_2d(
    psi: impl Fn(f64) -> f64,
    r: f64,
    k: usize,
    s1: f64,
    s2: f64,
    cutoffs: &Cutoffs,
) -> Result<Reconstruction> {
    let rec = Reconstructor2D::new(psi, r, k)?;
    Ok(Reconstruction { value: rec.eval(s1, s2), window_ok: cutoffs.window_ok(r, k) })
}
