//! Positive-definiteness probes: a Fourier-positive `ψ` makes every matrix
//! `ψ(x_i − x_j)` positive semidefinite, so a clearly negative smallest
//! eigenvalue proves that `φ` takes negative values.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{min_eigenvalue, SymMatrix};
use crate::verdict::{DetectorVerdict, SweepGrid, Witness};

/// Relative negativity threshold: `ε_det = DET_REL_EPS · ψ(0)`.
pub const DET_REL_EPS: f64 = 1e-9;

/// Half-width of the square the point pool is drawn from.
pub const POOL_HALF_WIDTH: f64 = 20.0;
/// Points in the shared pool.
pub const POOL_SIZE: usize = 100;
/// Point counts probed in the radial experiments.
pub const POINT_COUNTS: [usize; 5] = [20, 40, 60, 80, 100];

const POOL_SALT: u64 = 0x5EED_B0C4_0E70_2D00;

/// Default `r` sweep: `[0.05, 3]`, 120 log-spaced steps.
pub fn default_r_grid() -> SweepGrid {
    SweepGrid::log(0.05, 3.0, 120).expect("valid grid")
}

/// Default `β` sweep: `[0.05, 1]`, 40 steps.
pub fn default_beta_grid() -> SweepGrid {
    SweepGrid::linear(0.05, 1.0, 40).expect("valid grid")
}

fn det_threshold(psi0: f64, rel: f64) -> Result<f64> {
    if !(psi0 > 0.0) || !psi0.is_finite() {
        return Err(Error::Degenerate(format!("ψ(0) = {psi0} must be positive")));
    }
    if !(rel > 0.0) {
        return Err(Error::InvalidParameter(format!("relative threshold {rel} must be positive")));
    }
    Ok(rel * psi0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzProbe {
    order: usize,
    r: f64,
}

impl ToeplitzProbe {
    pub fn new(order: usize, r: f64) -> Result<Self> {
        if order < 2 || !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Toeplitz probe needs order ≥ 2 and r > 0, got ({order}, {r})"
            )));
        }
        Ok(ToeplitzProbe { order, r })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// `M_{jl} = ψ((j − l) r)`.
pub fn toeplitz_matrix(psi: impl Fn(f64) -> f64, probe: &ToeplitzProbe) -> Result<SymMatrix> {
    // one evaluation per lag keeps the matrix exactly Toeplitz
    let lags: Vec<f64> = (0..probe.order).map(|d| psi(d as f64 * probe.r)).collect();
    SymMatrix::from_fn(probe.order, |j, l| lags[j.abs_diff(l)])
}

/// Which 3×3 condition failed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `ψ(0) > ψ(r)`.
    MinorNear,
    /// `ψ(0) > ψ(2r)`.
    MinorFar,
    /// `ψ(2r) > 2ψ(r)²/ψ(0) − ψ(0)`.
    Major,
    /// `(ψ(0) − ψ(2r))(ψ(0)² − 2ψ(r)² + ψ(2r)ψ(0)) > 0`.
    Determinant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Inequalities3x3 {
    Pass,
    Fail(Violation),
}

/// Closed-form positivity conditions of the order-3 Toeplitz matrix.
pub fn inequalities_3x3(psi: impl Fn(f64) -> f64, r: f64) -> Result<Inequalities3x3> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("r = {r} must be positive")));
    }
    inequalities_3x3_from_values(psi(0.0), psi(r), psi(2.0 * r))
}

/// As [`inequalities_3x3`], from the three samples `ψ(0), ψ(r), ψ(2r)`.
pub fn inequalities_3x3_from_values(psi0: f64, psi1: f64, psi2: f64) -> Result<Inequalities3x3> {
    det_threshold(psi0, DET_REL_EPS)?;
    let fail = |v| Ok(Inequalities3x3::Fail(v));
    if !(psi0 > psi1) {
        return fail(Violation::MinorNear);
    }
    if !(psi0 > psi2) {
        return fail(Violation::MinorFar);
    }
    if !(psi2 > 2.0 * psi1 * psi1 / psi0 - psi0) {
        return fail(Violation::Major);
    }
    let delta = (psi0 - psi2) * (psi0 * psi0 - 2.0 * psi1 * psi1 + psi2 * psi0);
    if !(delta > 0.0) {
        return fail(Violation::Determinant);
    }
    Ok(Inequalities3x3::Pass)
}

/// Smallest eigenvalue of the order-`k` Toeplitz matrix over `r_grid`.
pub fn detect_1d(psi: impl Fn(f64) -> f64, k: usize, r_grid: &SweepGrid) -> Result<DetectorVerdict> {
    Ok(detect_1d_nested(psi, &[k], r_grid)?.remove(0))
}

/// One verdict per order in `orders`, sharing the matrices of the largest
/// order (smaller orders are its leading blocks).
pub fn detect_1d_nested(
    psi: impl Fn(f64) -> f64,
    orders: &[usize],
    r_grid: &SweepGrid,
) -> Result<Vec<DetectorVerdict>> {
    detect_1d_nested_with(psi, orders, r_grid, DET_REL_EPS)
}

/// As [`detect_1d_nested`] with threshold `det_rel · ψ(0)`.
pub fn detect_1d_nested_with(
    psi: impl Fn(f64) -> f64,
    orders: &[usize],
    r_grid: &SweepGrid,
    det_rel: f64,
) -> Result<Vec<DetectorVerdict>> {
    r_grid.validate()?;
    let &max_order = orders
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidParameter("no Toeplitz orders given".into()))?;
    let eps = det_threshold(psi(0.0), det_rel)?;
    let mut best: Vec<Option<DetectorVerdict>> = vec![None; orders.len()];
    for r in r_grid.values() {
        let full = toeplitz_matrix(&psi, &ToeplitzProbe::new(max_order, r)?)?;
        for (slot, &k) in best.iter_mut().zip(orders) {
            ToeplitzProbe::new(k, r)?;
            let lambda = min_eigenvalue(&full.leading(k)?)?;
            let v = DetectorVerdict::from_probe(Witness::Toeplitz { order: k, r }, lambda, eps);
            *slot = Some(slot.map_or(v, |b| b.worse(v)));
        }
    }
    Ok(best.into_iter().map(|v| v.expect("grid is non-empty")).collect())
}

/// Points `(y, z)` and a scale `β`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet2D {
    points: Vec<(f64, f64)>,
    beta: f64,
}

impl PointSet2D {
    pub fn new(points: Vec<(f64, f64)>, beta: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("point set is empty".into()));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("β = {beta} must be positive")));
        }
        let inside = |c: f64| c.abs() <= POOL_HALF_WIDTH;
        if let Some(p) = points.iter().find(|p| !(inside(p.0) && inside(p.1))) {
            return Err(Error::InvalidParameter(format!(
                "point {p:?} lies outside [−{POOL_HALF_WIDTH}, {POOL_HALF_WIDTH}]²"
            )));
        }
        Ok(PointSet2D { points, beta })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Whether two points coincide, which makes every point matrix singular.
    pub fn has_duplicates(&self) -> bool {
        self.points
            .iter()
            .enumerate()
            .any(|(i, a)| self.points[i + 1..].iter().any(|b| a == b))
    }
}

/// `M_{ij} = ψ(β |x_i − x_j|)`.
pub fn bochner_matrix_2d(psi: impl Fn(f64) -> f64, ps: &PointSet2D) -> Result<SymMatrix> {
    let pts = &ps.points;
    let psi0 = psi(0.0);
    SymMatrix::from_fn(pts.len(), |i, j| {
        if i == j {
            psi0
        } else {
            let (dy, dz) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
            psi(ps.beta * dy.hypot(dz))
        }
    })
}

/// Fixed random pool of points shared by every function of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPool {
    points: Vec<(f64, f64)>,
    /// Pairwise distances, row-major, `POOL_SIZE²`.
    dist: Vec<f64>,
}

impl PointPool {
    /// Draws [`POOL_SIZE`] points uniformly in `[−20, 20]²` from `seed ⊕ salt`.
    pub fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ POOL_SALT);
        let points: Vec<(f64, f64)> = (0..POOL_SIZE)
            .map(|_| {
                let y = rng.random_range(-POOL_HALF_WIDTH..=POOL_HALF_WIDTH);
                let z = rng.random_range(-POOL_HALF_WIDTH..=POOL_HALF_WIDTH);
                (y, z)
            })
            .collect();
        Self::from_points(points).expect("pool points are in range")
    }

    pub fn from_points(points: Vec<(f64, f64)>) -> Result<Self> {
        PointSet2D::new(points.clone(), 1.0)?;
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (dy, dz) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                dist[i * n + j] = dy.hypot(dz);
            }
        }
        Ok(PointPool { points, dist })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// The first `n` points at scale `beta`.
    pub fn prefix(&self, n: usize, beta: f64) -> Result<PointSet2D> {
        if n == 0 || n > self.len() {
            return Err(Error::IndexOutOfRange { index: n, len: self.len() });
        }
        PointSet2D::new(self.points[..n].to_vec(), beta)
    }

    fn matrix(&self, psi: &impl Fn(f64) -> f64, n: usize, beta: f64) -> Result<SymMatrix> {
        let m = self.len();
        let psi0 = psi(0.0);
        SymMatrix::from_fn(n, |i, j| if i == j { psi0 } else { psi(beta * self.dist[i * m + j]) })
    }
}

/// Smallest eigenvalue over `beta_grid` of the matrix on the first
/// `n_points` pool points.
pub fn detect_2d(
    psi: impl Fn(f64) -> f64,
    pool: &PointPool,
    n_points: usize,
    beta_grid: &SweepGrid,
) -> Result<DetectorVerdict> {
    Ok(detect_2d_nested(psi, pool, &[n_points], beta_grid)?.remove(0))
}

/// One verdict per point count, built from leading blocks of the largest
/// matrix so that the verdicts are nested prefixes.
pub fn detect_2d_nested(
    psi: impl Fn(f64) -> f64,
    pool: &PointPool,
    sizes: &[usize],
    beta_grid: &SweepGrid,
) -> Result<Vec<DetectorVerdict>> {
    detect_2d_nested_with(psi, pool, sizes, beta_grid, DET_REL_EPS)
}

/// As [`detect_2d_nested`] with threshold `det_rel · ψ(0)`.
pub fn detect_2d_nested_with(
    psi: impl Fn(f64) -> f64,
    pool: &PointPool,
    sizes: &[usize],
    beta_grid: &SweepGrid,
    det_rel: f64,
) -> Result<Vec<DetectorVerdict>> {
    beta_grid.validate()?;
    let &max_n = sizes
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidParameter("no point counts given".into()))?;
    if let Some(&bad) = sizes.iter().find(|&&n| n == 0 || n > pool.len()) {
        return Err(Error::IndexOutOfRange { index: bad, len: pool.len() });
    }
    let eps = det_threshold(psi(0.0), det_rel)?;
    let mut best: Vec<Option<DetectorVerdict>> = vec![None; sizes.len()];
    for beta in beta_grid.values() {
        if !(beta > 0.0) {
            return Err(Error::InvalidParameter(format!("β = {beta} must be positive")));
        }
        let full = pool.matrix(&psi, max_n, beta)?;
        for (slot, &n) in best.iter_mut().zip(sizes) {
            let m = if n == max_n { full.clone() } else { full.leading(n)? };
            let lambda = min_eigenvalue(&m)?;
            let v = DetectorVerdict::from_probe(Witness::Points { n_points: n, beta }, lambda, eps);
            *slot = Some(slot.map_or(v, |b| b.worse(v)));
        }
    }
    Ok(best.into_iter().map(|v| v.expect("grid is non-empty")).collect())
}
