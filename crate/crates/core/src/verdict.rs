//! Sweep grids and detector verdicts shared by both detectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `steps` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

impl SweepGrid {
    pub fn new(min: f64, max: f64, steps: usize, spacing: Spacing) -> Result<Self> {
        let grid = SweepGrid { min, max, steps, spacing };
        grid.validate()?;
        Ok(grid)
    }

    pub fn linear(min: f64, max: f64, steps: usize) -> Result<Self> {
        Self::new(min, max, steps, Spacing::Linear)
    }

    pub fn log(min: f64, max: f64, steps: usize) -> Result<Self> {
        Self::new(min, max, steps, Spacing::Log)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.min.is_finite()
            && self.max.is_finite()
            && self.steps >= 1
            && self.min <= self.max
            && (self.steps > 1 || self.min == self.max)
            && (self.spacing == Spacing::Linear || self.min > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid sweep grid {self:?}")))
        }
    }

    /// A grid holding the single value `x`.
    pub fn single(x: f64) -> Self {
        SweepGrid { min: x, max: x, steps: 1, spacing: Spacing::Linear }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

/// Where the most negative value of a sweep was found.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Toeplitz matrix of order `order` at grid spacing `r`.
    Toeplitz { order: usize, r: f64 },
    /// Point-set matrix over the first `n_points` pool points at scale `beta`.
    Points { n_points: usize, beta: f64 },
    /// 1-D characteristic function at `(Δr, s)`.
    Char1D { dr: f64, s: f64 },
    /// Radial characteristic function at `(Δr, α, γ)`.
    Char2D { dr: f64, alpha: f64, gamma: f64 },
}

impl Witness {
    /// Matrix order or point count, if the witness is a matrix probe.
    pub fn size(&self) -> Option<usize> {
        match *self {
            Witness::Toeplitz { order, .. } => Some(order),
            Witness::Points { n_points, .. } => Some(n_points),
            _ => None,
        }
    }

    /// Up to three sweep coordinates (`r`/`β`/`Δr`, then `s` or `α`, `γ`).
    pub fn coords(&self) -> [Option<f64>; 3] {
        match *self {
            Witness::Toeplitz { r, .. } => [Some(r), None, None],
            Witness::Points { beta, .. } => [Some(beta), None, None],
            Witness::Char1D { dr, s } => [Some(dr), Some(s), None],
            Witness::Char2D { dr, alpha, gamma } => [Some(dr), Some(alpha), Some(gamma)],
        }
    }
}

/// Outcome of one detector on one function.
///
/// `witness` locates the point with the smallest margin `min_value + threshold`;
/// `detected` iff that margin is negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorVerdict {
    pub detected: bool,
    pub witness: Witness,
    pub min_value: f64,
    pub threshold: f64,
}

impl DetectorVerdict {
    pub(crate) fn from_probe(witness: Witness, value: f64, threshold: f64) -> Self {
        DetectorVerdict { detected: value < -threshold, witness, min_value: value, threshold }
    }

    /// Keeps whichever of the two probes is closer to (or further past) detection.
    pub(crate) fn worse(self, other: Self) -> Self {
        if other.min_value + other.threshold < self.min_value + self.threshold {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = SweepGrid::linear(0.1, 1.0, 19).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 19);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[18], 1.0);
        assert!((v[1] - 0.15).abs() < 1e-15);
        let l = SweepGrid::log(0.05, 3.0, 120).unwrap().values();
        assert!((l[119] - 3.0).abs() < 1e-14);
        assert!((l[1] / l[0] - l[2] / l[1]).abs() < 1e-12);
        assert!(SweepGrid::log(0.0, 1.0, 5).is_err());
        assert!(SweepGrid::linear(1.0, 0.0, 5).is_err());
        assert!(SweepGrid::linear(0.0, 1.0, 1).is_err());
        assert_eq!(SweepGrid::single(0.5).values(), vec![0.5]);
    }

    #[test]
    fn worse_prefers_smaller_margin() {
        let a = DetectorVerdict::from_probe(Witness::Toeplitz { order: 5, r: 1.0 }, -1.0, 0.1);
        let b = DetectorVerdict::from_probe(Witness::Toeplitz { order: 5, r: 2.0 }, 0.5, 0.1);
        assert!(a.detected && !b.detected);
        assert_eq!(a.worse(b), a);
        assert_eq!(b.worse(a), a);
    }
}
