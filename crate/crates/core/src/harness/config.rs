use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basis::{BasisKind, DEFAULT_LABEL_EPS};
use crate::bochner::{default_beta_grid, default_r_grid, DET_REL_EPS, POINT_COUNTS, POOL_SIZE};
use crate::error::{Error, Result};
use crate::poisson::{CharScan1D, CharScan2D, F_REL_EPS};
use crate::verdict::SweepGrid;

/// Full-scale corpus sizes.
pub const DEFAULT_N_1D: usize = 15456;
pub const DEFAULT_N_RADIAL: usize = 10079;

pub const RESOLVED_CONFIG_NAME: &str = "resolved-config.toml";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub label_eps: f64,
    pub det_rel_eps: f64,
    pub f_rel_eps: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { label_eps: DEFAULT_LABEL_EPS, det_rel_eps: DET_REL_EPS, f_rel_eps: F_REL_EPS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BochnerConfig {
    /// Toeplitz orders (1-D).
    pub orders: Vec<usize>,
    pub r_grid: SweepGrid,
    /// Point-set sizes (radial), prefixes of one shared pool.
    pub point_counts: Vec<usize>,
    pub beta_grid: SweepGrid,
}

impl Default for BochnerConfig {
    fn default() -> Self {
        BochnerConfig {
            orders: vec![5, 10],
            r_grid: default_r_grid(),
            point_counts: POINT_COUNTS.to_vec(),
            beta_grid: default_beta_grid(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct PoissonConfig {
    pub scan_1d: CharScan1D,
    pub scan_2d: CharScan2D,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReconstructConfig {
    /// `r = range / K` in 1-D.
    pub range_1d: f64,
    /// `r = range / K` in the radial case.
    pub range_2d: f64,
    pub spectral_1d: f64,
    pub spectral_2d: f64,
    pub ks_1d: Vec<usize>,
    pub ks_2d: Vec<usize>,
    pub s_grid_1d: SweepGrid,
    pub p_grid_2d: SweepGrid,
}

impl Default for ReconstructConfig {
    fn default() -> Self {
        ReconstructConfig {
            range_1d: 8.0,
            range_2d: 40.0,
            spectral_1d: 8.0,
            spectral_2d: 2.0,
            ks_1d: vec![12, 14, 20],
            ks_2d: vec![40, 80],
            s_grid_1d: SweepGrid::linear(0.0, 8.0, 801).expect("valid grid"),
            p_grid_2d: SweepGrid::linear(0.0, 1.0, 201).expect("valid grid"),
        }
    }
}

/// Everything a run depends on. Missing keys take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: BasisKind,
    /// Corpus size; `None` means full scale for `kind`.
    pub n: Option<usize>,
    pub seed: u64,
    pub out_dir: PathBuf,
    /// `Δr` of the radial contour export.
    pub contour_dr: f64,
    pub thresholds: Thresholds,
    pub bochner: BochnerConfig,
    pub poisson: PoissonConfig,
    pub reconstruct: ReconstructConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            kind: BasisKind::Hermite1D,
            n: None,
            seed: 1,
            out_dir: PathBuf::from("fpos-out"),
            contour_dr: 0.5,
            thresholds: Thresholds::default(),
            bochner: BochnerConfig::default(),
            poisson: PoissonConfig::default(),
            reconstruct: ReconstructConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn corpus_size(&self) -> usize {
        self.n.unwrap_or(match self.kind {
            BasisKind::Hermite1D => DEFAULT_N_1D,
            BasisKind::LaguerreRadial => DEFAULT_N_RADIAL,
        })
    }

    /// Copy with every defaulted value spelled out.
    pub fn resolved(&self) -> Self {
        ExperimentConfig { n: Some(self.corpus_size()), ..self.clone() }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    /// Writes the resolved config into `dir` under [`RESOLVED_CONFIG_NAME`].
    pub fn write_resolved(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(RESOLVED_CONFIG_NAME);
        fs::write(&path, self.resolved().to_toml()).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        let t = &self.thresholds;
        for (name, v) in [("label_eps", t.label_eps), ("det_rel_eps", t.det_rel_eps), ("f_rel_eps", t.f_rel_eps)] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("threshold {name} = {v} must be positive"));
            }
        }
        if self.n == Some(0) {
            return bad("corpus size must be at least 1".into());
        }
        let b = &self.bochner;
        if b.orders.is_empty() || b.orders.iter().any(|&k| !(2..=128).contains(&k)) {
            return bad(format!("Toeplitz orders {:?} must lie in 2..=128", b.orders));
        }
        if b.point_counts.is_empty() || b.point_counts.iter().any(|&n| n == 0 || n > POOL_SIZE) {
            return bad(format!("point counts {:?} must lie in 1..={POOL_SIZE}", b.point_counts));
        }
        let grid = |g: &SweepGrid, name: &str| {
            g.validate().map_err(|e| Error::Config(format!("{name}: {e}")))?;
            if g.min <= 0.0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
            Ok(())
        };
        grid(&b.r_grid, "bochner.r_grid")?;
        grid(&b.beta_grid, "bochner.beta_grid")?;
        self.poisson.scan_1d.validate().map_err(|e| Error::Config(format!("poisson.scan_1d: {e}")))?;
        self.poisson.scan_2d.validate().map_err(|e| Error::Config(format!("poisson.scan_2d: {e}")))?;
        if !(self.contour_dr > 0.0) {
            return bad(format!("contour_dr = {} must be positive", self.contour_dr));
        }
        let r = &self.reconstruct;
        for v in [r.range_1d, r.range_2d, r.spectral_1d, r.spectral_2d] {
            if !(v > 0.0) || !v.is_finite() {
                return bad("reconstruction cut-offs must be positive".into());
            }
        }
        if r.ks_1d.contains(&0) || r.ks_2d.contains(&0) {
            return bad("reconstruction K values must be at least 1".into());
        }
        r.s_grid_1d.validate().map_err(|e| Error::Config(e.to_string()))?;
        r.p_grid_2d.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_fills_defaults() {
        let cfg = ExperimentConfig::from_toml_str(
            "kind = \"laguerre-radial\"\nseed = 9\n[bochner]\npoint_counts = [20, 80]\n",
        )
        .unwrap();
        assert_eq!(cfg.kind, BasisKind::LaguerreRadial);
        assert_eq!(cfg.corpus_size(), DEFAULT_N_RADIAL);
        assert_eq!(cfg.bochner.point_counts, vec![20, 80]);
        assert_eq!(cfg.bochner.orders, vec![5, 10]);
        assert_eq!(cfg.thresholds, Thresholds::default());
    }

    #[test]
    fn resolved_round_trips() {
        let cfg = ExperimentConfig { n: None, ..Default::default() };
        let text = cfg.resolved().to_toml();
        let back = ExperimentConfig::from_toml_str(&text).unwrap();
        assert_eq!(back, cfg.resolved());
        assert_eq!(back.n, Some(DEFAULT_N_1D));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ExperimentConfig::from_toml_str("n = 0").is_err());
        assert!(ExperimentConfig::from_toml_str("[thresholds]\ndet_rel_eps = -1.0").is_err());
        assert!(ExperimentConfig::from_toml_str("bogus = 1").is_err());
        assert!(ExperimentConfig::from_toml_str("[bochner]\npoint_counts = [200]").is_err());
        assert!(ExperimentConfig::from_toml_str("kind = \"cubic\"").is_err());
    }
}
