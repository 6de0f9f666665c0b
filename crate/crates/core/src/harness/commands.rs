use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::config::ExperimentConfig;
use super::detect::{read_verdicts, run_detector, write_verdicts, CorpusReport, DetectorSpec, VerdictRow};
use crate::basis::{
    read_corpus, sample_corpus_with, write_corpus, BasisKind, CoefficientVector, Corpus, FourierPair1D,
    RadialPair,
};
use crate::error::{Error, Result};
use crate::poisson::{reconstruct_phi_1d, Cutoffs, Reconstructor2D};

pub const CORPUS_FILE: &str = "corpus.txt";

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone)]
pub struct GenerateOutcome {
    pub corpus: Corpus,
    pub path: PathBuf,
}

/// Samples the configured corpus into `out_dir/corpus.txt`.
pub fn cmd_generate(cfg: &ExperimentConfig) -> Result<GenerateOutcome> {
    cfg.validate()?;
    let corpus = sample_corpus_with(cfg.kind, cfg.corpus_size(), cfg.seed, cfg.thresholds.label_eps);
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let path = cfg.out_dir.join(CORPUS_FILE);
    write_corpus(&corpus, &path)?;
    cfg.write_resolved(&cfg.out_dir)?;
    Ok(GenerateOutcome { corpus, path })
}

#[derive(Debug, Clone)]
pub struct DetectOutcome {
    pub rows: Vec<VerdictRow>,
    pub report: CorpusReport,
    pub verdict_path: PathBuf,
    pub report_path: PathBuf,
}

/// Runs one detector over a corpus file; writes verdicts, report and config.
pub fn cmd_detect(cfg: &ExperimentConfig, corpus_path: &Path, spec: &DetectorSpec) -> Result<DetectOutcome> {
    cfg.validate()?;
    let corpus = read_corpus(corpus_path)?;
    let rows = run_detector(&corpus, spec, cfg)?;
    let mut report = CorpusReport::from_rows(corpus.kind, corpus.master_seed, &rows);
    report.config = Some(ExperimentConfig { kind: corpus.kind, n: Some(corpus.len()), ..cfg.clone() });

    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let id = spec.id().as_str();
    let verdict_path = cfg.out_dir.join(format!("verdicts-{id}.csv"));
    write_verdicts(&verdict_path, corpus.kind, corpus.master_seed, &rows)?;
    let report_path = cfg.out_dir.join(format!("report-{id}.json"));
    write_file(&report_path, &report.to_json())?;
    cfg.write_resolved(&cfg.out_dir)?;
    Ok(DetectOutcome { rows, report, verdict_path, report_path })
}

/// Recomputes a report from a verdict file.
pub fn cmd_report(verdict_path: &Path) -> Result<CorpusReport> {
    let file = read_verdicts(verdict_path)?;
    Ok(CorpusReport::from_rows(file.kind, file.master_seed, &file.rows))
}

/// A characteristic-function grid ready for contouring.
#[derive(Debug, Clone)]
pub struct ContourGrid {
    /// `dr,s,F` (1-D) or `alpha,gamma,F` (radial).
    pub columns: [&'static str; 3],
    pub rows: Vec<[f64; 3]>,
    pub min: f64,
}

impl ContourGrid {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            writeln!(out, "{:e},{:e},{:e}", r[0], r[1], r[2]).expect("write to string");
        }
        out
    }
}

/// 1-D: `F(s, Δr)` over the configured scan. Radial: `F(α, γ)` at `contour_dr`.
pub fn contour_grid(cfg: &ExperimentConfig, cv: &CoefficientVector) -> Result<ContourGrid> {
    let rows: Vec<[f64; 3]> = match cv.kind() {
        BasisKind::Hermite1D => {
            let h = cv.hermite()?;
            let plan = cfg.poisson.scan_1d.plan()?;
            let s = plan.s_values().to_vec();
            plan.grid(|r| h.psi(r))
                .into_iter()
                .flat_map(|(dr, f)| s.iter().zip(f).map(move |(&s, f)| [dr, s, f]).collect::<Vec<_>>())
                .collect()
        }
        BasisKind::LaguerreRadial => {
            let l = cv.laguerre()?;
            let plan = cfg.poisson.scan_2d.plan()?;
            let g = plan.angle_grid(|x| l.psi(x), cfg.contour_dr)?;
            g.values
                .indexed_iter()
                .map(|((i, j), &v)| [g.angles[i], g.angles[j], v])
                .collect()
        }
    };
    let columns = match cv.kind() {
        BasisKind::Hermite1D => ["dr", "s", "F"],
        BasisKind::LaguerreRadial => ["alpha", "gamma", "F"],
    };
    let min = rows.iter().map(|r| r[2]).fold(f64::INFINITY, f64::min);
    Ok(ContourGrid { columns, rows, min })
}

pub fn cmd_contour(cfg: &ExperimentConfig, cv: &CoefficientVector, out: &Path) -> Result<ContourGrid> {
    let grid = contour_grid(cfg, cv)?;
    write_file(out, &grid.to_csv())?;
    Ok(grid)
}

/// Finite-sum reconstructions at several `K`, with `r = R/K`.
#[derive(Debug, Clone)]
pub struct ReconstructionTable {
    pub ks: Vec<usize>,
    pub rs: Vec<f64>,
    pub window_ok: Vec<bool>,
    /// `(s, [φ_K ...], φ_exact)`.
    pub rows: Vec<(f64, Vec<f64>, f64)>,
}

impl ReconstructionTable {
    /// `sup |φ_K − φ|` over the grid, per `K`.
    pub fn sup_errors(&self) -> Vec<f64> {
        (0..self.ks.len())
            .map(|i| self.rows.iter().map(|r| (r.1[i] - r.2).abs()).fold(0.0, f64::max))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s");
        for k in &self.ks {
            write!(out, ",phi_k{k}").expect("write to string");
        }
        out.push_str(",phi_exact\n");
        for (s, approx, exact) in &self.rows {
            write!(out, "{s:e}").expect("write to string");
            for a in approx {
                write!(out, ",{a:e}").expect("write to string");
            }
            writeln!(out, ",{exact:e}").expect("write to string");
        }
        out
    }
}

/// Reconstructs `φ` at the configured `K` values. Radial curves run along
/// `(s₁, s₂) = (p, 0)`.
pub fn reconstruct_table(cfg: &ExperimentConfig, cv: &CoefficientVector, ks: Option<&[usize]>) -> Result<ReconstructionTable> {
    let rc = &cfg.reconstruct;
    match cv.kind() {
        BasisKind::Hermite1D => {
            let ks = ks.map(<[usize]>::to_vec).unwrap_or_else(|| rc.ks_1d.clone());
            let h = cv.hermite()?;
            let cut = Cutoffs { range: rc.range_1d, spectral: rc.spectral_1d };
            let rs: Vec<f64> = ks.iter().map(|&k| rc.range_1d / k as f64).collect();
            let window_ok = ks.iter().zip(&rs).map(|(&k, &r)| cut.window_ok(r, k)).collect();
            let rows = rc
                .s_grid_1d
                .values()
                .into_iter()
                .map(|s| {
                    let approx = ks
                        .iter()
                        .zip(&rs)
                        .map(|(&k, &r)| reconstruct_phi_1d(|x| h.psi(x), r, k, s, &cut).map(|v| v.value))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((s, approx, h.phi(s)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ReconstructionTable { ks, rs, window_ok, rows })
        }
        BasisKind::LaguerreRadial => {
            let ks = ks.map(<[usize]>::to_vec).unwrap_or_else(|| rc.ks_2d.clone());
            let l = cv.laguerre()?;
            let cut = Cutoffs { range: rc.range_2d, spectral: rc.spectral_2d };
            let rs: Vec<f64> = ks.iter().map(|&k| rc.range_2d / k as f64).collect();
            let window_ok = ks.iter().zip(&rs).map(|(&k, &r)| cut.window_ok(r, k)).collect();
            let recs = ks
                .iter()
                .zip(&rs)
                .map(|(&k, &r)| Reconstructor2D::new(|x| l.psi(x), r, k))
                .collect::<Result<Vec<_>>>()?;
            let rows = rc
                .p_grid_2d
                .values()
                .into_iter()
                .map(|p| (p, recs.iter().map(|rec| rec.eval(p, 0.0)).collect(), l.phi(p)))
                .collect();
            Ok(ReconstructionTable { ks, rs, window_ok, rows })
        }
    }
}

pub fn cmd_reconstruct(
    cfg: &ExperimentConfig,
    cv: &CoefficientVector,
    ks: Option<&[usize]>,
    out: &Path,
) -> Result<ReconstructionTable> {
    let table = reconstruct_table(cfg, cv, ks)?;
    write_file(out, &table.to_csv())?;
    Ok(table)
}
