use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::basis::{BasisKind, Corpus, FourierPair1D, Label, RadialPair};
use crate::bochner::{detect_1d_nested_with, detect_2d_nested_with, PointPool};
use crate::error::{Error, Result};
use crate::verdict::{DetectorVerdict, Witness};

pub const VERDICT_FORMAT_VERSION: u32 = 1;
pub const VERDICT_HEADER: &str =
    "index,label,detector,size,detected,witness_r,witness_s,witness_t,min_value,threshold";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorId {
    Bochner,
    Poisson,
}

impl DetectorId {
    pub fn as_str(self) -> &'static str {
        match self {
            DetectorId::Bochner => "bochner",
            DetectorId::Poisson => "poisson",
        }
    }
}

impl FromStr for DetectorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bochner" => Ok(DetectorId::Bochner),
            "poisson" => Ok(DetectorId::Poisson),
            other => Err(Error::UnknownDetector(other.to_string())),
        }
    }
}

/// `poisson`, `bochner` (sizes from the config) or `bochner:5,10`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectorSpec {
    Bochner { sizes: Option<Vec<usize>> },
    Poisson,
}

impl DetectorSpec {
    pub fn id(&self) -> DetectorId {
        match self {
            DetectorSpec::Bochner { .. } => DetectorId::Bochner,
            DetectorSpec::Poisson => DetectorId::Poisson,
        }
    }
}

impl FromStr for DetectorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        match (name, args) {
            ("poisson", None) => Ok(DetectorSpec::Poisson),
            ("bochner", None) => Ok(DetectorSpec::Bochner { sizes: None }),
            ("bochner", Some(list)) => {
                let sizes = list
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::UnknownDetector(s.to_string()))?;
                if sizes.is_empty() || sizes.contains(&0) {
                    return Err(Error::UnknownDetector(s.to_string()));
                }
                Ok(DetectorSpec::Bochner { sizes: Some(sizes) })
            }
            _ => Err(Error::UnknownDetector(s.to_string())),
        }
    }
}

impl fmt::Display for DetectorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetectorSpec::Poisson => f.write_str("poisson"),
            DetectorSpec::Bochner { sizes: None } => f.write_str("bochner"),
            DetectorSpec::Bochner { sizes: Some(s) } => {
                let list: Vec<String> = s.iter().map(|n| n.to_string()).collect();
                write!(f, "bochner:{}", list.join(","))
            }
        }
    }
}

/// One detector configuration applied to one corpus function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictRow {
    pub index: usize,
    pub label: Label,
    pub detector: DetectorId,
    /// Toeplitz order or point count; `None` for Poisson.
    pub size: Option<usize>,
    pub verdict: DetectorVerdict,
}

/// Runs `spec` on every corpus function, in corpus order.
pub fn run_detector(corpus: &Corpus, spec: &DetectorSpec, cfg: &ExperimentConfig) -> Result<Vec<VerdictRow>> {
    let th = cfg.thresholds;
    let per_function: Vec<Vec<VerdictRow>> = match (spec, corpus.kind) {
        (DetectorSpec::Bochner { sizes }, BasisKind::Hermite1D) => {
            let orders = sizes.clone().unwrap_or_else(|| cfg.bochner.orders.clone());
            corpus
                .functions
                .par_iter()
                .enumerate()
                .map(|(index, f)| {
                    let h = f.cv.hermite()?;
                    let vs = detect_1d_nested_with(|r| h.psi(r), &orders, &cfg.bochner.r_grid, th.det_rel_eps)?;
                    Ok(rows(index, f.label, DetectorId::Bochner, &orders, vs))
                })
                .collect::<Result<_>>()?
        }
        (DetectorSpec::Bochner { sizes }, BasisKind::LaguerreRadial) => {
            let counts = sizes.clone().unwrap_or_else(|| cfg.bochner.point_counts.clone());
            let pool = PointPool::new(corpus.master_seed);
            corpus
                .functions
                .par_iter()
                .enumerate()
                .map(|(index, f)| {
                    let l = f.cv.laguerre()?;
                    let vs = detect_2d_nested_with(
                        |x| l.psi(x),
                        &pool,
                        &counts,
                        &cfg.bochner.beta_grid,
                        th.det_rel_eps,
                    )?;
                    Ok(rows(index, f.label, DetectorId::Bochner, &counts, vs))
                })
                .collect::<Result<_>>()?
        }
        (DetectorSpec::Poisson, BasisKind::Hermite1D) => {
            let plan = cfg.poisson.scan_1d.plan()?;
            corpus
                .functions
                .par_iter()
                .enumerate()
                .map(|(index, f)| {
                    let h = f.cv.hermite()?;
                    let v = plan.detect_with(|r| h.psi(r), th.f_rel_eps);
                    Ok(vec![poisson_row(index, f.label, v)])
                })
                .collect::<Result<_>>()?
        }
        (DetectorSpec::Poisson, BasisKind::LaguerreRadial) => {
            let plan = cfg.poisson.scan_2d.plan()?;
            corpus
                .functions
                .par_iter()
                .enumerate()
                .map(|(index, f)| {
                    let l = f.cv.laguerre()?;
                    let v = plan.detect_with(|x| l.psi(x), th.f_rel_eps);
                    Ok(vec![poisson_row(index, f.label, v)])
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(per_function.into_iter().flatten().collect())
}

fn rows(index: usize, label: Label, detector: DetectorId, sizes: &[usize], vs: Vec<DetectorVerdict>) -> Vec<VerdictRow> {
    sizes
        .iter()
        .zip(vs)
        .map(|(&n, verdict)| VerdictRow { index, label, detector, size: Some(n), verdict })
        .collect()
}

fn poisson_row(index: usize, label: Label, verdict: DetectorVerdict) -> VerdictRow {
    VerdictRow { index, label, detector: DetectorId::Poisson, size: None, verdict }
}

fn opt<T: fmt::LowerExp>(v: Option<T>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn write_verdicts(path: &Path, kind: BasisKind, master_seed: u64, rows: &[VerdictRow]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "# fpos-verdicts v{VERDICT_FORMAT_VERSION} kind={kind} seed={master_seed}")?;
        writeln!(w, "{VERDICT_HEADER}")?;
        for r in rows {
            let [a, b, c] = r.verdict.witness.coords();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{:e},{:e}",
                r.index,
                r.label,
                r.detector.as_str(),
                r.size.map(|n| n.to_string()).unwrap_or_default(),
                u8::from(r.verdict.detected),
                opt(a),
                opt(b),
                opt(c),
                r.verdict.min_value,
                r.verdict.threshold
            )?;
        }
        w.flush()
    };
    emit().map_err(|e| Error::io(path, e))
}

/// Verdict file contents.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictFile {
    pub kind: BasisKind,
    pub master_seed: u64,
    pub rows: Vec<VerdictRow>,
}

pub fn read_verdicts(path: &Path) -> Result<VerdictFile> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let bad = |line: usize, reason: String| Error::Verdicts { line, reason };
    let mut lines = BufReader::new(file).lines();
    let mut next_line = |n: usize| -> Result<String> {
        match lines.next() {
            Some(l) => l.map_err(|e| Error::io(path, e)),
            None => Err(bad(n, "unexpected end of file".into())),
        }
    };
    let header = next_line(1)?;
    let rest = header
        .strip_prefix("# fpos-verdicts v")
        .ok_or_else(|| bad(1, "missing `# fpos-verdicts` header".into()))?;
    let mut toks = rest.split_whitespace();
    if toks.next() != Some(&VERDICT_FORMAT_VERSION.to_string()[..]) {
        return Err(bad(1, "unsupported format version".into()));
    }
    let mut kind = None;
    let mut master_seed = None;
    for t in toks {
        if let Some(k) = t.strip_prefix("kind=") {
            kind = Some(k.parse::<BasisKind>().map_err(|e| bad(1, e.to_string()))?);
        } else if let Some(s) = t.strip_prefix("seed=") {
            master_seed = Some(s.parse::<u64>().map_err(|_| bad(1, "bad seed".into()))?);
        }
    }
    let kind = kind.ok_or_else(|| bad(1, "header lacks kind=".into()))?;
    let master_seed = master_seed.ok_or_else(|| bad(1, "header lacks seed=".into()))?;
    if next_line(2)? != VERDICT_HEADER {
        return Err(bad(2, "unexpected column header".into()));
    }

    let mut rows = Vec::new();
    for (lineno, line) in (3..).zip(lines.by_ref()) {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(parse_row(&line, kind).map_err(|reason| bad(lineno, reason))?);
    }
    Ok(VerdictFile { kind, master_seed, rows })
}

fn parse_row(line: &str, kind: BasisKind) -> std::result::Result<VerdictRow, String> {
    let f: Vec<&str> = line.split(',').collect();
    if f.len() != 10 {
        return Err(format!("expected 10 fields, found {}", f.len()));
    }
    let num = |s: &str, what: &str| s.parse::<f64>().map_err(|_| format!("bad {what} `{s}`"));
    let index = f[0].parse::<usize>().map_err(|_| format!("bad index `{}`", f[0]))?;
    let label = f[1].parse::<Label>().map_err(|e| e.to_string())?;
    let detector = f[2].parse::<DetectorId>().map_err(|e| e.to_string())?;
    let size = if f[3].is_empty() {
        None
    } else {
        Some(f[3].parse::<usize>().map_err(|_| format!("bad size `{}`", f[3]))?)
    };
    let detected = match f[4] {
        "1" => true,
        "0" => false,
        other => return Err(format!("bad detected flag `{other}`")),
    };
    let a = num(f[5], "witness")?;
    let witness = match (detector, kind) {
        (DetectorId::Bochner, _) => {
            let n = size.ok_or("bochner row without size")?;
            match kind {
                BasisKind::Hermite1D => Witness::Toeplitz { order: n, r: a },
                BasisKind::LaguerreRadial => Witness::Points { n_points: n, beta: a },
            }
        }
        (DetectorId::Poisson, BasisKind::Hermite1D) => Witness::Char1D { dr: a, s: num(f[6], "witness")? },
        (DetectorId::Poisson, BasisKind::LaguerreRadial) => Witness::Char2D {
            dr: a,
            alpha: num(f[6], "witness")?,
            gamma: num(f[7], "witness")?,
        },
    };
    let verdict = DetectorVerdict {
        detected,
        witness,
        min_value: num(f[8], "min_value")?,
        threshold: num(f[9], "threshold")?,
    };
    Ok(VerdictRow { index, label, detector, size, verdict })
}

/// Detection statistics of one detector configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorStats {
    pub detector: DetectorId,
    pub size: Option<usize>,
    pub pn_total: usize,
    pub detected: usize,
    pub missed: usize,
    pub false_positives: usize,
    /// `detected / pn_total`.
    pub rate: Option<f64>,
    /// Binomial standard error `√(rate(1 − rate)/pn_total)`.
    pub stderr: Option<f64>,
    pub false_positive_indices: Vec<usize>,
}

/// Aggregate counts and rates over one corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub kind: BasisKind,
    pub master_seed: u64,
    pub total: usize,
    pub pp: usize,
    pub pn: usize,
    pub pp_fraction: Option<f64>,
    pub pp_fraction_stderr: Option<f64>,
    pub detectors: Vec<DetectorStats>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<ExperimentConfig>,
}

/// `(p, √(p(1−p)/n))`, or `None` for an empty sample.
pub fn binomial(successes: usize, n: usize) -> (Option<f64>, Option<f64>) {
    if n == 0 {
        return (None, None);
    }
    let p = successes as f64 / n as f64;
    (Some(p), Some((p * (1.0 - p) / n as f64).sqrt()))
}

impl CorpusReport {
    /// Recomputes every count from verdict rows alone.
    pub fn from_rows(kind: BasisKind, master_seed: u64, rows: &[VerdictRow]) -> Self {
        let mut labels: Vec<(usize, Label)> = rows.iter().map(|r| (r.index, r.label)).collect();
        labels.sort_by_key(|p| p.0);
        labels.dedup_by_key(|p| p.0);
        let pp = labels.iter().filter(|p| p.1 == Label::PP).count();
        let total = labels.len();
        let (pp_fraction, pp_fraction_stderr) = binomial(pp, total);

        let mut keys: Vec<(DetectorId, Option<usize>)> = Vec::new();
        for r in rows {
            if !keys.contains(&(r.detector, r.size)) {
                keys.push((r.detector, r.size));
            }
        }
        let detectors = keys
            .into_iter()
            .map(|(detector, size)| {
                let sel = rows.iter().filter(|r| r.detector == detector && r.size == size);
                let mut pn_total = 0;
                let mut detected = 0;
                let mut fps = Vec::new();
                for r in sel {
                    match r.label {
                        Label::PN => {
                            pn_total += 1;
                            detected += usize::from(r.verdict.detected);
                        }
                        Label::PP if r.verdict.detected => fps.push(r.index),
                        Label::PP => {}
                    }
                }
                let (rate, stderr) = binomial(detected, pn_total);
                DetectorStats {
                    detector,
                    size,
                    pn_total,
                    detected,
                    missed: pn_total - detected,
                    false_positives: fps.len(),
                    rate,
                    stderr,
                    false_positive_indices: fps,
                }
            })
            .collect();
        CorpusReport {
            kind,
            master_seed,
            total,
            pp,
            pn: total - pp,
            pp_fraction,
            pp_fraction_stderr,
            detectors,
            config: None,
        }
    }

    pub fn false_positives(&self) -> usize {
        self.detectors.iter().map(|d| d.false_positives).sum()
    }

    pub fn stats(&self, detector: DetectorId, size: Option<usize>) -> Option<&DetectorStats> {
        self.detectors.iter().find(|d| d.detector == detector && d.size == size)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detector_specs() {
        assert_eq!("poisson".parse::<DetectorSpec>().unwrap(), DetectorSpec::Poisson);
        assert_eq!(
            "bochner:5,10".parse::<DetectorSpec>().unwrap(),
            DetectorSpec::Bochner { sizes: Some(vec![5, 10]) }
        );
        assert_eq!("bochner".parse::<DetectorSpec>().unwrap().to_string(), "bochner");
        assert_eq!("bochner:20,80".parse::<DetectorSpec>().unwrap().to_string(), "bochner:20,80");
        for bad in ["fourier", "bochner:", "bochner:x", "poisson:3", "bochner:0"] {
            assert!(matches!(bad.parse::<DetectorSpec>(), Err(Error::UnknownDetector(_))), "{bad}");
        }
    }

    #[test]
    fn binomial_errors() {
        assert_eq!(binomial(0, 0), (None, None));
        let (p, se) = binomial(25, 100);
        assert_eq!(p, Some(0.25));
        assert!((se.unwrap() - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn report_counts() {
        let v = |detected| DetectorVerdict {
            detected,
            witness: Witness::Char1D { dr: 0.5, s: 1.0 },
            min_value: if detected { -1.0 } else { 1.0 },
            threshold: 1e-10,
        };
        let rows = vec![
            VerdictRow { index: 0, label: Label::PN, detector: DetectorId::Poisson, size: None, verdict: v(true) },
            VerdictRow { index: 1, label: Label::PN, detector: DetectorId::Poisson, size: None, verdict: v(false) },
            VerdictRow { index: 2, label: Label::PP, detector: DetectorId::Poisson, size: None, verdict: v(true) },
        ];
        let rep = CorpusReport::from_rows(BasisKind::Hermite1D, 3, &rows);
        assert_eq!((rep.total, rep.pp, rep.pn), (3, 1, 2));
        let s = rep.stats(DetectorId::Poisson, None).unwrap();
        assert_eq!((s.detected, s.missed, s.false_positives), (1, 1, 1));
        assert_eq!(s.false_positive_indices, vec![2]);
        assert_eq!(rep.false_positives(), 1);
    }
}
