use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fourier_positivity::basis::{named, read_corpus, BasisKind, CoefficientVector};
use fourier_positivity::harness::{
    cmd_contour, cmd_detect, cmd_generate, cmd_reconstruct, cmd_report, CorpusReport, DetectorSpec,
    ExperimentConfig,
};
use fourier_positivity::{Error, Result};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_FALSE_POSITIVE: u8 = 3;

/// Fourier-positivity detectors over randomized test-function corpora.
#[derive(Parser, Debug)]
#[command(name = "fpos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// TOML experiment config; missing keys take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Corpus size (overrides the config).
    #[arg(long)]
    n: Option<usize>,
    /// Basis: hermite1d or laguerre-radial.
    #[arg(long)]
    kind: Option<BasisKind>,
}

#[derive(Args, Debug, Clone)]
struct FunctionRef {
    /// One of gaussian, hermite-pp, hermite-pn, laguerre-pp, laguerre-pn.
    #[arg(long, conflicts_with_all = ["coeffs", "corpus"])]
    named: Option<String>,
    /// Comma-separated coefficients (normalized; needs --kind).
    #[arg(long, conflicts_with = "corpus", allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Corpus file; pick the function with --index.
    #[arg(long, requires = "index")]
    corpus: Option<PathBuf>,
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a labelled corpus.
    Generate {
        #[command(flatten)]
        common: Common,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a detector over a corpus file.
    Detect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        corpus: PathBuf,
        /// bochner, bochner:5,10 or poisson.
        #[arg(long)]
        detector: String,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the characteristic-function grid of one function.
    Contour {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        function: FunctionRef,
        /// Output CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Export finite-sum reconstructions of φ.
    Reconstruct {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        function: FunctionRef,
        /// Truncations K, comma-separated.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        /// Output CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute a report from a verdict file.
    Report {
        #[arg(long)]
        verdicts: PathBuf,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(common: &Common, out: Option<&Path>) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(n) = common.n {
        cfg.n = Some(n);
    }
    if let Some(k) = common.kind {
        cfg.kind = k;
    }
    if let Some(o) = out {
        cfg.out_dir = o.to_path_buf();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn resolve_function(f: &FunctionRef, kind: Option<BasisKind>) -> Result<CoefficientVector> {
    if let Some(name) = &f.named {
        return named::by_name(name);
    }
    if let Some(list) = &f.coeffs {
        let kind = kind.ok_or_else(|| Error::InvalidParameter("--coeffs needs --kind".into()))?;
        let raw = list
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParameter(format!("bad coefficient list `{list}`")))?;
        return CoefficientVector::normalized(kind, &raw);
    }
    if let (Some(path), Some(index)) = (&f.corpus, f.index) {
        let corpus = read_corpus(path)?;
        let len = corpus.len();
        return corpus
            .functions
            .into_iter()
            .nth(index)
            .map(|lf| lf.cv)
            .ok_or(Error::IndexOutOfRange { index, len });
    }
    Err(Error::InvalidParameter("give --named, --coeffs or --corpus with --index".into()))
}

fn print_report(report: &CorpusReport) {
    println!("functions: {} (pp {}, pn {})", report.total, report.pp, report.pn);
    for d in &report.detectors {
        let size = d.size.map(|n| format!(" size {n}")).unwrap_or_default();
        let rate = match (d.rate, d.stderr) {
            (Some(r), Some(e)) => format!("{:.2}% ± {:.2}%", 100.0 * r, 100.0 * e),
            _ => "n/a".into(),
        };
        println!(
            "{}{size}: detected {}/{} ({rate}), missed {}, false positives {}",
            d.detector.as_str(),
            d.detected,
            d.pn_total,
            d.missed,
            d.false_positives
        );
    }
}

enum Outcome {
    Ok,
    FalsePositive,
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Generate { common, out } => {
            let cfg = load_config(&common, out.as_deref())?;
            let g = cmd_generate(&cfg)?;
            let c = &g.corpus;
            println!(
                "wrote {} ({} functions from {} candidates): pp {}, pn {}",
                g.path.display(),
                c.len(),
                c.candidates,
                c.count(fourier_positivity::basis::Label::PP),
                c.count(fourier_positivity::basis::Label::PN)
            );
        }
        Command::Detect { common, corpus, detector, out } => {
            let cfg = load_config(&common, out.as_deref())?;
            let spec: DetectorSpec = detector.parse()?;
            let res = cmd_detect(&cfg, &corpus, &spec)?;
            print_report(&res.report);
            println!("verdicts: {}", res.verdict_path.display());
            println!("report: {}", res.report_path.display());
            if res.report.false_positives() > 0 {
                let corpus = read_corpus(&corpus)?;
                for row in res.rows.iter().filter(|r| r.label == fourier_positivity::basis::Label::PP && r.verdict.detected) {
                    let f = &corpus.functions[row.index];
                    eprintln!(
                        "false positive: index {} seed {} coeffs {:?} witness {:?} value {:e} threshold {:e}",
                        row.index,
                        f.seed,
                        f.cv.coeffs(),
                        row.verdict.witness,
                        row.verdict.min_value,
                        row.verdict.threshold
                    );
                }
                return Ok(Outcome::FalsePositive);
            }
        }
        Command::Contour { common, function, out } => {
            let cfg = load_config(&common, None)?;
            let cv = resolve_function(&function, common.kind)?;
            let grid = cmd_contour(&cfg, &cv, &out)?;
            println!("wrote {} ({} points), min F = {:e}", out.display(), grid.rows.len(), grid.min);
        }
        Command::Reconstruct { common, function, k, out } => {
            let cfg = load_config(&common, None)?;
            let cv = resolve_function(&function, common.kind)?;
            let table = cmd_reconstruct(&cfg, &cv, k.as_deref(), &out)?;
            println!("wrote {}", out.display());
            for ((k, r), (ok, err)) in table.ks.iter().zip(&table.rs).zip(table.window_ok.iter().zip(table.sup_errors())) {
                println!("K = {k}, r = {r}: sup error {err:e}{}", if *ok { "" } else { " (outside window)" });
            }
        }
        Command::Report { verdicts, out } => {
            let report = cmd_report(&verdicts)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, report.to_json()).map_err(|e| Error::Io { path: path.clone(), source: e })?;
                    print_report(&report);
                }
                None => println!("{}", report.to_json()),
            }
            if report.false_positives() > 0 {
                return Ok(Outcome::FalsePositive);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::FalsePositive) => ExitCode::from(EXIT_FALSE_POSITIVE),
        Err(e @ Error::UnknownDetector(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
