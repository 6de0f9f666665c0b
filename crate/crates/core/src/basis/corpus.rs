//! Seeded corpus sampling and the plain-text corpus format.
//!
//! Each candidate `i` owns a ChaCha8 stream seeded from `(master, i)`, so the
//! corpus is identical for any thread count. Candidates are drawn uniformly
//! on the unit sphere and kept when `ψ ≥ 0`.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{classify_with, psi_is_nonnegative, DEFAULT_LABEL_EPS, BasisKind, CoefficientVector, Label, LabeledFunction};
use crate::error::{Error, Result};

pub const CORPUS_FORMAT_VERSION: u32 = 1;

const BATCH: u64 = 1 << 14;

/// A labelled sample of non-negative test functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub kind: BasisKind,
    pub master_seed: u64,
    /// Candidates drawn (accepted or not) to reach `functions.len()`.
    pub candidates: u64,
    pub functions: Vec<LabeledFunction>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn count(&self, label: Label) -> usize {
        self.functions.iter().filter(|f| f.label == label).count()
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.candidates == 0 {
            0.0
        } else {
            self.len() as f64 / self.candidates as f64
        }
    }
}

/// SplitMix64 finalizer applied to `master` advanced by `index + 1` steps.
pub fn candidate_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn draw(kind: BasisKind, seed: u64) -> Option<CoefficientVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..kind.len()).map(|_| rng.sample(StandardNormal)).collect();
    let cv = CoefficientVector::normalized(kind, &raw).ok()?;
    psi_is_nonnegative(&cv).then_some(cv)
}

/// Draws candidates until `n` functions with `ψ ≥ 0` have been accepted.
pub fn sample_corpus(kind: BasisKind, n: usize, master_seed: u64) -> Corpus {
    sample_corpus_with(kind, n, master_seed, DEFAULT_LABEL_EPS)
}

/// As [`sample_corpus`], labelling with threshold `label_eps`.
pub fn sample_corpus_with(kind: BasisKind, n: usize, master_seed: u64, label_eps: f64) -> Corpus {
    let mut functions = Vec::with_capacity(n);
    let mut next = 0u64;
    let mut candidates = 0u64;
    while functions.len() < n {
        let start = next;
        let accepted: Vec<(u64, u64, CoefficientVector)> = (start..start + BATCH)
            .into_par_iter()
            .filter_map(|i| {
                let seed = candidate_seed(master_seed, i);
                draw(kind, seed).map(|cv| (i, seed, cv))
            })
            .collect();
        next += BATCH;
        candidates = next;
        for (i, seed, cv) in accepted {
            if functions.len() == n {
                break;
            }
            let label = classify_with(&cv, label_eps);
            functions.push(LabeledFunction { cv, label, seed });
            candidates = i + 1;
        }
    }
    if n == 0 {
        candidates = 0;
    }
    Corpus { kind, master_seed, candidates, functions }
}

/// Writes the corpus in the line format read by [`read_corpus`].
pub fn write_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let mut emit = || -> std::io::Result<()> {
        writeln!(
            w,
            "# fpos-corpus v{} kind={} seed={} candidates={}",
            CORPUS_FORMAT_VERSION, corpus.kind, corpus.master_seed, corpus.candidates
        )?;
        for f in &corpus.functions {
            write!(w, "{},{},{}", f.cv.kind(), f.seed, f.label)?;
            for c in f.cv.coeffs() {
                write!(w, ",{c:.16e}")?;
            }
            writeln!(w)?;
        }
        w.flush()
    };
    emit().map_err(|e| Error::io(path, e))
}

fn header_field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.split_whitespace()
        .find_map(|tok| tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')))
}

/// Reads a corpus file; errors carry the 1-based line number.
pub fn read_corpus(path: &Path) -> Result<Corpus> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = BufReader::new(file).lines();
    let bad = |line: usize, reason: String| Error::Corpus { line, reason };

    let header = match lines.next() {
        Some(h) => h.map_err(|e| Error::io(path, e))?,
        None => return Err(bad(1, "empty file".into())),
    };
    let version = header
        .strip_prefix("# fpos-corpus v")
        .and_then(|rest| rest.split_whitespace().next())
        .ok_or_else(|| bad(1, "missing `# fpos-corpus` header".into()))?;
    if version != CORPUS_FORMAT_VERSION.to_string() {
        return Err(bad(1, format!("unsupported format version {version}")));
    }
    let kind: BasisKind = header_field(&header, "kind")
        .ok_or_else(|| bad(1, "header lacks kind=".into()))?
        .parse()
        .map_err(|e: Error| bad(1, e.to_string()))?;
    let master_seed: u64 = header_field(&header, "seed")
        .ok_or_else(|| bad(1, "header lacks seed=".into()))?
        .parse()
        .map_err(|_| bad(1, "seed is not an unsigned integer".into()))?;
    let candidates: u64 = match header_field(&header, "candidates") {
        Some(c) => c.parse().map_err(|_| bad(1, "candidates is not an unsigned integer".into()))?,
        None => 0,
    };

    let mut functions = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 + kind.len() {
            return Err(bad(
                lineno,
                format!("expected {} fields, found {}", 3 + kind.len(), fields.len()),
            ));
        }
        let row_kind: BasisKind = fields[0].parse().map_err(|e: Error| bad(lineno, e.to_string()))?;
        if row_kind != kind {
            return Err(bad(lineno, format!("record kind {row_kind} differs from header kind {kind}")));
        }
        let seed: u64 = fields[1]
            .parse()
            .map_err(|_| bad(lineno, format!("bad seed `{}`", fields[1])))?;
        let label: Label = fields[2].parse().map_err(|e: Error| bad(lineno, e.to_string()))?;
        let coeffs = fields[3..]
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad(lineno, format!("bad coefficient `{s}`"))))
            .collect::<Result<Vec<f64>>>()?;
        let cv = CoefficientVector::new(kind, coeffs).map_err(|e| bad(lineno, e.to_string()))?;
        functions.push(LabeledFunction { cv, label, seed });
    }
    Ok(Corpus { kind, master_seed, candidates, functions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::classify;

    #[test]
    fn seeds_are_distinct_and_stable() {
        assert_eq!(candidate_seed(7, 0), candidate_seed(7, 0));
        assert_ne!(candidate_seed(7, 0), candidate_seed(7, 1));
        assert_ne!(candidate_seed(7, 0), candidate_seed(8, 0));
    }

    #[test]
    fn sampling_is_deterministic_and_labelled() {
        let a = sample_corpus(BasisKind::Hermite1D, 40, 11);
        let b = sample_corpus(BasisKind::Hermite1D, 40, 11);
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        assert!(a.candidates >= 40);
        for f in &a.functions {
            assert!(psi_is_nonnegative(&f.cv));
            assert_eq!(f.label, classify(&f.cv));
            assert_eq!(draw(BasisKind::Hermite1D, f.seed).as_ref(), Some(&f.cv));
        }
        // a prefix of a longer run
        let c = sample_corpus(BasisKind::Hermite1D, 60, 11);
        assert_eq!(&c.functions[..40], &a.functions[..]);
        assert!(sample_corpus(BasisKind::Hermite1D, 0, 1).is_empty());
    }

    #[test]
    fn round_trip_and_line_numbered_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        let corpus = sample_corpus(BasisKind::Hermite1D, 12, 3);
        write_corpus(&corpus, &path).unwrap();
        assert_eq!(read_corpus(&path).unwrap(), corpus);

        let text = fs::read_to_string(&path).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[4] = lines[4].replacen(",pp,", ",xx,", 1).replacen(",pn,", ",xx,", 1);
        fs::write(&path, lines.join("\n")).unwrap();
        match read_corpus(&path) {
            Err(Error::Corpus { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }

        fs::write(&path, "hello\n").unwrap();
        assert!(matches!(read_corpus(&path), Err(Error::Corpus { line: 1, .. })));
        fs::write(&path, "# fpos-corpus v1 kind=hermite1d seed=1\nhermite1d,1,pp,1.0,0.5,0,0,0\n").unwrap();
        assert!(matches!(read_corpus(&path), Err(Error::Corpus { line: 2, .. })));
    }
}
