//! End-to-end experiments: corpus generation, detector sweeps over a corpus,
//! aggregated reports, and CSV exports for contour and reconstruction plots.

mod commands;
mod config;
mod detect;

pub use commands::{
    cmd_contour, cmd_detect, cmd_generate, cmd_reconstruct, cmd_report, contour_grid, reconstruct_table,
    ContourGrid, DetectOutcome, GenerateOutcome, ReconstructionTable, CORPUS_FILE,
};
pub use config::{
    BochnerConfig, ExperimentConfig, PoissonConfig, ReconstructConfig, Thresholds, DEFAULT_N_1D,
    DEFAULT_N_RADIAL, RESOLVED_CONFIG_NAME,
};
pub use detect::{
    binomial, read_verdicts, run_detector, write_verdicts, CorpusReport, DetectorId, DetectorSpec,
    DetectorStats, VerdictFile, VerdictRow, VERDICT_HEADER,
};
