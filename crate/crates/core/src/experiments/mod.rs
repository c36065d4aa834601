//! Sweep harness: corpora, ratio sweeps, growth fits and reports.

pub mod config;
pub mod corpus;
pub mod fit;
pub mod pipeline;
pub mod report;
pub mod rng;
pub mod sweeps;

pub use config::{ExperimentConfig, Family, FamilySpec, HaarFamily, LevelFamily};
pub use corpus::{make_corpus, CorpusContext, CorpusItem};
pub use fit::{fit_growth_exponent, spearman};
pub use pipeline::{Harness, SweepKind};
pub use report::{read_csv, summarize, write_csv, Summary};
pub use sweeps::{
    dn_sweep, en_minus_pn_sweep, multiplier_sweep, pn_bound_sweep, tn_bound_sweep, uniform_bound_sweep,
    RatioReport, RatioRow, SweepSetup,
};
