//! Config-driven runs of the sweeps.

use std::path::Path;

use super::config::ExperimentConfig;
use super::corpus::{make_corpus, CorpusContext, CorpusItem};
use super::report::{summarize, write_csv, Summary};
use super::sweeps::{self, RatioReport, SweepSetup};
use crate::error::Result;
use crate::grid::DyadicGrid;
use crate::wavelet::SampledWavelet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SweepKind {
    En,
    Pn,
    EnPn,
    Tn,
    Mult,
}

impl SweepKind {
    pub const ALL: [SweepKind; 5] = [Self::En, Self::Pn, Self::EnPn, Self::Tn, Self::Mult];

    pub fn name(self) -> &'static str {
        match self {
            Self::En => "en",
            Self::Pn => "pn",
            Self::EnPn => "enpn",
            Self::Tn => "tn",
            Self::Mult => "mult",
        }
    }
}

/// A validated configuration with its wavelet system and grid.
pub struct Harness {
    pub config: ExperimentConfig,
    pub wavelet: SampledWavelet,
    pub grid: DyadicGrid,
}

impl Harness {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            wavelet: config.wavelet()?,
            grid: config.grid()?,
            config,
        })
    }

    pub fn corpus(&self) -> Result<Vec<CorpusItem>> {
        make_corpus(&self.config.corpus.families, &self.context())
    }

    pub fn context(&self) -> CorpusContext<'_> {
        CorpusContext::from_config(&self.config, &self.wavelet, &self.grid)
    }

    pub fn sweep(&self, kind: SweepKind, corpus: &[CorpusItem]) -> Result<RatioReport> {
        let cfg = &self.config;
        let indices = cfg.all_indices();
        let setup = SweepSetup {
            sw: &self.wavelet,
            j_max: cfg.j_max,
            indices: &indices,
            n_range: cfg.n_range(),
            seed: cfg.seed,
        };
        let mut report = RatioReport::default();
        match kind {
            SweepKind::En => report.extend(sweeps::uniform_bound_sweep(&setup, corpus)?),
            SweepKind::Pn => report.extend(sweeps::pn_bound_sweep(&setup, corpus)?),
            SweepKind::EnPn => {
                let mut all = indices.clone();
                all.extend(cfg.growth_indices.iter().copied());
                let setup = SweepSetup { indices: &all, ..setup };
                report.extend(sweeps::en_minus_pn_sweep(&setup, corpus)?);
            }
            SweepKind::Tn => {
                for &a in &cfg.haar_families {
                    report.extend(sweeps::tn_bound_sweep(&setup, corpus, a)?);
                }
            }
            SweepKind::Mult => {
                for &b in &cfg.level_families {
                    let id = format!("mult/{}", sweeps::level_family_name(b));
                    report.extend(sweeps::multiplier_sweep(&setup, corpus, b, cfg.multiplier_seeds, &id)?);
                }
                if let Some(probe) = &cfg.growth_probe {
                    let probe_corpus = make_corpus(&probe.families, &self.context())?;
                    let idx = [probe.index];
                    let setup = SweepSetup { indices: &idx, ..setup };
                    report.extend(sweeps::multiplier_sweep(
                        &setup,
                        &probe_corpus,
                        super::config::LevelFamily::RandomSigns,
                        probe.seeds,
                        "growth",
                    )?);
                }
            }
        }
        report.sort();
        Ok(report)
    }

    pub fn summarize(&self, report: &RatioReport) -> Summary {
        summarize(report, &self.config.growth_indices)
    }

    /// Writes `<stem>.csv` and `<stem>.summary.json` into `dir`.
    pub fn write(&self, dir: &Path, stem: &str, report: &RatioReport) -> Result<Summary> {
        std::fs::create_dir_all(dir)?;
        let file = std::fs::File::create(dir.join(format!("{stem}.csv")))?;
        write_csv(report, std::io::BufWriter::new(file))?;
        let summary = self.summarize(report);
        std::fs::write(dir.join(format!("{stem}.summary.json")), summary.to_json()?)?;
        Ok(summary)
    }
}
