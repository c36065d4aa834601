//! Ratio sweeps: operator norms of `E_N`, `P_N`, `E_N - P_N`, `T_N[·, a]`
//! and martingale transforms, measured on a corpus.

use rand::Rng;
use rayon::prelude::*;

use super::config::{HaarFamily, LevelFamily};
use super::corpus::CorpusItem;
use super::rng::stream;
use crate::analysis::{analyze, CoefficientField};
use crate::error::Result;
use crate::grid::{
    conditional_expectation, haar_multiplier, martingale_difference, martingale_transform, seq_norms,
    MultiplierSeq,
};
use crate::norms::{
    b_quasinorm, b_quasinorm_r, boundary_distance, f_quasinorm, region_theorem, region_unconditional,
    SmoothnessIndex,
};
use crate::wavelet::SampledWavelet;

/// One measured ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub experiment: String,
    pub family: String,
    pub index: SmoothnessIndex,
    pub n: u32,
    pub num: f64,
    pub den: f64,
    pub ratio: f64,
    pub in_theorem: bool,
    pub in_uncond: bool,
    pub bdist: f64,
    /// `(‖b‖_∞, ‖b‖_BV)` of the multiplier, for transform sweeps.
    pub multiplier_norms: Option<(f64, f64)>,
}

impl RatioRow {
    /// Family name without the instance suffix.
    pub fn family_name(&self) -> &str {
        self.family.split(':').next().unwrap_or(&self.family)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
    /// Rows that could not be formed, with the reason.
    pub skipped: Vec<String>,
}

impl RatioReport {
    pub fn extend(&mut self, other: RatioReport) {
        self.rows.extend(other.rows);
        self.skipped.extend(other.skipped);
    }

    /// Sorts by experiment, index, `N`, then family.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.experiment
                .cmp(&b.experiment)
                .then(a.index.p.total_cmp(&b.index.p))
                .then(a.index.q.total_cmp(&b.index.q))
                .then(a.index.s.total_cmp(&b.index.s))
                .then(a.index.r.total_cmp(&b.index.r))
                .then(a.n.cmp(&b.n))
                .then(a.family.cmp(&b.family))
        });
        self.skipped.sort();
    }
}

/// Which quasi-norm measures a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    /// `F^s_{p,q}`
    Triebel,
    /// `B^s_{p,r}`
    BesovR,
    /// `B^s_{p,∞}`
    BesovInf,
}

impl Measure {
    pub fn eval(self, c: &CoefficientField, idx: &SmoothnessIndex) -> Result<f64> {
        match self {
            Measure::Triebel => f_quasinorm(c, idx),
            Measure::BesovR => b_quasinorm_r(c, idx),
            Measure::BesovInf => b_quasinorm(c, &idx.with_q(f64::INFINITY)),
        }
    }
}

/// Shared sweep parameters.
pub struct SweepSetup<'a> {
    pub sw: &'a SampledWavelet,
    pub j_max: u32,
    pub indices: &'a [SmoothnessIndex],
    pub n_range: std::ops::RangeInclusive<u32>,
    pub seed: u64,
}

struct Job<'a> {
    item: &'a CorpusItem,
    label: String,
    n: u32,
    b: Option<MultiplierSeq>,
    norms: Option<(f64, f64)>,
}

/// Evaluates `op` on every (item, N), then both measures for every index.
fn run<'a, F>(
    setup: &SweepSetup,
    experiment: &str,
    jobs: Vec<Job<'a>>,
    num_measure: Measure,
    den_measure: Measure,
    op: F,
) -> Result<RatioReport>
where
    F: Fn(&Job) -> Result<CoefficientField> + Sync,
{
    let parts: Vec<Result<RatioReport>> = jobs
        .par_iter()
        .map(|job| {
            let c = op(job)?;
            let mut part = RatioReport::default();
            for idx in setup.indices {
                let den = den_measure.eval(&job.item.coefficients, idx)?;
                if den <= 0.0 || !den.is_finite() {
                    part.skipped.push(format!(
                        "{experiment} {} N={} {:?}: denominator {den}",
                        job.label, job.n, idx
                    ));
                    continue;
                }
                let num = num_measure.eval(&c, idx)?;
                part.rows.push(RatioRow {
                    experiment: experiment.to_string(),
                    family: job.label.clone(),
                    index: *idx,
                    n: job.n,
                    num,
                    den,
                    ratio: num / den,
                    in_theorem: region_theorem(idx),
                    in_uncond: region_unconditional(idx),
                    bdist: boundary_distance(idx),
                    multiplier_norms: job.norms,
                });
            }
            Ok(part)
        })
        .collect();
    let mut report = RatioReport::default();
    for p in parts {
        report.extend(p?);
    }
    report.sort();
    Ok(report)
}

fn plain_jobs<'a>(corpus: &'a [CorpusItem], n_range: &std::ops::RangeInclusive<u32>) -> Vec<Job<'a>> {
    corpus
        .iter()
        .flat_map(|item| {
            n_range.clone().map(move |n| Job {
                item,
                label: item.label(),
                n,
                b: None,
                norms: None,
            })
        })
        .collect()
}

/// `‖E_N f‖_F / ‖f‖_F`.
pub fn uniform_bound_sweep(setup: &SweepSetup, corpus: &[CorpusItem]) -> Result<RatioReport> {
    run(setup, "en", plain_jobs(corpus, &setup.n_range), Measure::Triebel, Measure::Triebel, |job| {
        analyze(&conditional_expectation(&job.item.function, job.n)?, setup.sw, setup.j_max)
    })
}

/// `‖P_N f‖_F / ‖f‖_F`, with `P_N` applied in coefficient space.
pub fn pn_bound_sweep(setup: &SweepSetup, corpus: &[CorpusItem]) -> Result<RatioReport> {
    run(setup, "pn", plain_jobs(corpus, &setup.n_range), Measure::Triebel, Measure::Triebel, |job| {
        Ok(job.item.coefficients.truncated(job.n))
    })
}

/// `‖E_N f - P_N f‖_{B^s_{p,r}} / ‖f‖_{B^s_{p,∞}}`.
pub fn en_minus_pn_sweep(setup: &SweepSetup, corpus: &[CorpusItem]) -> Result<RatioReport> {
    run(setup, "enpn", plain_jobs(corpus, &setup.n_range), Measure::BesovR, Measure::BesovInf, |job| {
        let e = analyze(&conditional_expectation(&job.item.function, job.n)?, setup.sw, setup.j_max)?;
        Ok(e.combine(1.0, &job.item.coefficients.truncated(job.n), -1.0))
    })
}

/// The sequence `a` over the generation-`n` intervals of the item's domain.
pub fn haar_sequence(family: HaarFamily, item: &CorpusItem, n: u32, seed: u64) -> Result<MultiplierSeq> {
    let range = item.function.grid().generation_indices(n)?;
    let len = (range.end - range.start) as usize;
    let entries = match family {
        HaarFamily::Ones => vec![1.0; len],
        HaarFamily::Zeros => vec![0.0; len],
        HaarFamily::RandomSigns => {
            let mut rng = stream(seed, &format!("a/{}", item.label()), n as u64);
            (0..len).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect()
        }
        HaarFamily::SingleSpike => {
            let mut v = vec![0.0; len];
            v[len / 2] = 1.0;
            v
        }
    };
    MultiplierSeq::new(range.start, entries)
}

pub fn haar_family_name(family: HaarFamily) -> &'static str {
    match family {
        HaarFamily::Ones => "ones",
        HaarFamily::Zeros => "zeros",
        HaarFamily::RandomSigns => "random_signs",
        HaarFamily::SingleSpike => "single_spike",
    }
}

/// `‖T_N[f, a]‖_{B^s_{p,r}} / ‖f‖_{B^s_{p,∞}}`.
pub fn tn_bound_sweep(setup: &SweepSetup, corpus: &[CorpusItem], family: HaarFamily) -> Result<RatioReport> {
    let id = format!("tn/{}", haar_family_name(family));
    run(setup, &id, plain_jobs(corpus, &setup.n_range), Measure::BesovR, Measure::BesovInf, |job| {
        let a = haar_sequence(family, job.item, job.n, setup.seed)?;
        analyze(&haar_multiplier(&job.item.function, job.n, &a)?, setup.sw, setup.j_max)
    })
}

/// `‖D_N f‖_{B^s_{p,r}} / ‖f‖_{B^s_{p,∞}}`, the reference for `T_N[f, 1]`.
pub fn dn_sweep(setup: &SweepSetup, corpus: &[CorpusItem]) -> Result<RatioReport> {
    run(setup, "dn", plain_jobs(corpus, &setup.n_range), Measure::BesovR, Measure::BesovInf, |job| {
        analyze(&martingale_difference(&job.item.function, job.n)?, setup.sw, setup.j_max)
    })
}

/// `b_0, …, b_{len-1}` for draw `draw` of `family`.
pub fn level_sequence(family: LevelFamily, len: usize, seed: u64, draw: usize) -> MultiplierSeq {
    let entries = match family {
        LevelFamily::Ones => vec![1.0; len],
        LevelFamily::RandomSigns => {
            let mut rng = stream(seed, "b/random_signs", draw as u64);
            (0..len).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect()
        }
        LevelFamily::BvBounded => {
            let last = len.saturating_sub(1).max(1) as f64;
            (0..len).map(|n| 1.0 - n as f64 / last).collect()
        }
        LevelFamily::Alternating => (0..len).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect(),
    };
    MultiplierSeq::from_levels(entries).expect("finite entries")
}

pub fn level_family_name(family: LevelFamily) -> &'static str {
    match family {
        LevelFamily::Ones => "ones",
        LevelFamily::RandomSigns => "random_signs",
        LevelFamily::BvBounded => "bv_bounded",
        LevelFamily::Alternating => "alternating",
    }
}

/// `‖E_0 f + Σ_{n<N} b_n D_n f‖_F / ‖f‖_F` for `draws` independent `b`
/// (one draw for deterministic families). Every `N` uses a prefix of one
/// sequence of length `n_max`, so `N` counts the active levels; the rows carry
/// the norms of the whole sequence.
pub fn multiplier_sweep(
    setup: &SweepSetup,
    corpus: &[CorpusItem],
    family: LevelFamily,
    draws: usize,
    experiment: &str,
) -> Result<RatioReport> {
    let draws = if family == LevelFamily::RandomSigns { draws } else { 1 };
    let len = *setup.n_range.end() as usize;
    let seqs: Vec<MultiplierSeq> = (0..draws).map(|d| level_sequence(family, len, setup.seed, d)).collect();
    let mut jobs = Vec::new();
    for item in corpus {
        for (d, b) in seqs.iter().enumerate() {
            for n in setup.n_range.clone() {
                let prefix = MultiplierSeq::from_levels(b.entries()[..n as usize].to_vec())?;
                let label = if draws > 1 {
                    format!("{}#{d:02}", item.label())
                } else {
                    item.label()
                };
                jobs.push(Job {
                    item,
                    label,
                    n,
                    b: Some(prefix),
                    norms: Some(seq_norms(b)),
                });
            }
        }
    }
    run(setup, experiment, jobs, Measure::Triebel, Measure::Triebel, |job| {
        let b = job.b.as_ref().expect("transform jobs carry b");
        analyze(&martingale_transform(&job.item.function, b, job.n)?, setup.sw, setup.j_max)
    })
}
