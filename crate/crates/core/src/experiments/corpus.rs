//! Seeded test-function corpora.

use rand::Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Family, FamilySpec};
use super::rng::stream;
use crate::analysis::{analyze, interior_translates, synthesize, CoefficientField};
use crate::error::{Error, Result};
use crate::grid::{haar_function, DyadicGrid, GridFunction};
use crate::norms::{b_quasinorm, SmoothnessIndex};
use crate::wavelet::SampledWavelet;

/// A test function with the coefficients used as its reference.
///
/// For coefficient-space families (`synthesized`) the coefficients are exact;
/// otherwise they come from [`analyze`].
#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub family: &'static str,
    pub instance: usize,
    pub function: GridFunction,
    pub coefficients: CoefficientField,
    pub synthesized: bool,
}

impl CorpusItem {
    pub fn label(&self) -> String {
        format!("{}:{}", self.family, self.instance)
    }
}

/// Everything a family needs besides its own parameters.
pub struct CorpusContext<'a> {
    pub sw: &'a SampledWavelet,
    pub grid: &'a DyadicGrid,
    pub j_max: u32,
    pub n_range: std::ops::RangeInclusive<u32>,
    pub reference: (f64, f64),
    pub seed: u64,
}

impl<'a> CorpusContext<'a> {
    pub fn from_config(cfg: &ExperimentConfig, sw: &'a SampledWavelet, grid: &'a DyadicGrid) -> Self {
        Self {
            sw,
            grid,
            j_max: cfg.j_max,
            n_range: cfg.n_range(),
            reference: (cfg.corpus.reference_p, cfg.corpus.reference_s),
            seed: cfg.seed,
        }
    }

    /// Levels `1..=j_max` with at least one translate inside the domain.
    fn interior_levels(&self) -> Result<Vec<(u32, i64, i64)>> {
        let mut out = Vec::new();
        for j in 1..=self.j_max {
            let r = interior_translates(j, self.sw, self.grid)?;
            if r.start() <= r.end() {
                out.push((j, *r.start(), *r.end()));
            }
        }
        if out.is_empty() {
            return Err(Error::Config("domain too short for any interior wavelet".into()));
        }
        Ok(out)
    }

    fn random_field(&self, rng: &mut impl Rng, weight: impl Fn(u32) -> f64) -> Result<CoefficientField> {
        let mut c = CoefficientField::new(self.sw.order(), self.j_max);
        for (j, lo, hi) in self.interior_levels()? {
            let w = weight(j);
            for nu in lo..=hi {
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                c.insert(j, nu, sign * w)?;
            }
        }
        Ok(c)
    }

    fn item_from_field(&self, family: &'static str, instance: usize, c: CoefficientField) -> Result<CorpusItem> {
        Ok(CorpusItem {
            family,
            instance,
            function: synthesize(&c, self.sw, self.grid)?,
            coefficients: c,
            synthesized: true,
        })
    }

    fn item_from_function(&self, family: &'static str, instance: usize, f: GridFunction) -> Result<CorpusItem> {
        Ok(CorpusItem {
            family,
            instance,
            coefficients: analyze(&f, self.sw, self.j_max)?,
            function: f,
            synthesized: false,
        })
    }

    /// Instance `instance` of `family`.
    pub fn make(&self, family: &Family, instance: usize) -> Result<CorpusItem> {
        let name = family.name();
        let mut rng = stream(self.seed, name, instance as u64);
        let (x0, x1) = (self.grid.x0(), self.grid.x1());
        let len = x1 - x0;
        match *family {
            Family::SingleWavelet { j, nu } => {
                let levels = self.interior_levels()?;
                let (j, lo, hi) = match j {
                    Some(j) => *levels
                        .iter()
                        .find(|l| l.0 == j)
                        .ok_or_else(|| Error::Range(format!("no interior translate at level {j}")))?,
                    None => levels[instance % levels.len()],
                };
                let nu = match nu {
                    Some(nu) if (lo..=hi).contains(&nu) => nu,
                    Some(nu) => return Err(Error::Range(format!("ψ_({j},{nu}) leaves the domain"))),
                    None => rng.gen_range(lo..=hi),
                };
                let c = CoefficientField::single(self.sw.order(), self.j_max, j, nu, 1.0)?;
                self.item_from_field(name, instance, c)
            }
            Family::SingleHaar { n, mu } => {
                let n = n.unwrap_or_else(|| {
                    let lo = *self.n_range.start();
                    let span = self.n_range.end() - lo + 1;
                    lo + instance as u32 % span
                });
                let gens = self.grid.generation_indices(n)?;
                let mu = mu.unwrap_or_else(|| rng.gen_range(gens.clone()));
                self.item_from_function(name, instance, haar_function(n, mu, self.grid)?)
            }
            Family::SmoothBump => {
                let center = x0 + len * rng.gen_range(0.3..0.7);
                let radius = len * rng.gen_range(0.08..0.25);
                let f = GridFunction::from_fn(*self.grid, |x| {
                    let t = (x - center) / radius;
                    if t.abs() < 1.0 {
                        (1.0 - 1.0 / (1.0 - t * t)).exp()
                    } else {
                        0.0
                    }
                })?;
                self.item_from_function(name, instance, f)
            }
            Family::Jump => {
                let a = x0 + len * rng.gen_range(0.1..0.4);
                let b = x0 + len * rng.gen_range(0.6..0.9);
                let f = GridFunction::from_fn(*self.grid, |x| if a <= x && x < b { 1.0 } else { 0.0 })?;
                self.item_from_function(name, instance, f)
            }
            Family::RandomMultilevel { sigma } => {
                let (p, s) = self.reference;
                let sigma = sigma.unwrap_or(s + 1.0 / p);
                let c = self.random_field(&mut rng, |j| 2f64.powf(j as f64 * (1.0 / p - sigma)))?;
                let norm = b_quasinorm(&c, &SmoothnessIndex::new(p, f64::INFINITY, s, f64::INFINITY)?)?;
                self.item_from_field(name, instance, c.scale(1.0 / norm))
            }
            Family::RandomSignsFlat => {
                let c = self.random_field(&mut rng, |_| 1.0)?;
                self.item_from_field(name, instance, c)
            }
        }
    }
}

/// All instances of all families, in configuration order. Instance numbers run on
/// across repeated entries of the same family.
pub fn make_corpus(specs: &[FamilySpec], ctx: &CorpusContext) -> Result<Vec<CorpusItem>> {
    let mut next = std::collections::HashMap::new();
    let mut jobs: Vec<(&Family, usize)> = Vec::new();
    for s in specs {
        let first = next.entry(s.family.name()).or_insert(0usize);
        jobs.extend((*first..*first + s.count).map(|i| (&s.family, i)));
        *first += s.count;
    }
    jobs.par_iter().map(|(f, i)| ctx.make(f, *i)).collect()
}
