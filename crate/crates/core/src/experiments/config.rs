//! Experiment configuration, loaded from JSON.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::DyadicGrid;
use crate::norms::SmoothnessIndex;
use crate::wavelet::{SampledWavelet, MAX_DEPTH, MAX_ORDER};

/// One corpus family with its instance count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default = "one")]
    pub count: usize,
}

fn one() -> usize {
    1
}

/// Test-function families. Unset parameters are drawn from the seeded stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    SingleWavelet {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nu: Option<i64>,
    },
    SingleHaar {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mu: Option<i64>,
    },
    SmoothBump,
    Jump,
    RandomMultilevel {
        /// Decay exponent; defaults to `s + 1/p` of the corpus reference index,
        /// which makes every level contribute equally to the `B^s_{p,∞}` norm.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<f64>,
    },
    RandomSignsFlat,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::SingleWavelet { .. } => "single_wavelet",
            Family::SingleHaar { .. } => "single_haar",
            Family::SmoothBump => "smooth_bump",
            Family::Jump => "jump",
            Family::RandomMultilevel { .. } => "random_multilevel",
            Family::RandomSignsFlat => "random_signs_flat",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// `(p, s)` used to normalize `random_multilevel` in `B^s_{p,∞}`.
    pub reference_p: f64,
    pub reference_s: f64,
    pub families: Vec<FamilySpec>,
}

/// Sequences `a` fed to `T_N[f, a]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaarFamily {
    Ones,
    Zeros,
    RandomSigns,
    SingleSpike,
}

/// Level multipliers `b` for `E_0 + Σ b_n D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelFamily {
    Ones,
    RandomSigns,
    /// Monotone ramp from 0 to 1: `‖b‖_∞ = ‖b‖_BV = 1`.
    BvBounded,
    Alternating,
}

/// Growth probe for the martingale-transform sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthProbe {
    pub index: SmoothnessIndex,
    pub seeds: usize,
    pub families: Vec<FamilySpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub order: usize,
    /// Grid resolution `J`.
    pub level: u32,
    pub j_max: u32,
    pub domain: (f64, f64),
    /// `(p, q, s, r)` indices swept by every experiment.
    pub indices: Vec<SmoothnessIndex>,
    /// `(p, q)` pairs for which `s` is placed at the boundary offsets below.
    #[serde(default)]
    pub boundary_pairs: Vec<(f64, f64)>,
    #[serde(default = "default_offsets")]
    pub boundary_offsets: Vec<f64>,
    /// Indices expected to grow in the `E_N - P_N` sweep.
    #[serde(default)]
    pub growth_indices: Vec<SmoothnessIndex>,
    pub n_min: u32,
    pub n_max: u32,
    pub corpus: CorpusSpec,
    pub seed: u64,
    #[serde(default = "default_haar_families")]
    pub haar_families: Vec<HaarFamily>,
    #[serde(default = "default_level_families")]
    pub level_families: Vec<LevelFamily>,
    /// Independent draws for each random multiplier family.
    #[serde(default = "default_multiplier_seeds")]
    pub multiplier_seeds: usize,
    #[serde(default)]
    pub growth_probe: Option<GrowthProbe>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_offsets() -> Vec<f64> {
    vec![-0.3, -0.1, -0.03, 0.03, 0.1, 0.3]
}

fn default_haar_families() -> Vec<HaarFamily> {
    vec![HaarFamily::Ones, HaarFamily::RandomSigns, HaarFamily::SingleSpike]
}

fn default_level_families() -> Vec<LevelFamily> {
    vec![
        LevelFamily::Ones,
        LevelFamily::RandomSigns,
        LevelFamily::BvBounded,
        LevelFamily::Alternating,
    ]
}

fn default_multiplier_seeds() -> usize {
    8
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

fn idx(p: f64, q: f64, s: f64, r: f64) -> SmoothnessIndex {
    SmoothnessIndex { p, q, s, r }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let families = vec![
            Family::SingleWavelet { j: None, nu: None },
            Family::SingleHaar { n: None, mu: None },
            Family::SmoothBump,
            Family::Jump,
            Family::RandomMultilevel { sigma: None },
            Family::RandomSignsFlat,
        ]
        .into_iter()
        .map(|family| FamilySpec { family, count: 8 })
        .collect();
        Self {
            order: 4,
            level: 14,
            j_max: 10,
            domain: (0.0, 1.0),
            indices: vec![
                idx(1.0, 2.0, 0.5, 2.0),
                idx(2.0, 2.0, 0.25, 2.0),
                idx(1.5, 1.0, 0.1, 1.0),
                idx(0.8, 2.0, 0.5, 1.0),
                idx(4.0, 4.0, -0.3, 4.0),
                idx(1.0, 4.0, 0.9, 4.0),
            ],
            boundary_pairs: vec![(1.0, 2.0)],
            boundary_offsets: default_offsets(),
            growth_indices: vec![idx(0.55, 1.0, 1.0 / 0.55 + 0.3, 1.0)],
            n_min: 1,
            n_max: 9,
            corpus: CorpusSpec {
                reference_p: 1.0,
                reference_s: 0.5,
                families,
            },
            seed: 0x5eed_0001,
            haar_families: default_haar_families(),
            level_families: default_level_families(),
            multiplier_seeds: default_multiplier_seeds(),
            growth_probe: Some(GrowthProbe {
                index: idx(1.0, 4.0, 0.9, 4.0),
                seeds: 32,
                families: vec![FamilySpec {
                    family: Family::SmoothBump,
                    count: 1,
                }],
            }),
            out: default_out(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Self = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.order == 0 || self.order > MAX_ORDER {
            return bad(format!("order {} outside 1..={MAX_ORDER}", self.order));
        }
        if self.level + 1 > MAX_DEPTH {
            return bad(format!("resolution {} too fine", self.level));
        }
        if self.j_max + crate::analysis::DEFAULT_MARGIN > self.level {
            return bad(format!("j_max {} leaves no margin at J = {}", self.j_max, self.level));
        }
        if self.n_min > self.n_max || self.n_max + 1 > self.level {
            return bad(format!("N range {}..={} invalid", self.n_min, self.n_max));
        }
        self.grid()?;
        for i in self.all_indices().iter().chain(&self.growth_indices) {
            i.validate()?;
        }
        if self.corpus.families.is_empty() {
            return bad("empty corpus".into());
        }
        SmoothnessIndex::new(self.corpus.reference_p, 1.0, self.corpus.reference_s, 1.0)?;
        Ok(())
    }

    pub fn grid(&self) -> Result<DyadicGrid> {
        DyadicGrid::from_endpoints(self.level, self.domain.0, self.domain.1)
    }

    pub fn wavelet(&self) -> Result<SampledWavelet> {
        crate::wavelet::daubechies_system(self.order, self.level + 1)
    }

    pub fn n_range(&self) -> std::ops::RangeInclusive<u32> {
        self.n_min..=self.n_max
    }

    /// The configured indices followed by the boundary study points.
    pub fn all_indices(&self) -> Vec<SmoothnessIndex> {
        let mut out = self.indices.clone();
        for &(p, q) in &self.boundary_pairs {
            for &d in &self.boundary_offsets {
                out.push(boundary_point(p, q, d));
            }
        }
        out
    }
}

/// `s = min(1/p, 1) - d`: inside the theorem region at distance `d` from the
/// upper edge for small `d > 0`, outside for `d < 0`.
pub fn boundary_point(p: f64, q: f64, d: f64) -> SmoothnessIndex {
    let ip = if p.is_infinite() { 0.0 } else { 1.0 / p };
    let upper = ip.min(1.0);
    SmoothnessIndex { p, q, s: upper - d, r: q }
}
