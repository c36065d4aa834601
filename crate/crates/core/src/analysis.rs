//! Wavelet analysis and synthesis on dyadic grids.
//!
//! Level `j = 0` is the scaling layer `ψ_{0,ν}(x) = ψ₀(x - ν)`; for `j ≥ 1`,
//! `ψ_{j,ν}(x) = 2^{-1/2} ψ(2^{j-1}x - ν)`. Coefficients carry the weight
//! `λ_{j,ν}(f) = 2^j <f, ψ_{j,ν}>`, so that `‖ψ_{j,ν}‖₂² = 2^{-j}` and
//! `f = Σ_j Σ_ν λ_{j,ν} ψ_{j,ν}`.
//!
//! Inner products are Riemann sums over the grid cells, with the wavelet
//! sampled at each cell's left endpoint.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{DyadicGrid, GridFunction};
use crate::wavelet::SampledWavelet;

/// Default gap between the grid resolution and the finest analysis level.
pub const DEFAULT_MARGIN: u32 = 4;

/// Coefficients `λ_{j,ν}` for levels `0..=j_max`, each level a sparse map `ν → λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientField {
    order: usize,
    levels: Vec<BTreeMap<i64, f64>>,
}

impl CoefficientField {
    /// Empty field for a wavelet system of the given order.
    pub fn new(order: usize, j_max: u32) -> Self {
        Self {
            order,
            levels: vec![BTreeMap::new(); j_max as usize + 1],
        }
    }

    /// Field with the single coefficient `λ_{j,ν} = value`.
    pub fn single(order: usize, j_max: u32, j: u32, nu: i64, value: f64) -> Result<Self> {
        let mut c = Self::new(order, j_max);
        c.insert(j, nu, value)?;
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn j_max(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn level(&self, j: u32) -> Option<&BTreeMap<i64, f64>> {
        self.levels.get(j as usize)
    }

    pub fn get(&self, j: u32, nu: i64) -> f64 {
        self.level(j).and_then(|l| l.get(&nu)).copied().unwrap_or(0.0)
    }

    pub fn insert(&mut self, j: u32, nu: i64, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::InvalidValue(format!("non-finite coefficient at ({j},{nu})")));
        }
        let j_max = self.j_max();
        let level = self
            .levels
            .get_mut(j as usize)
            .ok_or_else(|| Error::Index(format!("level {j} above j_max {j_max}")))?;
        level.insert(nu, value);
        Ok(())
    }

    /// All `(j, ν, λ)` in level-then-position order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i64, f64)> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(j, l)| l.iter().map(move |(&nu, &v)| (j as u32, nu, v)))
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Finest level holding a nonzero coefficient.
    pub fn top_level(&self) -> Option<u32> {
        (0..self.levels.len())
            .rev()
            .find(|&j| self.levels[j].values().any(|&v| v != 0.0))
            .map(|j| j as u32)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            order: self.order,
            levels: self
                .levels
                .iter()
                .map(|l| l.iter().map(|(&k, &v)| (k, alpha * v)).collect())
                .collect(),
        }
    }

    /// `alpha·self + beta·other` on the union of supports.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        let depth = self.levels.len().max(other.levels.len());
        let mut out = Self::new(self.order, depth as u32 - 1);
        for (j, level) in out.levels.iter_mut().enumerate() {
            if let Some(a) = self.levels.get(j) {
                for (&nu, &v) in a {
                    *level.entry(nu).or_insert(0.0) += alpha * v;
                }
            }
            if let Some(b) = other.levels.get(j) {
                for (&nu, &v) in b {
                    *level.entry(nu).or_insert(0.0) += beta * v;
                }
            }
        }
        out
    }

    /// Copy keeping only the levels `j ≤ n`; the level count is unchanged.
    pub fn truncated(&self, n: u32) -> Self {
        Self {
            order: self.order,
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(j, l)| if j as u32 <= n { l.clone() } else { BTreeMap::new() })
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.combine(1.0, other, -1.0)
            .iter()
            .fold(0.0, |m: f64, (_, _, v)| m.max(v.abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m: f64, (_, _, v)| m.max(v.abs()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_serde())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_serde(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    fn to_serde(&self) -> SerdeField {
        SerdeField {
            order: self.order,
            j_max: self.j_max(),
            levels: self
                .levels
                .iter()
                .map(|l| l.iter().map(|(&nu, &v)| (nu, v)).collect())
                .collect(),
        }
    }

    fn from_serde(s: SerdeField) -> Result<Self> {
        if s.levels.len() != s.j_max as usize + 1 {
            return Err(Error::InvalidValue(format!(
                "j_max {} but {} levels",
                s.j_max,
                s.levels.len()
            )));
        }
        let mut out = Self::new(s.order, s.j_max);
        for (j, level) in s.levels.into_iter().enumerate() {
            for (nu, v) in level {
                out.insert(j as u32, nu, v)?;
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct SerdeField {
    order: usize,
    j_max: u32,
    levels: Vec<Vec<(i64, f64)>>,
}

/// Geometry of level `j` translates on a particular grid.
#[derive(Clone, Copy, Debug)]
struct LevelGeometry {
    amplitude: f64,
    /// Sample-index stride per grid cell.
    stride: i64,
    /// Cells per unit translate, `2^{J - dilation}`.
    cells_per_shift: i64,
    /// Samples per unit translate, `2^m`.
    samples_per_shift: i64,
    scaling: bool,
}

impl LevelGeometry {
    fn new(j: u32, sw: &SampledWavelet, grid: &DyadicGrid) -> Result<Self> {
        let big_j = grid.level();
        if j > big_j {
            return Err(Error::Resolution(format!(
                "level {j} is finer than the grid resolution {big_j}"
            )));
        }
        if sw.depth() + j < big_j + 1 {
            return Err(Error::Resolution(format!(
                "level {j} on a 2^-{big_j} grid needs sampling depth {}, have {}",
                big_j + 1 - j,
                sw.depth()
            )));
        }
        let dilation = j.saturating_sub(1);
        Ok(Self {
            amplitude: if j == 0 { 1.0 } else { FRAC_1_SQRT_2 },
            stride: 1i64 << (dilation + sw.depth() - big_j),
            cells_per_shift: 1i64 << (big_j - dilation),
            samples_per_shift: 1i64 << sw.depth(),
            scaling: j == 0,
        })
    }

    fn shape<'a>(&self, sw: &'a SampledWavelet) -> &'a [f64] {
        if self.scaling {
            sw.phi_samples()
        } else {
            sw.psi_samples()
        }
    }

    /// Translates whose support `[ν, ν + W]·2^{-dilation}` meets the open domain.
    fn translates(&self, width: i64, grid: &DyadicGrid) -> RangeInclusive<i64> {
        let start = grid.start();
        let end = start + grid.cells() as i64;
        let lo = start.div_euclid(self.cells_per_shift) - width + 1;
        let hi = -((-end).div_euclid(self.cells_per_shift)) - 1;
        lo..=hi
    }

    /// Cells touched by translate `ν`, with the sample index of the first one.
    fn cells(&self, nu: i64, width: i64, grid: &DyadicGrid) -> Option<(usize, usize, i64)> {
        let first = nu * self.cells_per_shift - grid.start();
        // The sample at the right end of the support is zero for every order.
        let last = (nu + width) * self.cells_per_shift - grid.start() - 1;
        let lo = first.max(0);
        let hi = last.min(grid.cells() as i64 - 1);
        if lo > hi {
            return None;
        }
        let k0 = (grid.start() + lo) * self.stride - nu * self.samples_per_shift;
        Some((lo as usize, hi as usize + 1, k0))
    }
}

fn check_margin(j_max: u32, grid: &DyadicGrid, margin: u32) -> Result<()> {
    if j_max + margin > grid.level() {
        return Err(Error::Resolution(format!(
            "level {j_max} with margin {margin} needs grid resolution {}, have {}",
            j_max + margin,
            grid.level()
        )));
    }
    Ok(())
}

/// `ψ_{j,ν}` sampled on the grid.
pub fn wavelet_at(j: u32, nu: i64, sw: &SampledWavelet, grid: &DyadicGrid) -> Result<GridFunction> {
    let geo = LevelGeometry::new(j, sw, grid)?;
    let width = sw.support_width() as i64;
    let (lo, hi, k0) = geo
        .cells(nu, width, grid)
        .ok_or_else(|| Error::Range(format!("ψ_({j},{nu}) does not meet the domain")))?;
    let shape = geo.shape(sw);
    let mut values = vec![0.0; grid.cells()];
    for (step, v) in values[lo..hi].iter_mut().enumerate() {
        *v = geo.amplitude * shape[(k0 + step as i64 * geo.stride) as usize];
    }
    GridFunction::new(*grid, values)
}

/// `λ_{j,ν}(f)` for every translate meeting the domain, levels `0..=j_max`,
/// with the default margin.
pub fn analyze(f: &GridFunction, sw: &SampledWavelet, j_max: u32) -> Result<CoefficientField> {
    analyze_with_margin(f, sw, j_max, DEFAULT_MARGIN)
}

pub fn analyze_with_margin(
    f: &GridFunction,
    sw: &SampledWavelet,
    j_max: u32,
    margin: u32,
) -> Result<CoefficientField> {
    let grid = f.grid();
    check_margin(j_max, grid, margin)?;
    let width = sw.support_width() as i64;
    let cell = grid.cell_width();
    let values = f.values();
    let mut out = CoefficientField::new(sw.order(), j_max);
    for j in 0..=j_max {
        let geo = LevelGeometry::new(j, sw, grid)?;
        let shape = geo.shape(sw);
        let weight = (1u64 << j) as f64 * cell * geo.amplitude;
        let level = &mut out.levels[j as usize];
        for nu in geo.translates(width, grid) {
            let Some((lo, hi, k0)) = geo.cells(nu, width, grid) else {
                continue;
            };
            let mut acc = 0.0;
            let mut k = k0;
            for v in &values[lo..hi] {
                acc += v * shape[k as usize];
                k += geo.stride;
            }
            level.insert(nu, weight * acc);
        }
    }
    Ok(out)
}

/// `Σ_j Σ_ν λ_{j,ν} ψ_{j,ν}` on the grid, with the default margin.
pub fn synthesize(c: &CoefficientField, sw: &SampledWavelet, grid: &DyadicGrid) -> Result<GridFunction> {
    synthesize_with_margin(c, sw, grid, DEFAULT_MARGIN)
}

pub fn synthesize_with_margin(
    c: &CoefficientField,
    sw: &SampledWavelet,
    grid: &DyadicGrid,
    margin: u32,
) -> Result<GridFunction> {
    let top = c.top_level().unwrap_or(0);
    check_margin(top, grid, margin)?;
    let width = sw.support_width() as i64;
    let mut values = vec![0.0; grid.cells()];
    for j in 0..=c.j_max() {
        let level = &c.levels[j as usize];
        if level.values().all(|&v| v == 0.0) {
            continue;
        }
        let geo = LevelGeometry::new(j, sw, grid)?;
        let shape = geo.shape(sw);
        for (&nu, &lambda) in level {
            if lambda == 0.0 {
                continue;
            }
            let Some((lo, hi, k0)) = geo.cells(nu, width, grid) else {
                continue;
            };
            let a = lambda * geo.amplitude;
            let mut k = k0;
            for v in &mut values[lo..hi] {
                *v += a * shape[k as usize];
                k += geo.stride;
            }
        }
    }
    GridFunction::new(*grid, values)
}

/// `P_N f = Σ_{j ≤ N} f_j`; `N ≥ j_max` gives the full synthesis.
pub fn partial_sum(
    c: &CoefficientField,
    n: u32,
    sw: &SampledWavelet,
    grid: &DyadicGrid,
) -> Result<GridFunction> {
    synthesize(&c.truncated(n), sw, grid)
}

/// Translates of level `j` whose whole support lies inside the domain.
pub fn interior_translates(
    j: u32,
    sw: &SampledWavelet,
    grid: &DyadicGrid,
) -> Result<RangeInclusive<i64>> {
    let geo = LevelGeometry::new(j, sw, grid)?;
    let width = sw.support_width() as i64;
    let start = grid.start();
    let end = start + grid.cells() as i64;
    let lo = -((-start).div_euclid(geo.cells_per_shift));
    let hi = end.div_euclid(geo.cells_per_shift) - width;
    Ok(lo..=hi)
}
