//! Piecewise-constant functions on a dyadic grid and the elementary dyadic
//! operators acting on them.
//!
//! A [`DyadicGrid`] at resolution `J` partitions `[x0, x1)` into cells of
//! width `2^{-J}`; a [`GridFunction`] carries one value per cell. All block
//! sums use pairwise summation over power-of-two blocks, so averaging data
//! that is already constant on sub-blocks reproduces the sub-block values
//! bit for bit.

use std::fs;
use std::io::{Read, Write};
use std::ops::{Add, Range, Sub};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finest supported resolution exponent.
pub const MAX_LEVEL: u32 = 24;

/// Interval `[start·2^{-J}, (start + cells)·2^{-J})` split into cells of width `2^{-J}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicGrid {
    level: u32,
    start: i64,
    cells: usize,
}

impl DyadicGrid {
    pub fn new(level: u32, start: i64, cells: usize) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::InvalidGrid(format!(
                "resolution {level} exceeds {MAX_LEVEL}"
            )));
        }
        if cells == 0 {
            return Err(Error::InvalidGrid("empty domain".into()));
        }
        Ok(Self {
            level,
            start,
            cells,
        })
    }

    /// The unit interval `[0, 1)` at resolution `level`.
    pub fn unit(level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::InvalidGrid(format!(
                "resolution {level} exceeds {MAX_LEVEL}"
            )));
        }
        Self::new(level, 0, 1usize << level)
    }

    /// Grid on `[x0, x1)`; both endpoints must be multiples of `2^{-level}`.
    pub fn from_endpoints(level: u32, x0: f64, x1: f64) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::InvalidGrid(format!(
                "resolution {level} exceeds {MAX_LEVEL}"
            )));
        }
        if x0.partial_cmp(&x1) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidGrid(format!("need x0 < x1, got [{x0}, {x1})")));
        }
        let scale = (1u64 << level) as f64;
        let a = x0 * scale;
        let b = x1 * scale;
        if a.fract() != 0.0 || b.fract() != 0.0 || a.abs() > 2f64.powi(52) || b.abs() > 2f64.powi(52) {
            return Err(Error::InvalidGrid(format!(
                "endpoints [{x0}, {x1}) are not on the 2^-{level} lattice"
            )));
        }
        Self::new(level, a as i64, (b - a) as usize)
    }

    /// Resolution exponent `J`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Left endpoint in units of `2^{-J}`.
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn cell_width(&self) -> f64 {
        1.0 / (1u64 << self.level) as f64
    }

    pub fn x0(&self) -> f64 {
        self.start as f64 * self.cell_width()
    }

    pub fn x1(&self) -> f64 {
        (self.start + self.cells as i64) as f64 * self.cell_width()
    }

    /// Left endpoint of cell `i`.
    pub fn cell_left(&self, i: usize) -> f64 {
        (self.start + i as i64) as f64 * self.cell_width()
    }

    /// Number of cells in a generation-`n` dyadic interval, checking that the
    /// domain is a union of such intervals.
    fn block(&self, n: u32) -> Result<usize> {
        if n > self.level {
            return Err(Error::Resolution(format!(
                "generation {n} is finer than the grid resolution {}",
                self.level
            )));
        }
        let block = 1usize << (self.level - n);
        if self.start.rem_euclid(block as i64) != 0 || !self.cells.is_multiple_of(block) {
            return Err(Error::Alignment(format!(
                "domain [{}, {}) is not aligned to the 2^-{n} lattice",
                self.x0(),
                self.x1()
            )));
        }
        Ok(block)
    }

    /// Cell range covered by the dyadic interval `I_{n,mu}`, if it lies in the domain.
    pub fn interval_cells(&self, n: u32, mu: i64) -> Result<Range<usize>> {
        if n > self.level {
            return Err(Error::Resolution(format!(
                "generation {n} is finer than the grid resolution {}",
                self.level
            )));
        }
        let len = 1i64 << (self.level - n);
        let first = mu * len - self.start;
        if first < 0 || first + len > self.cells as i64 {
            return Err(Error::Range(format!(
                "I_({n},{mu}) is not contained in [{}, {})",
                self.x0(),
                self.x1()
            )));
        }
        Ok(first as usize..(first + len) as usize)
    }

    /// Indices `mu` of the generation-`n` intervals tiling the domain.
    pub fn generation_indices(&self, n: u32) -> Result<Range<i64>> {
        let block = self.block(n)? as i64;
        let first = self.start / block;
        Ok(first..first + self.cells as i64 / block)
    }
}

/// Function equal to `values[i]` on the `i`-th cell of its grid, zero outside.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: DyadicGrid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: DyadicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.cells {
            return Err(Error::InvalidValue(format!(
                "expected {} values, got {}",
                grid.cells,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidValue(format!("non-finite value at cell {i}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: DyadicGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.cells],
        }
    }

    pub fn constant(grid: DyadicGrid, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.cells],
        }
    }

    /// Samples `f` at the left endpoint of every cell.
    pub fn from_fn(grid: DyadicGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid.cells).map(|i| f(grid.cell_left(i))).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &DyadicGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }

    /// `alpha·self + beta·other`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        })
    }

    /// `∫ self · other`, exact for piecewise-constant functions up to rounding.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        Ok(s * self.grid.cell_width())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid(format!(
                "grid mismatch: {:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    /// Writes `cell_index,value` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["cell_index", "value"])?;
        for (i, v) in self.values.iter().enumerate() {
            w.write_record([i.to_string(), format_f64(*v)])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn header(&self) -> GridHeader {
        GridHeader {
            level: self.grid.level,
            x0: self.grid.x0(),
            x1: self.grid.x1(),
        }
    }

    pub fn read_csv<R: Read>(header: &GridHeader, input: R) -> Result<Self> {
        let grid = DyadicGrid::from_endpoints(header.level, header.x0, header.x1)?;
        let mut values = vec![f64::NAN; grid.cells];
        let mut r = csv::Reader::from_reader(input);
        for rec in r.records() {
            let rec = rec?;
            let i: usize = rec
                .get(0)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidValue("bad cell_index".into()))?;
            let v: f64 = rec
                .get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidValue("bad value".into()))?;
            *values
                .get_mut(i)
                .ok_or_else(|| Error::Index(format!("cell {i} outside grid")))? = v;
        }
        Self::new(grid, values)
    }

    /// Writes `<stem>.json` (header) and `<stem>.csv` (values).
    pub fn save(&self, stem: &Path) -> Result<()> {
        fs::write(
            stem.with_extension("json"),
            serde_json::to_string_pretty(&self.header())?,
        )?;
        self.write_csv(fs::File::create(stem.with_extension("csv"))?)
    }

    pub fn load(stem: &Path) -> Result<Self> {
        let header: GridHeader = serde_json::from_str(&fs::read_to_string(stem.with_extension("json"))?)?;
        Self::read_csv(&header, fs::File::open(stem.with_extension("csv"))?)
    }

    /// Flat little-endian binary: magic, `J`, start, cell count, values.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(24 + 8 * self.values.len());
        out.extend_from_slice(BINARY_MAGIC);
        out.extend_from_slice(&self.grid.level.to_le_bytes());
        out.extend_from_slice(&self.grid.start.to_le_bytes());
        out.extend_from_slice(&(self.grid.cells as u64).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = || Error::InvalidValue("malformed grid function bytes".into());
        if bytes.len() < 24 || &bytes[..4] != BINARY_MAGIC {
            return Err(bad());
        }
        let level = u32::from_le_bytes(bytes[4..8].try_into().map_err(|_| bad())?);
        let start = i64::from_le_bytes(bytes[8..16].try_into().map_err(|_| bad())?);
        let cells = u64::from_le_bytes(bytes[16..24].try_into().map_err(|_| bad())?) as usize;
        let body = &bytes[24..];
        if body.len() != 8 * cells {
            return Err(bad());
        }
        let values = body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        Self::new(DyadicGrid::new(level, start, cells)?, values)
    }
}

const BINARY_MAGIC: &[u8; 4] = b"DYGF";

/// JSON header accompanying the CSV form of a [`GridFunction`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridHeader {
    #[serde(rename = "J")]
    pub level: u32,
    pub x0: f64,
    pub x1: f64,
}

/// Shortest decimal form that parses back to the same `f64`.
pub(crate) fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

impl Add for &GridFunction {
    type Output = GridFunction;

    fn add(self, rhs: &GridFunction) -> GridFunction {
        self.combine(1.0, rhs, 1.0).expect("grid mismatch in addition")
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;

    fn sub(self, rhs: &GridFunction) -> GridFunction {
        self.combine(1.0, rhs, -1.0).expect("grid mismatch in subtraction")
    }
}

/// Finite real sequence `entries[i]` indexed from `offset`.
///
/// Used both for level multipliers `b_n` (offset 0) and for Haar multipliers
/// `a_mu` indexed by interval position.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierSeq {
    offset: i64,
    entries: Vec<f64>,
}

impl MultiplierSeq {
    pub fn new(offset: i64, entries: Vec<f64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidValue(format!("non-finite multiplier at {i}")));
        }
        Ok(Self { offset, entries })
    }

    pub fn from_levels(entries: Vec<f64>) -> Result<Self> {
        Self::new(0, entries)
    }

    pub fn constant(offset: i64, len: usize, c: f64) -> Self {
        Self {
            offset,
            entries: vec![c; len],
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, index: i64) -> Option<f64> {
        let i = index - self.offset;
        if i < 0 {
            return None;
        }
        self.entries.get(i as usize).copied()
    }

    fn require(&self, index: i64) -> Result<f64> {
        self.get(index)
            .ok_or_else(|| Error::Index(format!("no multiplier entry for index {index}")))
    }
}

/// `(sup |b_n|, Σ |b_{n+1} - b_n|)`
pub fn seq_norms(b: &MultiplierSeq) -> (f64, f64) {
    let sup = b.entries.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    let bv = b.entries.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    (sup, bv)
}

/// Pairwise sum of a power-of-two-length slice, reusing `scratch`.
fn pairwise_sum(values: &[f64], scratch: &mut Vec<f64>) -> f64 {
    debug_assert!(values.len().is_power_of_two());
    scratch.clear();
    scratch.extend_from_slice(values);
    let mut len = scratch.len();
    while len > 1 {
        len /= 2;
        for i in 0..len {
            scratch[i] = scratch[2 * i] + scratch[2 * i + 1];
        }
    }
    scratch[0]
}

/// `E_N f`: the mean of `f` on each generation-`N` dyadic interval.
pub fn conditional_expectation(f: &GridFunction, n: u32) -> Result<GridFunction> {
    let block = f.grid.block(n)?;
    let mut values = Vec::with_capacity(f.values.len());
    let mut scratch = Vec::with_capacity(block);
    for chunk in f.values.chunks_exact(block) {
        let mean = pairwise_sum(chunk, &mut scratch) / block as f64;
        values.extend(std::iter::repeat_n(mean, block));
    }
    Ok(GridFunction {
        grid: f.grid,
        values,
    })
}

/// `D_N f = E_{N+1} f - E_N f`.
pub fn martingale_difference(f: &GridFunction, n: u32) -> Result<GridFunction> {
    if n + 1 > f.grid.level {
        return Err(Error::Resolution(format!(
            "D_{n} needs resolution at least {}, grid has {}",
            n + 1,
            f.grid.level
        )));
    }
    let fine = conditional_expectation(f, n + 1)?;
    let coarse = conditional_expectation(f, n)?;
    Ok(&fine - &coarse)
}

/// `L∞`-normalized Haar function `h_{N,mu}`: `+1` on the left half of
/// `I_{N,mu}`, `-1` on the right half.
pub fn haar_function(n: u32, mu: i64, grid: &DyadicGrid) -> Result<GridFunction> {
    if n + 1 > grid.level {
        return Err(Error::Resolution(format!(
            "h_({n},{mu}) needs resolution at least {}, grid has {}",
            n + 1,
            grid.level
        )));
    }
    let cells = grid.interval_cells(n, mu)?;
    let half = cells.len() / 2;
    let mut values = vec![0.0; grid.cells];
    values[cells.start..cells.start + half].fill(1.0);
    values[cells.start + half..cells.end].fill(-1.0);
    Ok(GridFunction {
        grid: *grid,
        values,
    })
}

/// `T_N[f, a] = Σ_mu a_mu 2^N <f, h_{N,mu}> h_{N,mu}`.
///
/// `a` must have an entry for every generation-`N` interval of the domain.
pub fn haar_multiplier(f: &GridFunction, n: u32, a: &MultiplierSeq) -> Result<GridFunction> {
    if n + 1 > f.grid.level {
        return Err(Error::Resolution(format!(
            "T_{n} needs resolution at least {}, grid has {}",
            n + 1,
            f.grid.level
        )));
    }
    let block = f.grid.block(n)?;
    let half = block / 2;
    let first_mu = f.grid.generation_indices(n)?.start;
    let mut values = Vec::with_capacity(f.values.len());
    let mut scratch = Vec::with_capacity(half);
    for (k, chunk) in f.values.chunks_exact(block).enumerate() {
        let weight = a.require(first_mu + k as i64)?;
        let left = pairwise_sum(&chunk[..half], &mut scratch);
        let right = pairwise_sum(&chunk[half..], &mut scratch);
        // 2^N <f, h> = 2^N 2^{-J} (left - right)
        let c = weight * ((left - right) / block as f64);
        values.extend(std::iter::repeat_n(c, half));
        values.extend(std::iter::repeat_n(-c, half));
    }
    Ok(GridFunction {
        grid: f.grid,
        values,
    })
}

/// `Σ_{n ∈ levels} b_n D_n f`. An empty range gives the zero function.
pub fn levelwise_multiplier(
    f: &GridFunction,
    b: &MultiplierSeq,
    levels: Range<u32>,
) -> Result<GridFunction> {
    let mut acc = GridFunction::zeros(f.grid);
    for n in levels {
        let bn = b.require(n as i64)?;
        let d = martingale_difference(f, n)?;
        for (a, v) in acc.values.iter_mut().zip(&d.values) {
            *a += bn * v;
        }
    }
    Ok(acc)
}

/// `E_0 f + Σ_{n < levels} b_n D_n f`; with `b ≡ 1` this telescopes to `E_levels f`.
pub fn martingale_transform(f: &GridFunction, b: &MultiplierSeq, levels: u32) -> Result<GridFunction> {
    let base = conditional_expectation(f, 0)?;
    let tail = levelwise_multiplier(f, b, 0..levels)?;
    Ok(&base + &tail)
}

/// `(Σ |v|^p 2^{-J})^{1/p}`, or `max |v|` for `p = ∞`.
///
/// # Panics
/// If `p` is not positive.
pub fn lp_norm(f: &GridFunction, p: f64) -> f64 {
    assert!(p > 0.0, "lp_norm needs p > 0, got {p}");
    if p.is_infinite() {
        return f.values.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    }
    let s: f64 = f.values.iter().map(|v| v.abs().powf(p)).sum();
    (s * f.grid.cell_width()).powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(level: u32) -> DyadicGrid {
        DyadicGrid::unit(level).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(DyadicGrid::from_endpoints(4, 0.5, 0.25).is_err());
        assert!(DyadicGrid::from_endpoints(2, 0.0, 0.3).is_err());
        assert!(DyadicGrid::unit(25).is_err());
        let g = DyadicGrid::from_endpoints(3, -0.5, 1.25).unwrap();
        assert_eq!((g.start(), g.cells()), (-4, 14));
        assert_eq!((g.x0(), g.x1()), (-0.5, 1.25));
    }

    #[test]
    fn averaging_preserves_constants() {
        let f = GridFunction::constant(unit(6), 1.0);
        for n in 0..=6 {
            assert_eq!(conditional_expectation(&f, n).unwrap(), f);
        }
    }

    #[test]
    fn haar_is_killed_by_its_own_generation() {
        let g = unit(7);
        let h = haar_function(3, 5, &g).unwrap();
        let e3 = conditional_expectation(&h, 3).unwrap();
        assert!(e3.values().iter().all(|&v| v == 0.0));
        assert_eq!(conditional_expectation(&h, 4).unwrap(), h);
        assert_eq!(martingale_difference(&h, 3).unwrap(), h);
        for n in [0, 1, 2, 4, 5, 6] {
            let d = martingale_difference(&h, n).unwrap();
            assert!(d.values().iter().all(|&v| v == 0.0), "D_{n}");
        }
    }

    #[test]
    fn expectation_errors() {
        let f = GridFunction::zeros(unit(4));
        assert!(matches!(conditional_expectation(&f, 5), Err(Error::Resolution(_))));
        let g = DyadicGrid::from_endpoints(4, 0.25, 1.0).unwrap();
        let f = GridFunction::zeros(g);
        assert!(matches!(conditional_expectation(&f, 1), Err(Error::Alignment(_))));
        assert!(conditional_expectation(&f, 2).is_ok());
        assert!(matches!(martingale_difference(&f, 4), Err(Error::Resolution(_))));
    }

    #[test]
    fn identity_at_full_resolution() {
        let g = unit(5);
        let f = GridFunction::from_fn(g, |x| (7.0 * x).sin()).unwrap();
        assert_eq!(conditional_expectation(&f, 5).unwrap(), f);
    }

    #[test]
    fn haar_normalization_and_orthogonality() {
        let g = unit(8);
        let h = haar_function(4, 3, &g).unwrap();
        assert_eq!(h.values().iter().sum::<f64>(), 0.0);
        assert_eq!(16.0 * h.inner(&h).unwrap(), 1.0);
        let h2 = haar_function(4, 4, &g).unwrap();
        assert_eq!(h.inner(&h2).unwrap(), 0.0);
        assert!(matches!(haar_function(4, 16, &g), Err(Error::Range(_))));
        assert!(matches!(haar_function(8, 0, &g), Err(Error::Resolution(_))));
    }

    #[test]
    fn haar_multiplier_special_cases() {
        let g = unit(6);
        let f = GridFunction::from_fn(g, |x| x * x - 0.3 * x).unwrap();
        let n = 2;
        let count = 4;
        let ones = MultiplierSeq::constant(0, count, 1.0);
        let t = haar_multiplier(&f, n, &ones).unwrap();
        let d = martingale_difference(&f, n).unwrap();
        assert!(t.max_abs_diff(&d).unwrap() < 1e-15);

        let zeros = MultiplierSeq::constant(0, count, 0.0);
        let t0 = haar_multiplier(&f, n, &zeros).unwrap();
        assert!(t0.values().iter().all(|&v| v == 0.0));

        let spike = MultiplierSeq::new(0, vec![0.0, 0.0, 1.0, 0.0]).unwrap();
        let ts = haar_multiplier(&f, n, &spike).unwrap();
        let h = haar_function(n, 2, &g).unwrap();
        let expected = h.scale(4.0 * f.inner(&h).unwrap());
        assert!(ts.max_abs_diff(&expected).unwrap() < 1e-15);

        let short = MultiplierSeq::constant(0, 3, 1.0);
        assert!(matches!(haar_multiplier(&f, n, &short), Err(Error::Index(_))));
    }

    #[test]
    fn levelwise_multiplier_cases() {
        let g = unit(6);
        let f = GridFunction::from_fn(g, |x| (5.0 * x).cos()).unwrap();
        let ones = MultiplierSeq::constant(0, 6, 1.0);
        let t = martingale_transform(&f, &ones, 4).unwrap();
        let e4 = conditional_expectation(&f, 4).unwrap();
        assert!(t.max_abs_diff(&e4).unwrap() < 1e-14);

        let h = haar_function(3, 1, &g).unwrap();
        let alt = MultiplierSeq::from_levels(vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0]).unwrap();
        let out = levelwise_multiplier(&h, &alt, 0..6).unwrap();
        assert_eq!(out, h.scale(-1.0));

        let empty = levelwise_multiplier(&f, &ones, 2..2).unwrap();
        assert!(empty.values().iter().all(|&v| v == 0.0));
        assert!(levelwise_multiplier(&f, &ones, 0..7).is_err());
    }

    #[test]
    fn lp_norm_cases() {
        let g = unit(5);
        let mut v = vec![0.0; 32];
        v[7] = 1.0;
        let cell = GridFunction::new(g, v).unwrap();
        assert_eq!(lp_norm(&cell, 1.0), 1.0 / 32.0);
        let h = haar_function(2, 1, &g).unwrap();
        for p in [0.5, 1.0, 2.0, 3.0] {
            let expected = 2f64.powf(-2.0 / p);
            assert!((lp_norm(&h, p) - expected).abs() < 1e-15 * expected.max(1.0));
        }
        assert_eq!(lp_norm(&h, f64::INFINITY), 1.0);
    }

    #[test]
    fn seq_norm_cases() {
        assert_eq!(seq_norms(&MultiplierSeq::constant(0, 5, 1.0)), (1.0, 0.0));
        let m = 4;
        let alt: Vec<f64> = (0..2 * m).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect();
        assert_eq!(
            seq_norms(&MultiplierSeq::from_levels(alt).unwrap()),
            (1.0, (2 * m - 1) as f64)
        );
        let harmonic: Vec<f64> = (0..4).map(|n| 1.0 / (n as f64 + 1.0)).collect();
        let (sup, bv) = seq_norms(&MultiplierSeq::from_levels(harmonic).unwrap());
        assert_eq!(sup, 1.0);
        assert!((bv - 0.75).abs() < 1e-15);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(GridFunction::new(unit(1), vec![0.0, f64::NAN]).is_err());
        assert!(MultiplierSeq::from_levels(vec![f64::INFINITY]).is_err());
        assert!(GridFunction::new(unit(1), vec![0.0]).is_err());
    }

    #[test]
    fn csv_and_binary_round_trip() {
        let g = DyadicGrid::from_endpoints(6, -0.25, 0.75).unwrap();
        let f = GridFunction::from_fn(g, |x| (x * 13.7).sin() / 3.0 + 1e-300).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = GridFunction::read_csv(&f.header(), buf.as_slice()).unwrap();
        assert_eq!(back, f);
        assert_eq!(GridFunction::from_bytes(&f.to_bytes()).unwrap(), f);

        let dir = tempfile::tempdir().unwrap();
        let stem = dir.path().join("f");
        f.save(&stem).unwrap();
        assert_eq!(GridFunction::load(&stem).unwrap(), f);
        let header = std::fs::read_to_string(stem.with_extension("json")).unwrap();
        assert!(header.contains("\"J\": 6"));
    }
}
