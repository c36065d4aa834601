//! Brute-force reference implementations.
//!
//! Nothing here calls into the numeric kernels of [`crate::grid`],
//! [`crate::analysis`] or [`crate::norms`]: these routines work from
//! floating-point coordinates and direct definitions so they can certify the
//! fast paths. They are quadratic (or worse) and size-guarded.

use nalgebra::{DMatrix, DVector};

use crate::analysis::CoefficientField;
use crate::error::{Error, Result};
use crate::grid::{DyadicGrid, GridFunction};
use crate::norms::SmoothnessIndex;
use crate::wavelet::SampledWavelet;

/// Largest grid resolution accepted by the dense oracles.
pub const MAX_ORACLE_LEVEL: u32 = 12;

/// Largest coefficient level accepted by [`brute_norm`].
pub const MAX_BRUTE_LEVEL: u32 = 8;

/// Which quasi-norm [`brute_norm`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    TriebelLizorkin,
    Besov,
}

/// Explicit `cells × cells` matrix of `E_N`.
pub fn dense_expectation_matrix(grid: &DyadicGrid, n: u32) -> Result<DMatrix<f64>> {
    if grid.level() > MAX_ORACLE_LEVEL {
        return Err(Error::SizeGuard(format!(
            "dense oracle limited to resolution {MAX_ORACLE_LEVEL}"
        )));
    }
    if n > grid.level() {
        return Err(Error::Resolution(format!("generation {n} finer than grid")));
    }
    let len = 2f64.powi(-(n as i32));
    let cells = grid.cells();
    // Interval index of each cell, from its midpoint.
    let owner: Vec<f64> = (0..cells)
        .map(|i| ((grid.cell_left(i) + 0.5 * grid.cell_width()) / len).floor())
        .collect();
    let mut counts = std::collections::HashMap::new();
    for o in &owner {
        *counts.entry(*o as i64).or_insert(0usize) += 1;
    }
    let full = (len / grid.cell_width()).round() as usize;
    if counts.values().any(|&c| c != full) {
        return Err(Error::Alignment("domain is not a union of generation intervals".into()));
    }
    Ok(DMatrix::from_fn(cells, cells, |r, c| {
        if owner[r] == owner[c] {
            1.0 / full as f64
        } else {
            0.0
        }
    }))
}

/// Applies a dense matrix to the cell values of `f`.
pub fn apply_dense(m: &DMatrix<f64>, f: &GridFunction) -> Result<GridFunction> {
    let v = DVector::from_column_slice(f.values());
    let out = m * v;
    GridFunction::new(*f.grid(), out.as_slice().to_vec())
}

/// Value of the level-`j` wavelet (or scaling function for `j = 0`) of
/// translate `nu` at the point `x`, read from the samples.
fn evaluate(sw: &SampledWavelet, j: u32, nu: i64, x: f64) -> f64 {
    let (shape, t, amp) = if j == 0 {
        (sw.phi_samples(), x - nu as f64, 1.0)
    } else {
        (
            sw.psi_samples(),
            2f64.powi(j as i32 - 1) * x - nu as f64,
            std::f64::consts::FRAC_1_SQRT_2,
        )
    };
    let pos = t * 2f64.powi(sw.depth() as i32);
    if pos < 0.0 || pos.fract() != 0.0 {
        return 0.0;
    }
    shape.get(pos as usize).map_or(0.0, |v| amp * v)
}

/// `λ_{j,ν} = 2^j <f, ψ_{j,ν}>` by per-coefficient summation over all cells.
pub fn naive_inner_products(
    f: &GridFunction,
    sw: &SampledWavelet,
    j_max: u32,
) -> Result<CoefficientField> {
    let grid = f.grid();
    if grid.level() > MAX_ORACLE_LEVEL {
        return Err(Error::SizeGuard(format!(
            "naive inner products limited to resolution {MAX_ORACLE_LEVEL}"
        )));
    }
    let width = sw.support_width() as f64;
    let (x0, x1) = (grid.x0(), grid.x1());
    let h = grid.cell_width();
    let mut out = CoefficientField::new(sw.order(), j_max);
    for j in 0..=j_max {
        let dil = if j == 0 { 1.0 } else { 2f64.powi(j as i32 - 1) };
        let lo = (x0 * dil - width).floor() as i64 - 1;
        let hi = (x1 * dil).ceil() as i64 + 1;
        for nu in lo..=hi {
            let a = nu as f64 / dil;
            let b = (nu as f64 + width) / dil;
            if !(a < x1 && b > x0) {
                continue;
            }
            let mut acc = 0.0;
            for (i, v) in f.values().iter().enumerate() {
                acc += v * evaluate(sw, j, nu, grid.cell_left(i));
            }
            out.insert(j, nu, 2f64.powi(j as i32) * acc * h)?;
        }
    }
    Ok(out)
}

/// `Σ_{j,ν} λ_{j,ν} ψ_{j,ν}` evaluated cell by cell at the left endpoints.
pub fn naive_synthesis(c: &CoefficientField, sw: &SampledWavelet, grid: &DyadicGrid) -> Result<GridFunction> {
    if grid.level() > MAX_ORACLE_LEVEL {
        return Err(Error::SizeGuard(format!(
            "naive synthesis limited to resolution {MAX_ORACLE_LEVEL}"
        )));
    }
    let terms: Vec<(u32, i64, f64)> = c.iter().filter(|t| t.2 != 0.0).collect();
    let values = (0..grid.cells())
        .map(|i| {
            let x = grid.cell_left(i);
            terms.iter().map(|&(j, nu, v)| v * evaluate(sw, j, nu, x)).sum()
        })
        .collect();
    GridFunction::new(*grid, values)
}

/// Pointwise evaluation of the F or B quasi-norm on the midpoints of the
/// `2^{-(j_max+1)}` lattice.
pub fn brute_norm(c: &CoefficientField, idx: &SmoothnessIndex, kind: NormKind) -> Result<f64> {
    let j_max = c.j_max();
    if j_max > MAX_BRUTE_LEVEL {
        return Err(Error::SizeGuard(format!(
            "brute norm limited to j_max {MAX_BRUTE_LEVEL}"
        )));
    }
    idx.validate()?;
    if kind == NormKind::TriebelLizorkin && idx.p.is_infinite() {
        return Err(Error::Unsupported("F quasi-norm with p = ∞".into()));
    }
    let terms: Vec<(u32, f64, f64, f64)> = c
        .iter()
        .filter(|&(_, _, v)| v != 0.0)
        .map(|(j, nu, v)| {
            let len = 2f64.powi(-(j as i32));
            (j, nu as f64 * len, (nu as f64 + 1.0) * len, v)
        })
        .collect();
    if terms.is_empty() {
        return Ok(0.0);
    }
    let left = terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    let right = terms.iter().map(|t| t.2).fold(f64::NEG_INFINITY, f64::max);
    let h = 2f64.powi(-(j_max as i32) - 1);
    let points = ((right - left) / h).round() as usize;

    // level_values[j][k]: Σ_ν λ_{j,ν} 1_{j,ν} at the k-th midpoint
    let mut level_values = vec![vec![0.0; points]; j_max as usize + 1];
    for (k, slot) in (0..points).map(|k| (k, left + (k as f64 + 0.5) * h)) {
        for &(j, a, b, v) in &terms {
            if a <= slot && slot < b {
                level_values[j as usize][k] += v;
            }
        }
    }
    let weight = |j: usize| 2f64.powf(j as f64 * idx.s);
    let pow_sum = |vals: &mut dyn Iterator<Item = f64>, e: f64| -> f64 {
        if e.is_infinite() {
            vals.fold(0.0, f64::max)
        } else {
            vals.map(|t| t.powf(e)).sum::<f64>().powf(1.0 / e)
        }
    };

    match kind {
        NormKind::TriebelLizorkin => {
            let mut integral = 0.0;
            #[allow(clippy::needless_range_loop)]
            for k in 0..points {
                let g = pow_sum(
                    &mut (0..=j_max as usize).map(|j| (weight(j) * level_values[j][k]).abs()),
                    idx.q,
                );
                integral += g.powf(idx.p) * h;
            }
            Ok(integral.powf(1.0 / idx.p))
        }
        NormKind::Besov => {
            let per_level: Vec<f64> = (0..=j_max as usize)
                .map(|j| {
                    let vals = level_values[j].iter().map(|v| (weight(j) * v).abs());
                    if idx.p.is_infinite() {
                        vals.fold(0.0, f64::max)
                    } else {
                        (vals.map(|t| t.powf(idx.p)).sum::<f64>() * h).powf(1.0 / idx.p)
                    }
                })
                .collect();
            Ok(pow_sum(&mut per_level.into_iter(), idx.q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::daubechies_system;

    #[test]
    fn full_resolution_matrix_is_identity() {
        let g = DyadicGrid::unit(5).unwrap();
        assert_eq!(dense_expectation_matrix(&g, 5).unwrap(), DMatrix::identity(32, 32));
    }

    #[test]
    fn rows_sum_to_one_and_idempotent() {
        let g = DyadicGrid::from_endpoints(6, -0.5, 0.5).unwrap();
        assert!(dense_expectation_matrix(&g, 0).is_err());
        for n in 1..=6 {
            let m = dense_expectation_matrix(&g, n).unwrap();
            for r in 0..m.nrows() {
                assert!((m.row(r).sum() - 1.0).abs() < 1e-15);
            }
            let diff = (&m * &m - &m).abs().max();
            assert!(diff < 1e-13, "generation {n}: {diff}");
        }
    }

    #[test]
    fn guards() {
        let g = DyadicGrid::unit(13).unwrap();
        assert!(matches!(dense_expectation_matrix(&g, 2), Err(Error::SizeGuard(_))));
        let sw = daubechies_system(1, 14).unwrap();
        let f = GridFunction::zeros(g);
        assert!(matches!(naive_inner_products(&f, &sw, 2), Err(Error::SizeGuard(_))));
        let c = CoefficientField::new(1, 9);
        let i = SmoothnessIndex::pqs(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(brute_norm(&c, &i, NormKind::Besov), Err(Error::SizeGuard(_))));
        let misaligned = DyadicGrid::from_endpoints(4, 0.25, 1.0).unwrap();
        assert!(matches!(dense_expectation_matrix(&misaligned, 1), Err(Error::Alignment(_))));
    }

    #[test]
    fn zero_function_gives_zero_field() {
        let sw = daubechies_system(3, 12).unwrap();
        let g = DyadicGrid::unit(10).unwrap();
        let c = naive_inner_products(&GridFunction::zeros(g), &sw, 4).unwrap();
        assert!(c.iter().all(|(_, _, v)| v == 0.0));
    }

    #[test]
    fn single_cell_indicator() {
        let sw = daubechies_system(2, 12).unwrap();
        let g = DyadicGrid::unit(10).unwrap();
        let cell = 700;
        let mut v = vec![0.0; g.cells()];
        v[cell] = 1.0;
        let f = GridFunction::new(g, v).unwrap();
        let c = naive_inner_products(&f, &sw, 5).unwrap();
        for (j, nu, lambda) in c.iter() {
            let expected = 2f64.powi(j as i32) * g.cell_width() * evaluate(&sw, j, nu, g.cell_left(cell));
            assert!((lambda - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_single_and_homogeneity() {
        let (j, nu) = (3u32, 5i64);
        let c = CoefficientField::single(2, 6, j, nu, 1.0).unwrap();
        let i = SmoothnessIndex::pqs(1.3, 0.8, 0.4).unwrap();
        let expected = 2f64.powf(j as f64 * i.s) * 2f64.powf(-(j as f64) / i.p);
        for kind in [NormKind::TriebelLizorkin, NormKind::Besov] {
            let got = brute_norm(&c, &i, kind).unwrap();
            assert!((got - expected).abs() < 1e-12 * expected);
            let tripled = brute_norm(&c.scale(3.0), &i, kind).unwrap();
            assert!((tripled - 3.0 * got).abs() < 1e-12 * got);
        }
    }
}
