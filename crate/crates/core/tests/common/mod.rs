#![allow(dead_code)]

use dyadic_averaging::analysis::CoefficientField;
use dyadic_averaging::grid::{DyadicGrid, GridFunction};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type TestRng = Xoshiro256PlusPlus;

pub fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

/// Values `k / 2^10` with `|k| ≤ 2^10`: short enough mantissas that sums of
/// up to `2^30` of them, and their halvings, are exact in binary64.
pub fn dyadic_function(rng: &mut TestRng, grid: DyadicGrid) -> GridFunction {
    let values = (0..grid.cells())
        .map(|_| rng.gen_range(-1024i32..=1024) as f64 / 1024.0)
        .collect();
    GridFunction::new(grid, values).unwrap()
}

pub fn float_function(rng: &mut TestRng, grid: DyadicGrid) -> GridFunction {
    let values = (0..grid.cells()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    GridFunction::new(grid, values).unwrap()
}

/// Sparse random field on levels `0..=j_max` with translates in `0..2^j`.
pub fn random_field(rng: &mut TestRng, order: usize, j_max: u32, terms: usize) -> CoefficientField {
    let mut c = CoefficientField::new(order, j_max);
    for _ in 0..terms {
        let j = rng.gen_range(0..=j_max);
        let nu = rng.gen_range(0..(1i64 << j));
        c.insert(j, nu, rng.gen_range(-2.0..2.0)).unwrap();
    }
    c
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
