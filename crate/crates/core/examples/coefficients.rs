//! Wavelet coefficients of a grid function and reconstruction from them.
//!
//!     cargo run --release --example coefficients

use dyadic_averaging::analysis::{analyze, partial_sum, synthesize};
use dyadic_averaging::grid::{lp_norm, DyadicGrid, GridFunction};
use dyadic_averaging::wavelet::daubechies_system;

fn main() -> dyadic_averaging::Result<()> {
    let level = 12;
    let j_max = 8;
    let grid = DyadicGrid::unit(level)?;
    let sw = daubechies_system(3, level + 1)?;
    let f = GridFunction::from_fn(grid, |x| (-(x - 0.5f64).powi(2) / 0.01).exp())?;
    let c = analyze(&f, &sw, j_max)?;
    println!("{} coefficients on levels 0..={j_max}", c.len());
    for j in 0..=j_max {
        let level = c.level(j).unwrap();
        let peak = level.values().fold(0.0f64, |m, v| m.max(v.abs()));
        println!("  j={j}: {:3} translates, max |λ| = {peak:.3e}", level.len());
    }
    let back = synthesize(&c, &sw, &grid)?;
    println!("‖f - Σ λψ‖_2 = {:.3e}", lp_norm(&f.combine(1.0, &back, -1.0)?, 2.0));
    for n in [2, 4, 6] {
        let p = partial_sum(&c, n, &sw, &grid)?;
        println!("‖f - P_{n} f‖_2 = {:.3e}", lp_norm(&f.combine(1.0, &p, -1.0)?, 2.0));
    }
    Ok(())
}
