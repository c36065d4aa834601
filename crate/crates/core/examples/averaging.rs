//! Conditional expectations, martingale differences and Haar multipliers
//! applied to a step function.
//!
//!     cargo run --example averaging

use dyadic_averaging::grid::*;

fn main() -> dyadic_averaging::Result<()> {
    let grid = DyadicGrid::unit(8)?;
    let f = GridFunction::from_fn(grid, |x| (6.0 * x).sin() + if x > 0.4 { 1.0 } else { 0.0 })?;
    println!(" N   ‖E_N f‖_2   ‖D_N f‖_2   ‖f - E_N f‖_∞");
    for n in 0..=8 {
        let e = conditional_expectation(&f, n)?;
        let d = if n < 8 { lp_norm(&martingale_difference(&f, n)?, 2.0) } else { 0.0 };
        let rest = lp_norm(&f.combine(1.0, &e, -1.0)?, f64::INFINITY);
        println!("{n:2}   {:9.6}   {d:9.6}   {rest:11.3e}", lp_norm(&e, 2.0));
    }

    // T_N[f, a] with alternating signs on the generation-3 intervals.
    let n = 3;
    let gens = grid.generation_indices(n)?;
    let a = MultiplierSeq::new(gens.start, gens.clone().map(|mu| if mu % 2 == 0 { 1.0 } else { -1.0 }).collect())?;
    let t = haar_multiplier(&f, n, &a)?;
    println!("\n‖T_3[f, ±1]‖_2 = {:.6} = ‖D_3 f‖_2 = {:.6}", lp_norm(&t, 2.0), lp_norm(&martingale_difference(&f, n)?, 2.0));

    // Levelwise transform with b = (1, -1, 1, ...) on six levels.
    let b = MultiplierSeq::from_levels((0..6).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect())?;
    let (sup, bv) = seq_norms(&b);
    let g = martingale_transform(&f, &b, 6)?;
    println!("alternating transform: ‖b‖_∞ = {sup}, ‖b‖_BV = {bv}, ‖T_b f‖_2 = {:.6}", lp_norm(&g, 2.0));
    Ok(())
}
