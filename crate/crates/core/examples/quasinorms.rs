//! Besov and Triebel–Lizorkin quasi-norms of a coefficient field across
//! a few smoothness indices, with the region predicates.
//!
//!     cargo run --example quasinorms

use dyadic_averaging::analysis::CoefficientField;
use dyadic_averaging::norms::*;

fn main() -> dyadic_averaging::Result<()> {
    // One coefficient per level, decaying like 2^{-j}.
    let mut c = CoefficientField::new(4, 8);
    for j in 0..=8 {
        c.insert(j, 0, 2f64.powi(-(j as i32)))?;
    }
    println!("   p     q      s   |    F        B    | theorem uncond");
    for (p, q, s) in [(1.0, 2.0, 0.5), (2.0, 2.0, 0.25), (0.8, 2.0, 0.5), (1.0, 4.0, 0.9), (4.0, f64::INFINITY, -0.3)] {
        let idx = SmoothnessIndex::pqs(p, q, s)?;
        println!(
            "{p:5} {q:5} {s:6} | {:8.4} {:8.4} | {:7} {:6}",
            f_quasinorm(&c, &idx)?,
            b_quasinorm(&c, &idx)?,
            region_theorem(&idx),
            region_unconditional(&idx)
        );
    }
    Ok(())
}
