//! Samples the scaling function and wavelet of order `L` by the cascade
//! algorithm and prints a coarse profile plus the first moments.
//!
//!     cargo run --example cascade -- 3

use dyadic_averaging::wavelet::{daubechies_system, moment};

fn main() -> dyadic_averaging::Result<()> {
    let order: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let depth = 10;
    let sw = daubechies_system(order, depth)?;
    println!("order {order}, support [0, {}], depth {depth}", sw.support_width());
    println!("∫φ = {:.12}   ∫ψ = {:.3e}", sw.phi_mass(), sw.psi_mass());
    for k in 0..=order as u32 {
        println!("∫ x^{k} ψ = {:+.3e}", moment(&sw, k));
    }
    let step = 1usize << (depth - 2);
    println!("\n     x        φ(x)        ψ(x)");
    for (i, (phi, psi)) in sw.phi_samples().iter().zip(sw.psi_samples()).enumerate().step_by(step) {
        println!("{:6.2} {phi:+11.6} {psi:+11.6}", i as f64 / (1u64 << depth) as f64);
    }
    Ok(())
}
