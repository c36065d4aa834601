//! Tabulated Daubechies filters and their identity residuals.
//!
//!     cargo run --example filters

use dyadic_averaging::wavelet::{daubechies_filter, hoelder_exponent, verify_filter_identities, MAX_ORDER};

fn main() -> dyadic_averaging::Result<()> {
    println!("{:>3} {:>6} {:>10} {:>10} {:>10}", "L", "taps", "sum", "orth", "moments");
    for order in 1..=MAX_ORDER {
        let fp = daubechies_filter(order)?;
        let r = verify_filter_identities(&fp);
        println!(
            "{order:>3} {:>6} {:>10.1e} {:>10.1e} {:>10.1e}   Hölder ≈ {:.3}",
            fp.lowpass().len(),
            r.sum,
            r.orthogonality,
            r.vanishing_moments,
            hoelder_exponent(order)?
        );
    }
    let d2 = daubechies_filter(2)?;
    println!("\nD4 lowpass:  {:?}", d2.lowpass());
    println!("D4 highpass: {:?}", d2.highpass());
    Ok(())
}
