//! Runs every sweep on the shipped configuration and prints the fitted
//! profile slopes, the quadrature error of the smooth system, and the
//! transform dichotomy. The frozen tolerances were read off this output.
//!
//!     cargo run --release --example calibrate [config.json]

use std::time::Instant;

use dyadic_averaging::analysis::{analyze, interior_translates, wavelet_at};
use dyadic_averaging::experiments::{ExperimentConfig, Harness, SweepKind};
use dyadic_averaging::grid::DyadicGrid;
use dyadic_averaging::wavelet::daubechies_system;

fn quadrature_error(order: usize, gap: u32) -> dyadic_averaging::Result<f64> {
    let mut worst: f64 = 0.0;
    for big_j in 10..=16 {
        let grid = DyadicGrid::unit(big_j)?;
        let sw = daubechies_system(order, big_j + 1)?;
        let j = big_j - gap;
        let nus = interior_translates(j, &sw, &grid)?;
        for nu in [*nus.start(), (nus.start() + nus.end()) / 2, *nus.end()] {
            let c = analyze(&wavelet_at(j, nu, &sw, &grid)?, &sw, j)?;
            worst = worst.max((c.get(j, nu) - 1.0).abs());
        }
    }
    Ok(worst)
}

fn main() -> dyadic_averaging::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::load(path.as_ref())?,
        None => ExperimentConfig::default(),
    };
    for gap in [4, 5, 6] {
        println!("tau_quad(L={}, gap={gap}) = {:.3e}", cfg.order, quadrature_error(cfg.order, gap)?);
    }
    let h = Harness::new(cfg)?;
    let corpus = h.corpus()?;
    for kind in SweepKind::ALL {
        let t = Instant::now();
        let report = h.sweep(kind, &corpus)?;
        let summary = h.summarize(&report);
        println!("== {} ({} rows, {:.1}s)", kind.name(), report.rows.len(), t.elapsed().as_secs_f64());
        for g in &summary.groups {
            let i = g.index;
            print!(
                "{:<18} p={:<5} q={:<5} s={:<7.4} r={:<5} {:<6} C_obs={:<10.4}",
                g.experiment, i.p, i.q, i.s, i.r, g.expectation, g.c_obs
            );
            for f in &g.families {
                let mark = match f.pass {
                    Some(true) => "",
                    Some(false) => "!",
                    None => "~",
                };
                match f.slope {
                    Some(s) => print!(" {}={s:+.3}{mark}", f.family),
                    None => print!(" {}=n/a{mark}", f.family),
                }
            }
            println!();
        }
        for d in &summary.dichotomy {
            println!("dichotomy rho={:.3} profile={:?}", d.spearman, d.profile);
        }
        println!("pass={}", summary.pass);
    }
    Ok(())
}
