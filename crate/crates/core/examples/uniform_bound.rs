//! Ratio sweeps for `E_N`, `P_N` and `E_N - P_N` on a reduced configuration.
//!
//!     cargo run --release --example uniform_bound

use dyadic_averaging::experiments::{ExperimentConfig, Harness, SweepKind};

fn main() -> dyadic_averaging::Result<()> {
    let mut cfg = ExperimentConfig {
        level: 12,
        j_max: 8,
        n_max: 7,
        ..Default::default()
    };
    for f in &mut cfg.corpus.families {
        f.count = 2;
    }
    let h = Harness::new(cfg)?;
    let corpus = h.corpus()?;
    for kind in [SweepKind::En, SweepKind::Pn, SweepKind::EnPn] {
        let report = h.sweep(kind, &corpus)?;
        let summary = h.summarize(&report);
        println!("== {} ({} rows)", kind.name(), report.rows.len());
        for g in &summary.groups {
            let i = g.index;
            println!(
                "  p={:<5} q={:<4} s={:<6.3} r={:<4} in_region={:<5} C_obs={:.4}",
                i.p, i.q, i.s, i.r, g.in_theorem, g.c_obs
            );
        }
    }
    Ok(())
}
