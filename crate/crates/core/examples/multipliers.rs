//! Haar and levelwise multiplier sweeps, and the random-sign growth probe.
//!
//!     cargo run --release --example multipliers

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
    if let Some(g) = cfg.growth_probe.as_mut() {
        g.seeds = 8;
    }
    let h = Harness::new(cfg)?;
    let corpus = h.corpus()?;
    for kind in [SweepKind::Tn, SweepKind::Mult] {
        let report = h.sweep(kind, &corpus)?;
        let summary = h.summarize(&report);
        for g in summary.groups.iter().filter(|g| g.experiment != "growth") {
            println!("{:<18} p={:<5} q={:<4} s={:<6.3} C_obs={:.4}", g.experiment, g.index.p, g.index.q, g.index.s, g.c_obs);
        }
        for d in &summary.dichotomy {
            let prof: Vec<String> = d.profile.iter().map(|(n, v)| format!("{n}:{v:.2}")).collect();
            println!("random signs at (p,q,s)=({},{},{}): {}  spearman {:.3}", d.index.p, d.index.q, d.index.s, prof.join(" "), d.spearman);
        }
    }
    Ok(())
}
