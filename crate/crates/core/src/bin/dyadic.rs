use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dyadic_averaging::experiments::report::{read_csv, summarize, FamilySlope};
use dyadic_averaging::experiments::{ExperimentConfig, Harness, SweepKind};
use dyadic_averaging::wavelet::{daubechies_filter, verify_filter_identities, MAX_ORDER};
use dyadic_averaging::Result;

#[derive(Parser)]
#[command(name = "dyadic", version, about = "Dyadic averaging and wavelet quasi-norm experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON experiment configuration; built-in defaults when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Filter identity checks.
    Filters {
        #[command(subcommand)]
        action: FiltersAction,
    },
    /// Test-function corpora.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Run one ratio sweep and write `<kind>.csv` and `<kind>.summary.json`.
    Sweep {
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Fit growth exponents to the rows of a sweep CSV.
    Fit {
        /// Sweep CSV; defaults to every CSV under `--out`.
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize every sweep CSV under `--out` into `summary.json`.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum FiltersAction {
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Make {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    En,
    Pn,
    Enpn,
    Tn,
    Mult,
}

impl From<Kind> for SweepKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::En => SweepKind::En,
            Kind::Pn => SweepKind::Pn,
            Kind::Enpn => SweepKind::EnPn,
            Kind::Tn => SweepKind::Tn,
            Kind::Mult => SweepKind::Mult,
        }
    }
}

fn setup(common: &Common) -> Result<ExperimentConfig> {
    if let Some(n) = common.jobs {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mut cfg = match &common.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sweep_csvs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    out.sort();
    Ok(out)
}

fn print_slope(experiment: &str, idx: &dyadic_averaging::norms::SmoothnessIndex, f: &FamilySlope) {
    let slope = f.slope.map_or("n/a".to_string(), |s| format!("{s:+.4}"));
    let verdict = match f.pass {
        Some(true) => "ok",
        Some(false) => "FAIL",
        None => "-",
    };
    println!(
        "{experiment}\tp={} q={} s={} r={}\t{}\tslope={slope}\t{verdict}",
        idx.p, idx.q, idx.s, idx.r, f.family
    );
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Filters {
            action: FiltersAction::Verify { common },
        } => {
            setup(&common)?;
            let mut ok = true;
            for order in 1..=MAX_ORDER {
                let r = verify_filter_identities(&daubechies_filter(order)?);
                println!(
                    "L={order:2}  sum={:.1e}  orth={:.1e}  moments={:.1e}  mirror={:.1e}  {}",
                    r.sum,
                    r.orthogonality,
                    r.vanishing_moments,
                    r.mirror,
                    if r.passed() { "ok" } else { "FAIL" }
                );
                ok &= r.passed();
            }
            Ok(ok)
        }
        Command::Corpus {
            action: CorpusAction::Make { common },
        } => {
            let cfg = setup(&common)?;
            let h = Harness::new(cfg)?;
            let dir = h.config.out.join("corpus");
            std::fs::create_dir_all(&dir)?;
            for item in h.corpus()? {
                let stem = dir.join(item.label().replace(':', "_"));
                item.function.save(&stem)?;
                item.coefficients.save(&stem.with_extension("coef.json"))?;
            }
            println!("corpus written to {}", dir.display());
            Ok(true)
        }
        Command::Sweep { kind, common } => {
            let cfg = setup(&common)?;
            let h = Harness::new(cfg)?;
            let kind = SweepKind::from(kind);
            let corpus = h.corpus()?;
            let report = h.sweep(kind, &corpus)?;
            let summary = h.write(&h.config.out, kind.name(), &report)?;
            for s in &summary.skipped {
                eprintln!("skipped: {s}");
            }
            for g in &summary.groups {
                println!(
                    "{}\tp={} q={} s={} r={}\tC_obs={:.6}",
                    g.experiment, g.index.p, g.index.q, g.index.s, g.index.r, g.c_obs
                );
            }
            println!("{} rows, pass={}", report.rows.len(), summary.pass);
            Ok(summary.pass)
        }
        Command::Fit { input, common } => {
            let cfg = setup(&common)?;
            let files = match input {
                Some(p) => vec![p],
                None => sweep_csvs(&cfg.out)?,
            };
            let mut ok = true;
            for file in files {
                let report = read_csv(std::fs::File::open(&file)?)?;
                let summary = summarize(&report, &cfg.growth_indices);
                for g in &summary.groups {
                    for f in &g.families {
                        print_slope(&g.experiment, &g.index, f);
                    }
                }
                ok &= summary.pass;
            }
            Ok(ok)
        }
        Command::Report { common } => {
            let cfg = setup(&common)?;
            let mut all = dyadic_averaging::experiments::RatioReport::default();
            for file in sweep_csvs(&cfg.out)? {
                all.extend(read_csv(std::fs::File::open(&file)?)?);
            }
            all.sort();
            let summary = summarize(&all, &cfg.growth_indices);
            let path = cfg.out.join("summary.json");
            std::fs::write(&path, summary.to_json()?)?;
            let failing = summary
                .groups
                .iter()
                .flat_map(|g| g.families.iter().map(move |f| (g, f)))
                .filter(|(_, f)| f.pass == Some(false))
                .count();
            println!(
                "{} rows, {} groups, {failing} failing family profiles, pass={} -> {}",
                all.rows.len(),
                summary.groups.len(),
                summary.pass,
                path.display()
            );
            Ok(summary.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
