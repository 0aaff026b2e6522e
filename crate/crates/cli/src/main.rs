#![forbid(unsafe_code)]

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context as _;
use clap::{Parser, Subcommand};

use config::SuiteConfig;
use hotrans::harness::{Context, GridSpec, SuiteSpec};
use hotrans::sampling::SampledRadialFunction;
use hotrans::transforms::{eps_contraction, flat_psi, ho_transform};
use output::{Summary, SummaryLine};

/// Inequality harness for the rank-one Heckman-Opdam transform and its flat
/// Hankel/Dunkl limit.
#[derive(Parser)]
#[command(name = "hotrans", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured suites and write one report per suite plus a summary.
    Run {
        /// Configuration file (TOML).
        config: PathBuf,
        /// Output directory (overrides the config's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Multiply both grids' panel counts (stability checks).
        #[arg(long, default_value_t = 1)]
        refine: usize,
        /// Seed for the randomized property suites (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Run only the suites whose id contains this string (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Calibration and Plancherel isometry only, plus plot data for the
    /// spectral density and the reference transform.
    Plancherel {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contraction study: sup-errors of phi_{i xi/eps}(eps t) against the
    /// flat Bessel kernel along a decreasing sequence of eps.
    Limits {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Spectral parameter of the probe.
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
    },
    /// List the known suite identifiers and their parameters.
    ListSuites,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Run {
            config,
            out,
            refine,
            seed,
            suites,
        } => run(&config, out, refine.max(1), seed, &suites),
        Command::Plancherel { config, out } => plancherel(&config, out),
        Command::Limits { config, out, xi } => limits(&config, out, xi),
        Command::ListSuites => {
            list_suites();
            Ok(true)
        }
    }
}

fn prepare_out(config: &SuiteConfig, out: Option<PathBuf>) -> anyhow::Result<PathBuf> {
    let dir = out
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("reports"));
    std::fs::create_dir_all(&dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

fn build_context(config: &SuiteConfig, refine: usize) -> anyhow::Result<(Context, GridSpec)> {
    let datum = config.build_datum()?;
    let grid = config.grid_spec().refined(refine);
    let ctx = Context::build(datum, grid)?;
    Ok((ctx, grid))
}

fn run(
    config_path: &Path,
    out: Option<PathBuf>,
    refine: usize,
    seed_override: Option<u64>,
    filters: &[String],
) -> anyhow::Result<bool> {
    let config = SuiteConfig::load(config_path)?;
    let out = prepare_out(&config, out)?;
    let seed = seed_override.unwrap_or(config.seed);

    let selected: Vec<&SuiteSpec> = config
        .suites
        .iter()
        .filter(|s| filters.is_empty() || filters.iter().any(|f| s.id().contains(f)))
        .collect();

    if selected.is_empty() {
        let summary = Summary {
            datum: config.build_datum()?.describe(),
            seed,
            refine,
            grid: config.grid_spec().refined(refine),
            suites: vec![],
            all_pass: true,
        };
        output::write_summary(&out, &summary)?;
        output::write_timings(&out, &[])?;
        println!(
            "no suites selected; wrote empty summary to {}",
            out.display()
        );
        return Ok(true);
    }

    let (ctx, grid) = build_context(&config, refine)?;
    let mut lines = Vec::new();
    let mut timings = Vec::new();
    let mut all_pass = true;
    for suite in selected {
        let started = Instant::now();
        let report = match suite.run(&ctx, seed) {
            Ok(report) => report,
            Err(err) => {
                // numerical guard failure: mark the suite failed, keep going
                eprintln!("suite {} failed: {err}", suite.id());
                all_pass = false;
                lines.push(SummaryLine {
                    id: suite.id(),
                    pass: false,
                    max_ratio: f64::NAN,
                });
                timings.push((suite.id(), started.elapsed().as_millis()));
                continue;
            }
        };
        let elapsed = started.elapsed().as_millis();
        println!(
            "{:<42} {}  max_ratio = {:.6e}",
            report.suite,
            if report.pass { "PASS" } else { "FAIL" },
            report.max_ratio
        );
        all_pass &= report.pass;
        output::write_report(&out, &report.suite.clone(), &report)?;
        lines.push(SummaryLine {
            id: report.suite.clone(),
            pass: report.pass,
            max_ratio: report.max_ratio,
        });
        timings.push((report.suite, elapsed));
    }

    let summary = Summary {
        datum: ctx.datum.describe(),
        seed,
        refine,
        grid,
        suites: lines,
        all_pass,
    };
    output::write_summary(&out, &summary)?;
    output::write_timings(&out, &timings)?;
    println!(
        "{} suites -> {} ({})",
        summary.suites.len(),
        out.display(),
        if all_pass { "all pass" } else { "FAILURES" }
    );
    Ok(all_pass)
}

fn plancherel(config_path: &Path, out: Option<PathBuf>) -> anyhow::Result<bool> {
    let config = SuiteConfig::load(config_path)?;
    let out = prepare_out(&config, out)?;
    let (ctx, _) = build_context(&config, 1)?;

    let mut all_pass = true;
    let mut timings = Vec::new();
    for suite in [SuiteSpec::Plancherel, SuiteSpec::FlatPlancherel] {
        let started = Instant::now();
        let report = suite.run(&ctx, config.seed)?;
        println!(
            "{:<20} {}  rows: {}",
            report.suite,
            if report.pass { "PASS" } else { "FAIL" },
            report.rows.len()
        );
        all_pass &= report.pass;
        output::write_report(&out, &report.suite.clone(), &report)?;
        timings.push((report.suite, started.elapsed().as_millis()));
    }

    // plot data: spectral density and the reference bump's transform
    let density: Vec<(f64, f64)> = ctx
        .spectral_grid
        .nodes()
        .iter()
        .map(|&xi| Ok((xi, ctx.datum.plancherel_density(xi)?)))
        .collect::<hotrans::Result<_>>()?;
    output::write_series(&out, "plancherel_density", ("xi", "density"), &density)?;

    let f0 = SampledRadialFunction::sample_real(ctx.mu.clone(), |x| (-0.5 * x * x).exp())?;
    let t0 = ho_transform(&ctx.datum, &f0, ctx.spectral_grid.clone(), 0.0)?;
    let series: Vec<(f64, f64)> = ctx
        .spectral_grid
        .nodes()
        .iter()
        .zip(t0.values())
        .map(|(&xi, v)| (xi, v.norm()))
        .collect();
    output::write_series(
        &out,
        "reference_transform",
        ("xi", "abs_transform"),
        &series,
    )?;
    output::write_timings(&out, &timings)?;
    Ok(all_pass)
}

fn limits(config_path: &Path, out: Option<PathBuf>, xi: f64) -> anyhow::Result<bool> {
    let config = SuiteConfig::load(config_path)?;
    let out = prepare_out(&config, out)?;
    let datum = config.build_datum()?;
    if !datum.is_rank_one() {
        anyhow::bail!("the contraction study needs a rank_one datum");
    }

    let eps_values = [0.2, 0.1, 0.05, 0.02];
    let ts: Vec<f64> = (0..=100).map(|i| 5.0 * i as f64 / 100.0).collect();
    let mut sup_errors = Vec::new();
    let mut profile_at_005 = Vec::new();
    for &eps in &eps_values {
        let mut sup = 0.0f64;
        for &t in &ts {
            let curved = eps_contraction(&datum, eps, xi, t)?;
            let flat = flat_psi(&datum, xi, t)?;
            let err = (curved - flat).norm();
            sup = sup.max(err);
            if eps == 0.05 {
                profile_at_005.push((t, err));
            }
        }
        sup_errors.push((eps, sup));
        println!("eps = {eps:<5} sup error over t in [0,5]: {sup:.6e}");
    }
    output::write_series(&out, "eps_contraction", ("eps", "sup_error"), &sup_errors)?;
    output::write_series(
        &out,
        "flat_limit_profile",
        ("t", "abs_error"),
        &profile_at_005,
    )?;

    let monotone = sup_errors.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-9);
    let at_005 = sup_errors
        .iter()
        .find(|(e, _)| *e == 0.05)
        .map(|(_, s)| *s)
        .unwrap_or(f64::INFINITY);
    let pass = monotone && at_005 <= 0.05;
    println!(
        "monotone decrease: {monotone}; sup at eps=0.05: {at_005:.4e} (bound 0.05) -> {}",
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(pass)
}

fn list_suites() {
    println!("suite ids and parameters (TOML [[suite]] tables):");
    println!("  plancherel                 -- calibration + isometry + inversion roundtrip");
    println!("  flat_plancherel            -- flat-side isometry");
    println!("  hausdorff_young            -- p in (1,2]");
    println!("  hausdorff_young_shifted    -- p in (1,2], eta inside the tube");
    println!("  hl_weighted                -- p in (1,2), weight exponents k, a, b");
    println!("  hl_young                   -- q > 2 (hyperbolic Young weight)");
    println!("  hl_ver3_i                  -- 1 < p <= q <= 2, eta inside the tube");
    println!("  hl_ver3_ii                 -- 2 <= q <= p, eta = 0");
    println!("  flat_hl                    -- p in (1,2]");
    println!("  flat_rs                    -- part (i): 1 < p <= q <= 2; part (ii): 2 <= q <= p");
    println!("  lorentz_properties         -- trials (seeded step-function properties)");
    println!("  oneil_random               -- trials (seeded product-inequality pairs)");
}
