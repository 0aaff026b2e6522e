use std::path::Path;

use anyhow::Context as _;
use serde::Serialize;

use hotrans::harness::{GridSpec, InequalityReport};

/// Per-run summary; timings live in a separate file so identical runs
/// produce byte-identical reports.
#[derive(Debug, Serialize)]
pub struct Summary {
    pub datum: String,
    pub seed: u64,
    pub refine: usize,
    pub grid: GridSpec,
    pub suites: Vec<SummaryLine>,
    pub all_pass: bool,
}

#[derive(Debug, Serialize)]
pub struct SummaryLine {
    pub id: String,
    pub pass: bool,
    pub max_ratio: f64,
}

pub fn write_report(out: &Path, id: &str, report: &InequalityReport) -> anyhow::Result<()> {
    let toml_path = out.join(format!("{id}.toml"));
    let text = toml::to_string_pretty(report).context("serializing report")?;
    std::fs::write(&toml_path, text).with_context(|| format!("writing {}", toml_path.display()))?;
    let csv_path = out.join(format!("{id}.csv"));
    std::fs::write(&csv_path, report.to_csv())
        .with_context(|| format!("writing {}", csv_path.display()))?;
    Ok(())
}

pub fn write_summary(out: &Path, summary: &Summary) -> anyhow::Result<()> {
    let path = out.join("summary.toml");
    std::fs::write(&path, toml::to_string_pretty(summary)?)
        .with_context(|| format!("writing {}", path.display()))
}

pub fn write_timings(out: &Path, timings: &[(String, u128)]) -> anyhow::Result<()> {
    let mut text = String::from("suite,elapsed_ms\n");
    for (id, ms) in timings {
        text.push_str(&format!("{id},{ms}\n"));
    }
    let path = out.join("timings.csv");
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

/// (x, value) series as a two-column CSV.
pub fn write_series(
    out: &Path,
    name: &str,
    header: (&str, &str),
    rows: &[(f64, f64)],
) -> anyhow::Result<()> {
    let mut text = format!("{},{}\n", header.0, header.1);
    for (x, v) in rows {
        text.push_str(&format!("{x:.17e},{v:.17e}\n"));
    }
    let path = out.join(format!("{name}.csv"));
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}
