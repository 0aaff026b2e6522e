use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _};
use serde::{Deserialize, Serialize};

use hotrans::harness::{GridSpec, SuiteSpec};
use hotrans::root_datum::{RootDatum, RootDatumKind};

pub const DEFAULT_SEED: u64 = 17;

/// One harness run: datum, grid overrides, suite list, output location and
/// the seed for the randomized property suites.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    pub datum: RootDatumKind,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default, rename = "suite")]
    pub suites: Vec<SuiteSpec>,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl SuiteConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: SuiteConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        config.validate(path)?;
        Ok(config)
    }

    pub fn build_datum(&self) -> anyhow::Result<RootDatum> {
        Ok(match &self.datum {
            RootDatumKind::RankOne { m_alpha, m_2alpha } => {
                RootDatum::rank_one(*m_alpha, *m_2alpha)?
            }
            RootDatumKind::FlatProductZ2n { multiplicities } => {
                RootDatum::flat_product(multiplicities.clone())?
            }
        })
    }

    pub fn grid_spec(&self) -> GridSpec {
        self.grid.unwrap_or_default()
    }

    /// All downstream parameter validation, attributed to the config file.
    fn validate(&self, path: &Path) -> anyhow::Result<()> {
        let datum = self
            .build_datum()
            .with_context(|| format!("{}: [datum]", path.display()))?;
        let g = self.grid_spec();
        if g.x_max <= 0.0
            || g.x_panels == 0
            || g.spectral_max <= 0.0
            || g.spectral_panels == 0
            || g.order == 0
        {
            bail!("{}: [grid] values must be positive", path.display());
        }
        if !self.suites.is_empty() && !datum.is_rank_one() {
            bail!(
                "{}: the suite harness needs a rank_one datum; flat_product_z2n data are \
                 exercised through the library API",
                path.display()
            );
        }
        for (i, suite) in self.suites.iter().enumerate() {
            suite.validate_params(&datum).map_err(|e| {
                anyhow::anyhow!(
                    "{}: [[suite]] #{} ({}): {e}",
                    path.display(),
                    i + 1,
                    suite.id()
                )
            })?;
        }
        Ok(())
    }
}
