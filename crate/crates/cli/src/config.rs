//! Run configuration: quadrature order, enumeration cap, seed, tolerances.
//!
//! A JSON config file uses the same schema; explicit CLI flags override
//! file values. Every report echoes the effective configuration so a run
//! can be reproduced exactly.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative tolerance for Stokes-type residuals.
    pub stokes_rel: f64,
    /// Relative tolerance for the helicity scaling law.
    pub scaling_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            stokes_rel: 1e-6,
            scaling_rel: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Uniform per-axis quadrature points; `None` selects calibrated
    /// per-axis defaults.
    pub quad_order: Option<usize>,
    /// Cap on enumerated assignments.
    pub cap: u128,
    /// Seed for randomized suites; echoed in every report.
    pub seed: u64,
    /// Report sink (appended as JSON lines); stdout when absent.
    pub out: Option<PathBuf>,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quad_order: None,
            cap: helicap::recognition::DEFAULT_ENUMERATION_CAP,
            seed: 0,
            out: None,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("invalid config JSON in {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerances.stokes_rel > 0.0) || !(self.tolerances.scaling_rel > 0.0) {
            bail!("tolerances must be positive");
        }
        if let Some(q) = self.quad_order {
            if q == 0 {
                bail!("quadrature order must be positive");
            }
        }
        if self.cap == 0 {
            bail!("enumeration cap must be positive");
        }
        Ok(())
    }

    pub fn quadrature(&self) -> helicap::geometry::QuadratureSpec {
        match self.quad_order {
            Some(q) => helicap::geometry::QuadratureSpec::with_order(q),
            None => helicap::geometry::QuadratureSpec::default(),
        }
    }
}
