//! Optional JSON run configuration. Command-line flags take precedence.
//!
//! ```json
//! { "alpha": 1.0,
//!   "plus":  { "side": "+", "s_max": 1, "generator": { "type": "constant", "gamma1": 1.5707963 } },
//!   "minus": { "side": "-", "s_max": 1, "generator": { "type": "constant", "gamma1": 1.5707963 } },
//!   "solver": { "kappa": 1, "lambda": 2, "r_min": 0.001, "r_max": 1, "m": 32, "n_theta": 32,
//!               "max_iter": 200, "tol": 1e-10 } }
//! ```

use std::fs;
use std::path::Path;

use capwedge::profile_file::ProfileSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverBlock {
    pub kappa: Option<f64>,
    pub lambda: Option<f64>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub m: Option<usize>,
    pub n_theta: Option<usize>,
    pub max_iter: Option<usize>,
    pub tol: Option<f64>,
    pub n_radii: Option<usize>,
    pub fan_tol: Option<f64>,
}

/// `H(x, y, t) = (amplitude·tanh t + offset)/2`, weakly increasing for
/// `amplitude ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmcBlock {
    pub amplitude: f64,
    #[serde(default)]
    pub offset: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: Option<f64>,
    pub plus: Option<ProfileSpec>,
    pub minus: Option<ProfileSpec>,
    /// Single-wall commands (`profile`, `blowup`).
    pub profile: Option<ProfileSpec>,
    #[serde(default)]
    pub solver: SolverBlock,
    pub pmc: Option<PmcBlock>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }
}

/// Profile from a file given on the command line, or else from the config.
pub fn resolve_profile(file: Option<&Path>, fallback: Option<&ProfileSpec>, what: &str) -> CliResult<ProfileSpec> {
    match (file, fallback) {
        (Some(path), _) => Ok(ProfileSpec::load(path)?),
        (None, Some(spec)) => Ok(spec.clone()),
        (None, None) => Err(CliError::Usage(format!("no {what} profile given (flag or config)"))),
    }
}
