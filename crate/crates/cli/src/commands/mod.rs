mod blowup;
mod bounds;
mod profile;
mod solve;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use capwedge::fan_bounds::DEFAULT_BETA_STEP;
use capwedge::fan_functionals::DEFAULT_EPS_LO;
use capwedge::report;
use serde_json::{json, Value};

use crate::args::{Cli, Command};
use crate::config::RunConfig;
use crate::error::{CliResult, Outcome};
use crate::functionals::check_eps_floor;

/// Settings shared by every subcommand.
pub struct Context {
    pub out: PathBuf,
    pub config: RunConfig,
    pub degrees: bool,
    pub tol: Option<f64>,
    pub eps_floor: f64,
    pub beta_step: f64,
}

impl Context {
    /// Converts an input angle to radians.
    pub fn angle(&self, value: f64) -> f64 {
        if self.degrees {
            value.to_radians()
        } else {
            value
        }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn write_manifest(&self, command: &str, body: Value) -> CliResult<()> {
        let manifest = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "degrees_input": self.degrees,
            "eps_floor": self.eps_floor,
            "beta_step": self.beta_step,
            "tol": self.tol,
            "run": body,
        });
        report::write_json(&self.path("manifest.json"), &manifest)?;
        Ok(())
    }
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    let config = RunConfig::load(g.config.as_deref())?;
    let ctx = Context {
        out: g.out.clone(),
        config,
        degrees: g.degrees,
        tol: g.tol,
        eps_floor: check_eps_floor(g.eps_floor.unwrap_or(DEFAULT_EPS_LO))?,
        beta_step: g.beta_step.unwrap_or(DEFAULT_BETA_STEP),
    };
    ensure_dir(&ctx.out)?;
    match &cli.command {
        Command::Profile(a) => profile::run(&ctx, a),
        Command::Bounds(a) => bounds::run(&ctx, a),
        Command::VerifyExamples(a) => verify::run(&ctx, a),
        Command::Solve(a) => solve::run(&ctx, a),
        Command::Blowup(a) => blowup::run(&ctx, a),
    }
}
