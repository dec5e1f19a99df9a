use std::f64::consts::PI;

use capwedge::blowup_geometry::{contradiction_witness, limiting_difference_sweep};
use capwedge::contact_profile::Side;
use capwedge::fan_bounds::{case_condition_map, AdhesionFunction, FanCase, LambdaGrid};
use capwedge::report;
use serde_json::json;

use super::Context;
use crate::args::BlowupArgs;
use crate::config::resolve_profile;
use crate::error::{CliError, CliResult, Outcome};
use crate::functionals::function;

pub fn run(ctx: &Context, args: &BlowupArgs) -> CliResult<Outcome> {
    let side: Side = args
        .side
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown side {:?}; expected + or -", args.side)))?;
    let case: FanCase = args
        .case
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown case {:?}; expected I, D, ID or DI", args.case)))?;
    let beta = ctx.angle(args.beta);
    if !(0.0..PI).contains(&beta) {
        return Err(CliError::Usage(format!("beta={beta} must lie in [0, pi)")));
    }
    let condition = case_condition_map(case)
        .into_iter()
        .find(|(s, _)| *s == side)
        .map(|(_, k)| k)
        .expect("both walls are constrained");
    let kind = condition.adhesion_kind();

    if args.gamma.is_some() && args.profile.is_some() {
        return Err(CliError::Usage("give either --gamma or --profile, not both".into()));
    }
    let (a, source) = if let Some(g) = args.gamma {
        let g = ctx.angle(g);
        if !(0.0..=PI).contains(&g) {
            return Err(CliError::Usage(format!("gamma={g} must lie in [0, pi]")));
        }
        (AdhesionFunction::constant_angle(kind, g), json!({ "gamma": g }))
    } else {
        let spec = resolve_profile(args.profile.as_deref(), ctx.config.profile.as_ref(), "wall")?;
        let profile = spec.build(ctx.degrees)?;
        let a = function(&spec, &profile, kind, args.method, ctx.degrees, ctx.eps_floor)?;
        (a, json!({ "profile": spec }))
    };

    let grid = LambdaGrid::default();
    let sweep = limiting_difference_sweep(&a, case, side, beta, &grid)?;
    let witness = contradiction_witness(&a, case, side, beta, &grid)?;
    report::to_file(&ctx.path("difference.csv"), |w| {
        report::write_difference_sweep(w, &sweep)
    })?;

    let verdict = match witness {
        Some(w) => {
            println!("contradiction: lambda={} difference={}", w.lambda, w.value);
            json!({ "verdict": "contradiction", "lambda": w.lambda, "difference": w.value })
        }
        None => {
            println!("consistent");
            json!({ "verdict": "consistent" })
        }
    };
    ctx.write_manifest(
        "blowup",
        json!({
            "side": side.to_string(),
            "case": case.to_string(),
            "condition": condition.to_string(),
            "beta": beta,
            "functional": a.label(),
            "source": source,
            "lambda_points": grid.points,
            "result": verdict,
        }),
    )?;
    Ok(Outcome::Success)
}
