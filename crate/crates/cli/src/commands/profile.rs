use capwedge::fan_functionals::{sweep_profile, SweepConfig, DEFAULT_POINTS_PER_DECADE};
use capwedge::report::{self, num, AdhesionRow};
use serde_json::json;

use super::Context;
use crate::args::ProfileArgs;
use crate::config::resolve_profile;
use crate::error::{CliResult, Outcome};
use crate::functionals::pair;

pub fn run(ctx: &Context, args: &ProfileArgs) -> CliResult<Outcome> {
    let spec = resolve_profile(args.profile.as_deref(), ctx.config.profile.as_ref(), "wall")?;
    let profile = spec.build(ctx.degrees)?;

    let sweep = SweepConfig::with_floor(&profile, args.sweep_b, ctx.eps_floor, DEFAULT_POINTS_PER_DECADE)?;
    let samples = sweep_profile(&profile, args.sweep_b, &sweep)?;
    let rows = args
        .b
        .iter()
        .map(|&b| {
            let (ai, as_) = pair(&spec, &profile, b, args.method, ctx.degrees, ctx.eps_floor)?;
            Ok(AdhesionRow { ai, as_ })
        })
        .collect::<CliResult<Vec<_>>>()?;

    report::to_file(&ctx.path("sweep.csv"), |w| report::write_sweep(w, &samples))?;
    report::to_file(&ctx.path("adhesion.csv"), |w| report::write_adhesion_table(w, &rows))?;
    for r in &rows {
        println!(
            "b={} A_I={} A_S={} method={}",
            num(r.ai.b),
            num(r.ai.value),
            num(r.as_.value),
            r.ai.method.as_str()
        );
    }
    ctx.write_manifest(
        "profile",
        json!({
            "profile": spec,
            "sweep_b": args.sweep_b,
            "sweep_points": samples.len(),
            "adhesion": rows,
        }),
    )?;
    Ok(Outcome::Success)
}
