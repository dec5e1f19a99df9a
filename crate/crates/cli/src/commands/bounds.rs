use capwedge::contact_profile::Side;
use capwedge::fan_bounds::{bounds_for_case, default_b_grid, CornerFunctionals, FanCase, FanScan, LambdaGrid};
use capwedge::fan_functionals::AdhesionKind;
use capwedge::report::{self, num};
use serde_json::json;

use super::Context;
use crate::args::BoundsArgs;
use crate::config::resolve_profile;
use crate::error::{CliError, CliResult, Outcome};
use crate::functionals::function;

pub fn parse_cases(tag: &str) -> CliResult<Vec<FanCase>> {
    if tag == "all" {
        return Ok(FanCase::ALL.to_vec());
    }
    tag.parse::<FanCase>()
        .map(|c| vec![c])
        .map_err(|_| CliError::Usage(format!("unknown case {tag:?}; expected I, D, ID, DI or all")))
}

pub fn run(ctx: &Context, args: &BoundsArgs) -> CliResult<Outcome> {
    let cases = parse_cases(&args.case)?;
    let plus_spec = resolve_profile(args.plus.as_deref(), ctx.config.plus.as_ref(), "+ wall")?;
    let minus_spec = resolve_profile(args.minus.as_deref(), ctx.config.minus.as_ref(), "- wall")?;
    let plus = plus_spec.build(ctx.degrees)?.with_side(Side::Plus);
    let minus = minus_spec.build(ctx.degrees)?.with_side(Side::Minus);

    let f = |spec, profile, kind| function(spec, profile, kind, args.method, ctx.degrees, ctx.eps_floor);
    let functionals = CornerFunctionals {
        plus_i: f(&plus_spec, &plus, AdhesionKind::I)?,
        plus_s: f(&plus_spec, &plus, AdhesionKind::S)?,
        minus_i: f(&minus_spec, &minus, AdhesionKind::I)?,
        minus_s: f(&minus_spec, &minus, AdhesionKind::S)?,
    };
    let scan = FanScan {
        beta_step: ctx.beta_step,
        lambda_grid: LambdaGrid::default(),
    };
    let b_grid = default_b_grid();
    let mut rows = Vec::new();
    for case in cases {
        rows.extend(bounds_for_case(&functionals, case, &scan, &b_grid)?);
    }

    report::to_file(&ctx.path("bounds.csv"), |w| report::write_bounds(w, &rows))?;
    for r in &rows {
        println!(
            "case={} side={} condition={} beta_min={} sigma={} monotone={}",
            r.case,
            r.side,
            r.condition,
            num(r.beta_min),
            num(r.effective_sigma),
            r.monotone_flag
        );
    }
    let labels = json!({
        "plus_i": functionals.plus_i.label(),
        "plus_s": functionals.plus_s.label(),
        "minus_i": functionals.minus_i.label(),
        "minus_s": functionals.minus_s.label(),
    });
    ctx.write_manifest(
        "bounds",
        json!({
            "plus": plus_spec,
            "minus": minus_spec,
            "case": args.case,
            "functionals": labels,
            "lambda_points": scan.lambda_grid.points,
            "lambda_margin": scan.lambda_grid.margin,
            "rows": rows.len(),
        }),
    )?;
    Ok(Outcome::Success)
}
