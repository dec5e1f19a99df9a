use capwedge::contact_profile::{
    theorem1_applicability, ContactProfile, GammaBoundsHypothesis, Side, Theorem1Verdict, WedgeGeometry,
};
use capwedge::report;
use capwedge::solver::{
    bounds_estimate, build_sector_mesh, convergence_study, measure_trace, radial_trace, solve_capillary, solve_pmc,
    torus_minor_radius, RadialTrace, SolutionField, SolverConfig,
};
use capwedge::Error;
use serde_json::{json, Value};

use super::Context;
use crate::args::SolveArgs;
use crate::config::resolve_profile;
use crate::error::{CliError, CliResult, Outcome};

const SYMMETRY_TOL: f64 = 1e-8;
const MIN_ORDER: f64 = 1.9;

struct Params {
    alpha: f64,
    kappa: f64,
    lambda: f64,
    r_min: f64,
    r_max: f64,
    m: usize,
    n_theta: usize,
    n_radii: usize,
    fan_tol: Option<f64>,
    solver: SolverConfig,
}

fn params(ctx: &Context, a: &SolveArgs) -> CliResult<Params> {
    let c = &ctx.config.solver;
    let alpha = a
        .alpha
        .map(|x| ctx.angle(x))
        .or(ctx.config.alpha.map(|x| ctx.angle(x)))
        .ok_or_else(|| CliError::Usage("--alpha (or `alpha` in the config) is required".into()))?;
    let defaults = SolverConfig::default();
    Ok(Params {
        alpha,
        kappa: a.kappa.or(c.kappa).unwrap_or(1.0),
        lambda: a.lambda.or(c.lambda).unwrap_or(0.0),
        r_min: a.r_min.or(c.r_min).unwrap_or(1e-3),
        r_max: a.r_max.or(c.r_max).unwrap_or(1.0),
        m: a.m.or(c.m).unwrap_or(32),
        n_theta: a.n_theta.or(c.n_theta).unwrap_or(32),
        n_radii: a.n_radii.or(c.n_radii).unwrap_or(4),
        fan_tol: a.fan_tol.or(c.fan_tol),
        solver: SolverConfig {
            tol: ctx.tol.or(c.tol).unwrap_or(defaults.tol),
            max_iter: a.max_iter.or(c.max_iter).unwrap_or(defaults.max_iter),
            initial_guess: None,
        },
    })
}

fn wall(
    ctx: &Context,
    side: Side,
    gamma: Option<f64>,
    file: Option<&std::path::Path>,
    r_max: f64,
) -> CliResult<(ContactProfile, Value)> {
    if let Some(g) = gamma {
        if file.is_some() {
            return Err(CliError::Usage(format!(
                "wall {side}: give a constant angle or a profile file, not both"
            )));
        }
        let g = ctx.angle(g);
        return Ok((ContactProfile::constant(side, g, r_max)?, json!({ "constant": g })));
    }
    let fallback = match side {
        Side::Plus => ctx.config.plus.as_ref(),
        Side::Minus => ctx.config.minus.as_ref(),
    };
    let spec = resolve_profile(file, fallback, &format!("{side} wall"))?;
    let profile = spec.build(ctx.degrees)?.with_side(side);
    Ok((profile, serde_json::to_value(&spec).unwrap_or(Value::Null)))
}

fn same_profile(a: &ContactProfile, b: &ContactProfile) -> bool {
    a.segment_ends() == b.segment_ends() && a.segment_values() == b.segment_values()
}

pub fn run(ctx: &Context, a: &SolveArgs) -> CliResult<Outcome> {
    let p = params(ctx, a)?;
    let geometry = WedgeGeometry::new(p.alpha)?;
    if a.manufactured {
        return run_manufactured(ctx, &p, geometry, &a.sizes);
    }

    let (plus, plus_desc) = wall(ctx, Side::Plus, a.gamma_plus, a.plus.as_deref(), p.r_max)?;
    let (minus, minus_desc) = wall(ctx, Side::Minus, a.gamma_minus, a.minus.as_deref(), p.r_max)?;
    let mesh = build_sector_mesh(geometry, p.r_min, p.r_max, p.m, p.n_theta)?;
    if p.n_radii < 2 || p.n_radii > p.m {
        return Err(Error::Domain(format!("n_radii must lie in 2..={}, got {}", p.m, p.n_radii)).into());
    }

    let (field, physics) = match ctx.config.pmc {
        Some(pmc) => {
            let h = move |_x: f64, _y: f64, t: f64| 0.5 * (pmc.amplitude * t.tanh() + pmc.offset);
            let field = solve_pmc(&mesh, &h, &plus, &minus, &p.solver)?;
            (
                field,
                json!({ "type": "pmc", "model": "tanh", "amplitude": pmc.amplitude, "offset": pmc.offset }),
            )
        }
        None => (
            solve_capillary(&mesh, p.kappa, p.lambda, &plus, &minus, &p.solver)?,
            json!({ "type": "capillary", "kappa": p.kappa, "lambda": p.lambda }),
        ),
    };

    // an unconverged field still gets its trace written, for diagnosis
    let trace = match radial_trace(&field, p.n_radii) {
        Ok(t) => t,
        Err(Error::Unconverged) => unchecked_trace(&field, p.n_radii)?,
        Err(e) => return Err(e.into()),
    };
    let fans = match measure_trace(&trace, p.fan_tol) {
        Ok(m) => serde_json::to_value(&m).unwrap_or(Value::Null),
        Err(Error::Unclassified(msg)) => json!({ "case": "unclassified", "diagnostics": msg }),
        Err(e) => return Err(e.into()),
    };

    report::to_file(&ctx.path("solution.csv"), |w| report::write_solution(w, &field))?;
    report::to_file(&ctx.path("trace.csv"), |w| report::write_trace(w, &trace))?;
    report::write_json(&ctx.path("fans.json"), &fans)?;

    let (m1, m2) = bounds_estimate(&field)?;
    let symmetry = same_profile(&plus, &minus).then(|| {
        let asym = field.reflection_asymmetry();
        json!({ "asymmetry": asym, "tol": SYMMETRY_TOL, "verdict": if asym <= SYMMETRY_TOL { "PASS" } else { "FAIL" } })
    });
    let hyp = GammaBoundsHypothesis::from_profiles(&plus, &minus);
    let applicability = match theorem1_applicability(&geometry, &hyp) {
        Theorem1Verdict::NonconvexOk => "nonconvex_ok",
        Theorem1Verdict::ConvexOk => "convex_ok",
        Theorem1Verdict::Fails => "fails",
    };

    println!(
        "converged={} iterations={} residual={:e} fans={}",
        field.converged,
        field.newton_iterations,
        field.residual_norm,
        fans.get("case").and_then(Value::as_str).unwrap_or("?")
    );
    for w in &field.warnings {
        eprintln!("warning: {w}");
    }
    ctx.write_manifest(
        "solve",
        json!({
            "mesh": { "alpha": p.alpha, "r_min": p.r_min, "r_max": p.r_max, "m": p.m, "n_theta": p.n_theta },
            "physics": physics,
            "profiles": { "plus": plus_desc, "minus": minus_desc },
            "solver": p.solver,
            "converged": field.converged,
            "residual_norm": field.residual_norm,
            "newton_iterations": field.newton_iterations,
            "history": field.history,
            "nullspace_pinned": field.nullspace_pinned,
            "warnings": field.warnings,
            "applicability": applicability,
            "bounds": { "M1": m1, "M2": m2, "torus_minor_radius": torus_minor_radius(m2)? },
            "n_radii": p.n_radii,
            "median_trace_residual": trace.median_residual(),
            "fans": fans,
            "symmetry_check": symmetry,
        }),
    )?;
    Ok(if field.converged {
        Outcome::Success
    } else {
        Outcome::NotConverged
    })
}

fn unchecked_trace(field: &SolutionField, n_radii: usize) -> CliResult<RadialTrace> {
    let mut copy = field.clone();
    copy.converged = true;
    Ok(radial_trace(&copy, n_radii)?)
}

fn run_manufactured(ctx: &Context, p: &Params, geometry: WedgeGeometry, sizes: &[usize]) -> CliResult<Outcome> {
    if sizes.len() < 2 || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(
            "--sizes needs at least two increasing mesh sizes".into(),
        ));
    }
    let rows = match convergence_study(geometry, p.r_min, p.r_max, sizes, p.kappa, p.lambda, &p.solver) {
        Ok(rows) => rows,
        Err(e @ Error::NotConverged { .. }) => {
            ctx.write_manifest("solve", json!({ "mode": "manufactured", "error": e.to_string() }))?;
            return Ok(Outcome::NotConverged);
        }
        Err(e) => return Err(e.into()),
    };
    report::to_file(&ctx.path("convergence.csv"), |w| report::write_convergence(w, &rows))?;
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    let slope = (first.max_error / last.max_error).ln() / (last.m as f64 / first.m as f64).ln();
    for r in &rows {
        println!(
            "n={} max_error={:e} order={}",
            r.m,
            r.max_error,
            r.order.map_or("-".into(), |o| format!("{o:.3}"))
        );
    }
    let pass = slope >= MIN_ORDER;
    println!(
        "{} convergence slope {slope:.3} (need >= {MIN_ORDER})",
        if pass { "PASS" } else { "FAIL" }
    );
    ctx.write_manifest(
        "solve",
        json!({
            "mode": "manufactured",
            "exact": "r^2 cos(theta)",
            "alpha": p.alpha,
            "kappa": p.kappa,
            "lambda": p.lambda,
            "r_min": p.r_min,
            "r_max": p.r_max,
            "solver": p.solver,
            "rows": rows,
            "slope": slope,
            "passed": pass,
        }),
    )?;
    Ok(if pass { Outcome::Success } else { Outcome::VerifyFailed })
}
