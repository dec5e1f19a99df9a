//! Closed-form identities of the two oscillating examples, each checked by
//! the exact evaluator and by a sweep.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;

use capwedge::contact_profile::{ContactProfile, Side};
use capwedge::fan_bounds::{default_b_grid, effective_angle, AdhesionFunction};
use capwedge::fan_functionals::{exact_a_example1, exact_a_log_periodic, AdhesionKind, DEFAULT_POINTS_PER_DECADE};
use serde::Serialize;
use serde_json::json;

use super::Context;
use crate::args::VerifyArgs;
use crate::error::{CliError, CliResult, Outcome};
use crate::functionals::sweep_pair;

const EXAMPLE1_DEPTH: usize = 32;
const EXAMPLE2_DEPTH: usize = 500;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub exact_error: f64,
    pub exact_tol: f64,
    pub sweep_error: f64,
    pub sweep_tol: f64,
}

impl Check {
    fn exact_ok(&self) -> bool {
        self.exact_error <= self.exact_tol
    }

    fn sweep_ok(&self) -> bool {
        self.sweep_error <= self.sweep_tol
    }

    pub fn passed(&self) -> bool {
        self.exact_ok() && self.sweep_ok()
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn max_err(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN must not slip through as a pass
    values
        .into_iter()
        .fold(0.0, |a, e| if e.is_nan() || a.is_nan() { f64::NAN } else { a.max(e) })
}

fn worst(err: f64) -> f64 {
    if err.is_nan() {
        f64::INFINITY
    } else {
        err
    }
}

pub fn checks(g1: f64, g2: f64, bs: &[f64], eps_floor: f64) -> CliResult<Vec<Check>> {
    let (c1, c2) = (g1.cos(), g2.cos());
    let ex1 = ContactProfile::example1(Side::Plus, g1, g2, EXAMPLE1_DEPTH)?;
    let ex2 = ContactProfile::example2(Side::Plus, g1, g2, EXAMPLE2_DEPTH)?;
    let m_i2 = c1 / 3.0 + 2.0 * c2 / 3.0;
    let m_s2 = 2.0 * c1 / 3.0 + c2 / 3.0;

    let mut e1 = Vec::new();
    let mut s1 = Vec::new();
    let mut e2 = Vec::new();
    let mut s2 = Vec::new();
    for &b in bs {
        let (ai, as_) = exact_a_example1(g1, g2, b)?;
        let (wi, ws) = sweep_pair(&ex1, b, eps_floor)?;
        e1.push(((ai.value - b * c2).abs(), (as_.value - b * c1).abs()));
        s1.push(((wi.value - b * c2).abs() / b, (ws.value - b * c1).abs() / b));
        let (ai, as_) = exact_a_log_periodic(&ex2, b, 4.0)?;
        let (wi, ws) = sweep_pair(&ex2, b, eps_floor)?;
        e2.push(((ai.value - b * m_i2).abs(), (as_.value - b * m_s2).abs()));
        s2.push(((wi.value - b * m_i2).abs(), (ws.value - b * m_s2).abs()));
    }

    let grid = default_b_grid();
    let (_, sigma1) = effective_angle(&AdhesionFunction::example1(AdhesionKind::I, g1, g2), &grid)?;
    let sweep1 = AdhesionFunction::sweep(AdhesionKind::I, ex1.clone(), eps_floor, DEFAULT_POINTS_PER_DECADE);
    let (m1_sweep, _) = effective_angle(&sweep1, &grid)?;
    let (m2, _) = effective_angle(&AdhesionFunction::log_periodic(AdhesionKind::I, &ex2, 4.0)?, &grid)?;
    let sweep2 = AdhesionFunction::sweep(AdhesionKind::I, ex2.clone(), eps_floor, DEFAULT_POINTS_PER_DECADE);
    let (m2_sweep, _) = effective_angle(&sweep2, &grid)?;

    let col = |v: &[(f64, f64)], first: bool| worst(max_err(v.iter().map(|p| if first { p.0 } else { p.1 })));
    Ok(vec![
        Check {
            name: "example1_A_I",
            exact_error: col(&e1, true),
            exact_tol: 1e-12,
            sweep_error: col(&s1, true),
            sweep_tol: 0.05,
        },
        Check {
            name: "example1_A_S",
            exact_error: col(&e1, false),
            exact_tol: 1e-12,
            sweep_error: col(&s1, false),
            sweep_tol: 0.05,
        },
        Check {
            name: "example2_A_I",
            exact_error: col(&e2, true),
            exact_tol: 1e-9,
            sweep_error: col(&s2, true),
            sweep_tol: 1e-3,
        },
        Check {
            name: "example2_A_S",
            exact_error: col(&e2, false),
            exact_tol: 1e-9,
            sweep_error: col(&s2, false),
            sweep_tol: 1e-3,
        },
        Check {
            name: "example1_effective_angle",
            exact_error: worst((sigma1 - g2).abs()),
            exact_tol: 1e-6,
            sweep_error: worst((m1_sweep - c2).abs()),
            sweep_tol: 0.05,
        },
        Check {
            name: "example2_effective_angle",
            exact_error: worst((m2 - m_i2).abs()),
            exact_tol: 1e-9,
            sweep_error: worst((m2_sweep - m_i2).abs()),
            sweep_tol: 1e-3,
        },
    ])
}

pub fn run(ctx: &Context, args: &VerifyArgs) -> CliResult<Outcome> {
    let g1 = ctx.angle(args.g1.unwrap_or(if ctx.degrees { 60.0 } else { PI / 3.0 }));
    let g2 = ctx.angle(args.g2.unwrap_or(if ctx.degrees { 120.0 } else { 2.0 * PI / 3.0 }));
    if !(0.0..=PI).contains(&g1) || !(0.0..=PI).contains(&g2) || g1 > g2 {
        return Err(CliError::Usage(format!(
            "need 0 <= g1 <= g2 <= pi, got g1={g1}, g2={g2}"
        )));
    }
    if args.b.is_empty() || args.b.iter().any(|&b| !(b > 0.0 && b <= 1.0)) {
        return Err(CliError::Usage("every b must lie in (0, 1]".into()));
    }
    let list = checks(g1, g2, &args.b, ctx.eps_floor)?;

    let mut text = String::new();
    for c in &list {
        let _ = writeln!(
            text,
            "{} {}: exact {} err={:.3e} tol={:.0e}; sweep {} err={:.3e} tol={:.0e}",
            verdict(c.passed()),
            c.name,
            verdict(c.exact_ok()),
            c.exact_error,
            c.exact_tol,
            verdict(c.sweep_ok()),
            c.sweep_error,
            c.sweep_tol
        );
    }
    print!("{text}");
    fs::write(ctx.path("verify.txt"), &text)?;
    let all = list.iter().all(Check::passed);
    ctx.write_manifest(
        "verify-examples",
        json!({ "g1": g1, "g2": g2, "b": args.b, "checks": list, "passed": all }),
    )?;
    Ok(if all { Outcome::Success } else { Outcome::VerifyFailed })
}
