//! CSV and JSON artifacts.
//!
//! Numbers are written in shortest round-trip form (see [`num`]), so equal
//! inputs give byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::fan_bounds::FanBoundResult;
use crate::fan_functionals::AdhesionEstimate;
use crate::solver::{ConvergenceRow, RadialTrace, SolutionField};

/// Shortest round-trip form, switching to exponent notation for very small
/// or very large magnitudes.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn write_rows<W: Write, I, R>(w: W, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.write_record(row)?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `eps, averaged_cos`.
pub fn write_sweep<W: Write>(w: W, rows: &[(f64, f64)]) -> Result<()> {
    write_rows(
        w,
        &["eps", "averaged_cos"],
        rows.iter().map(|(e, a)| [num(*e), num(*a)]),
    )
}

/// One row per `b` with the liminf and limsup estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdhesionRow {
    pub ai: AdhesionEstimate,
    pub as_: AdhesionEstimate,
}

/// Columns `b, A_I, A_S, method, uncertainty`.
pub fn write_adhesion_table<W: Write>(w: W, rows: &[AdhesionRow]) -> Result<()> {
    write_rows(
        w,
        &["b", "A_I", "A_S", "method", "uncertainty"],
        rows.iter().map(|r| {
            [
                num(r.ai.b),
                num(r.ai.value),
                num(r.as_.value),
                r.ai.method.as_str().to_string(),
                num(r.ai.uncertainty.max(r.as_.uncertainty)),
            ]
        }),
    )
}

pub fn write_bounds<W: Write>(w: W, rows: &[FanBoundResult]) -> Result<()> {
    write_rows(
        w,
        &[
            "side",
            "case",
            "condition",
            "beta_min",
            "method",
            "worst_lambda",
            "monotone_flag",
            "effective_m",
            "effective_sigma",
        ],
        rows.iter().map(|r| {
            [
                r.side.to_string(),
                r.case.to_string(),
                r.condition.to_string(),
                num(r.beta_min),
                r.method.as_str().to_string(),
                opt(r.worst_lambda),
                r.monotone_flag.to_string(),
                num(r.effective_m),
                num(r.effective_sigma),
            ]
        }),
    )
}

/// Columns `lambda, difference`.
pub fn write_difference_sweep<W: Write>(w: W, rows: &[(f64, f64)]) -> Result<()> {
    write_rows(
        w,
        &["lambda", "difference"],
        rows.iter().map(|(l, d)| [num(*l), num(*d)]),
    )
}

/// Columns `r, theta, f`, rows ordered by radius then angle.
pub fn write_solution<W: Write>(w: W, field: &SolutionField) -> Result<()> {
    let mesh = &field.mesh;
    let rows = (0..=mesh.m()).flat_map(|i| {
        (0..=mesh.n_theta()).map(move |j| [num(mesh.radii()[i]), num(mesh.thetas()[j]), num(field.value(i, j))])
    });
    write_rows(w, &["r", "theta", "f"], rows)
}

/// Columns `theta, Rf, residual`.
pub fn write_trace<W: Write>(w: W, trace: &RadialTrace) -> Result<()> {
    write_rows(
        w,
        &["theta", "Rf", "residual"],
        trace
            .thetas
            .iter()
            .zip(&trace.rf)
            .zip(&trace.residual)
            .map(|((t, v), r)| [num(*t), num(*v), num(*r)]),
    )
}

pub fn write_convergence<W: Write>(w: W, rows: &[ConvergenceRow]) -> Result<()> {
    write_rows(
        w,
        &["m", "n_theta", "max_error", "order", "newton_iterations"],
        rows.iter().map(|r| {
            [
                r.m.to_string(),
                r.n_theta.to_string(),
                num(r.max_error),
                opt(r.order),
                r.newton_iterations.to_string(),
            ]
        }),
    )
}

/// Creates `path` and hands a buffered writer to `f`.
pub fn to_file<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    to_file(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)?;
        Ok(())
    })
}
