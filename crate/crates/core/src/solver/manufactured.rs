//! Manufactured-solution check for the finite-volume solver.
//!
//! With `f̂ = r² cos θ = x·r` the source `g = Nf̂ - κf̂ - λ` and the boundary
//! fluxes `Tf̂·ν` are computed in closed form, the discrete problem
//! `Nf = κf + λ + g` is solved, and the max-norm error against `f̂` is
//! measured on a sequence of meshes.

use serde::Serialize;

use crate::contact_profile::WedgeGeometry;
use crate::error::{Error, Result};
use crate::solver::capillary::{solve_general, BoundaryFluxes, Physics, SolutionField, SolverConfig};
use crate::solver::mesh::{build_sector_mesh, SectorMesh};

pub fn exact(x: f64, y: f64) -> f64 {
    x * x.hypot(y)
}

fn gradient(x: f64, y: f64) -> (f64, f64) {
    let r = x.hypot(y);
    (r + x * x / r, x * y / r)
}

fn hessian(x: f64, y: f64) -> (f64, f64, f64) {
    let r = x.hypot(y);
    let r3 = r * r * r;
    (
        3.0 * x / r - x * x * x / r3,
        y / r - x * x * y / r3,
        x / r - x * y * y / r3,
    )
}

/// `div(∇f / √(1 + |∇f|²))` from the gradient and Hessian of `f`.
pub fn mean_curvature_operator(p: (f64, f64), hess: (f64, f64, f64)) -> f64 {
    let (px, py) = p;
    let (fxx, fxy, fyy) = hess;
    let q = 1.0 + px * px + py * py;
    let num = q * (fxx + fyy) - (px * px * fxx + 2.0 * px * py * fxy + py * py * fyy);
    num / q.powf(1.5)
}

fn flux_density(x: f64, y: f64, nx: f64, ny: f64) -> f64 {
    let (px, py) = gradient(x, y);
    (px * nx + py * ny) / (1.0 + px * px + py * py).sqrt()
}

const GAUSS_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GAUSS_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

fn gauss(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    GAUSS_NODES
        .iter()
        .zip(GAUSS_WEIGHTS)
        .map(|(t, w)| w * f(c + h * t))
        .sum::<f64>()
        * h
}

fn boundary_fluxes(mesh: &SectorMesh) -> BoundaryFluxes {
    let a = mesh.alpha();
    let (ca, sa) = (a.cos(), a.sin());
    let rows = 0..=mesh.m();
    let cols = 0..=mesh.n_theta();
    // outward normals: (-sin α, cos α) on θ = α and (-sin α, -cos α) on θ = -α
    let plus_wall = rows
        .clone()
        .map(|i| {
            let (lo, hi) = mesh.cv_radial_bounds(i);
            gauss(lo, hi, |r| flux_density(r * ca, r * sa, -sa, ca))
        })
        .collect();
    let minus_wall = rows
        .map(|i| {
            let (lo, hi) = mesh.cv_radial_bounds(i);
            gauss(lo, hi, |r| flux_density(r * ca, -r * sa, -sa, -ca))
        })
        .collect();
    let arc = |radius: f64, sign: f64| -> Vec<f64> {
        cols.clone()
            .map(|j| {
                let (lo, hi) = mesh.cv_angular_bounds(j);
                gauss(lo, hi, |t| {
                    let (c, s) = (t.cos(), t.sin());
                    sign * radius * flux_density(radius * c, radius * s, c, s)
                })
            })
            .collect()
    };
    BoundaryFluxes {
        minus_wall,
        plus_wall,
        outer_arc: arc(mesh.r_max(), 1.0),
        inner_arc: arc(mesh.r_min(), -1.0),
    }
}

/// Solves the manufactured problem on `mesh`; returns the field and the
/// max-norm nodal error against `f̂`.
pub fn solve_manufactured(
    mesh: &SectorMesh,
    kappa: f64,
    lambda: f64,
    config: &SolverConfig,
) -> Result<(SolutionField, f64)> {
    if !(kappa > 0.0) {
        return Err(Error::Domain("manufactured check needs kappa > 0".into()));
    }
    let fluxes = boundary_fluxes(mesh);
    let rhs = move |x: f64, y: f64, t: f64| {
        let g = mean_curvature_operator(gradient(x, y), hessian(x, y)) - kappa * exact(x, y) - lambda;
        kappa * t + lambda + g
    };
    let mut field = solve_general(mesh, &rhs, &fluxes, config)?;
    field.physics = Physics::Capillary { kappa, lambda };
    let mut err = 0.0f64;
    for i in 0..=mesh.m() {
        for j in 0..=mesh.n_theta() {
            let (x, y) = mesh.node_xy(i, j);
            err = err.max((field.value(i, j) - exact(x, y)).abs());
        }
    }
    Ok((field, err))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub m: usize,
    pub n_theta: usize,
    pub max_error: f64,
    pub newton_iterations: usize,
    /// `log2(e_prev / e)`, absent on the coarsest mesh.
    pub order: Option<f64>,
}

/// Runs the manufactured problem with `m = n_θ = n` for each `n` in `sizes`.
pub fn convergence_study(
    geometry: WedgeGeometry,
    r_min: f64,
    r_max: f64,
    sizes: &[usize],
    kappa: f64,
    lambda: f64,
    config: &SolverConfig,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mesh = build_sector_mesh(geometry, r_min, r_max, n, n)?;
        let (field, err) = solve_manufactured(&mesh, kappa, lambda, config)?;
        field.ensure_converged()?;
        let order = rows
            .last()
            .map(|p| (p.max_error / err).ln() / (n as f64 / p.m as f64).ln());
        rows.push(ConvergenceRow {
            m: n,
            n_theta: n,
            max_error: err,
            newton_iterations: field.newton_iterations,
            order,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_match_finite_differences() {
        let (x, y) = (0.37, -0.21);
        let h = 1e-5;
        let (px, py) = gradient(x, y);
        assert!((px - (exact(x + h, y) - exact(x - h, y)) / (2.0 * h)).abs() < 1e-8);
        assert!((py - (exact(x, y + h) - exact(x, y - h)) / (2.0 * h)).abs() < 1e-8);
        let (fxx, fxy, fyy) = hessian(x, y);
        assert!((fxx - (gradient(x + h, y).0 - gradient(x - h, y).0) / (2.0 * h)).abs() < 1e-7);
        assert!((fxy - (gradient(x, y + h).0 - gradient(x, y - h).0) / (2.0 * h)).abs() < 1e-7);
        assert!((fyy - (gradient(x, y + h).1 - gradient(x, y - h).1) / (2.0 * h)).abs() < 1e-7);
    }

    #[test]
    fn flux_balance_matches_source_integral() {
        // ∮ Tf̂·ν = ∫ Nf̂ over the sector (divergence theorem).
        let mesh = build_sector_mesh(WedgeGeometry::new(1.0).unwrap(), 0.1, 1.0, 64, 64).unwrap();
        let b = boundary_fluxes(&mesh);
        let total: f64 = [&b.minus_wall, &b.plus_wall, &b.outer_arc, &b.inner_arc]
            .iter()
            .flat_map(|v| v.iter())
            .sum();
        let area: f64 = (0..=mesh.m())
            .flat_map(|i| (0..=mesh.n_theta()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let (lo, hi) = mesh.cv_radial_bounds(i);
                let (tlo, thi) = mesh.cv_angular_bounds(j);
                gauss(lo, hi, |r| {
                    gauss(tlo, thi, |t| {
                        let (x, y) = (r * t.cos(), r * t.sin());
                        r * mean_curvature_operator(gradient(x, y), hessian(x, y))
                    })
                })
            })
            .sum();
        assert!((total - area).abs() < 1e-9, "{total} vs {area}");
    }
}
