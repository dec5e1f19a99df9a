//! Finite-volume damped Newton solver for `div(Tf) = 2H(x, y, f)` with
//! `Tf·ν` prescribed on the boundary, `Tf = ∇f / √(1 + |∇f|²)`.
//!
//! The discretisation is vertex-centred on the polar grid, written in
//! `ρ = ln r` so that the graded mesh is uniform. Through a face of constant
//! `ρ` the flux is `∫ f_ρ/W dθ`; through a face of constant `θ` it is
//! `∫ f_θ/W dρ`, with `W = √(1 + (f_ρ² + f_θ²)/r²)`. On the two walls the
//! flux is the exact integral of `cos γ` over the control-volume edge.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use serde::Serialize;

use crate::contact_profile::{theorem1_applicability, ContactProfile, GammaBoundsHypothesis, Theorem1Verdict};
use crate::error::{Error, Result};
use crate::solver::mesh::SectorMesh;

/// Right-hand side `Nf = rhs(x, y, f)`.
pub type Rhs<'a> = dyn Fn(f64, f64, f64) -> f64 + Sync + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    /// Constant starting value; by default the root of the right-hand side
    /// at the sector centre.
    pub initial_guess: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
            initial_guess: None,
        }
    }
}

/// Outward boundary fluxes per control volume.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFluxes {
    /// Wall `θ = -α`, indexed by radial row.
    pub minus_wall: Vec<f64>,
    /// Wall `θ = α`, indexed by radial row.
    pub plus_wall: Vec<f64>,
    /// Arc `r = r_max`, indexed by angular column.
    pub outer_arc: Vec<f64>,
    /// Arc `r = r_min`, indexed by angular column.
    pub inner_arc: Vec<f64>,
}

impl BoundaryFluxes {
    /// `Tf·ν = cos γ±` on the walls and no flux on the artificial arcs.
    pub fn from_profiles(mesh: &SectorMesh, plus: &ContactProfile, minus: &ContactProfile) -> Result<Self> {
        let wall = |p: &ContactProfile| -> Result<Vec<f64>> {
            if p.s_max() < mesh.r_max() {
                return Err(Error::Domain(format!(
                    "profile covers s <= {} but the mesh reaches r = {}",
                    p.s_max(),
                    mesh.r_max()
                )));
            }
            (0..=mesh.m())
                .map(|i| {
                    let (lo, hi) = mesh.cv_radial_bounds(i);
                    Ok(p.cos_integral(hi)? - p.cos_integral(lo)?)
                })
                .collect()
        };
        let zeros = vec![0.0; mesh.n_theta() + 1];
        Ok(Self {
            minus_wall: wall(minus)?,
            plus_wall: wall(plus)?,
            outer_arc: zeros.clone(),
            inner_arc: zeros,
        })
    }

    fn total(&self) -> f64 {
        [&self.minus_wall, &self.plus_wall, &self.outer_arc, &self.inner_arc]
            .iter()
            .flat_map(|v| v.iter())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Physics {
    /// `Nf = κf + λ`
    Capillary { kappa: f64, lambda: f64 },
    /// `Nf = 2H(x, y, f)`; nodal values of `H` at the solution.
    Pmc {
        #[serde(skip)]
        h_values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionField {
    pub mesh: SectorMesh,
    /// Nodal values, row-major in `(i, j)`.
    pub values: Vec<f64>,
    pub physics: Physics,
    pub converged: bool,
    pub residual_norm: f64,
    pub newton_iterations: usize,
    pub history: Vec<f64>,
    /// Set when the right-hand side does not depend on `f`, so the mean
    /// value was fixed to zero.
    pub nullspace_pinned: bool,
    pub warnings: Vec<String>,
}

impl SolutionField {
    /// Samples `f(r, θ)` on the mesh. The field counts as converged.
    pub fn from_fn(mesh: SectorMesh, physics: Physics, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(mesh.node_count());
        for &r in mesh.radii() {
            for &t in mesh.thetas() {
                values.push(f(r, t));
            }
        }
        Self {
            mesh,
            values,
            physics,
            converged: true,
            residual_norm: 0.0,
            newton_iterations: 0,
            history: Vec::new(),
            nullspace_pinned: false,
            warnings: Vec::new(),
        }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.mesh.index(i, j)]
    }

    pub fn ensure_converged(&self) -> Result<&Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                iterations: self.newton_iterations,
                residual: self.residual_norm,
                history: self.history.clone(),
            })
        }
    }

    /// `max |f(r, θ) - f(r, -θ)|` over the grid.
    pub fn reflection_asymmetry(&self) -> f64 {
        let n = self.mesh.n_theta();
        (0..=self.mesh.m())
            .flat_map(|i| (0..=n).map(move |j| (i, j)))
            .map(|(i, j)| (self.value(i, j) - self.value(i, n - j)).abs())
            .fold(0.0, f64::max)
    }
}

/// Where the source of one control volume is sampled: the midpoint of the
/// volume in `(ρ, θ)`, with `f` interpolated bilinearly from the node and
/// its neighbours toward the interior. Interior volumes use the node itself.
#[derive(Debug, Clone, Copy)]
struct SourcePoint {
    x: f64,
    y: f64,
    k_i: usize,
    k_j: usize,
    k_ij: usize,
    w_i: f64,
    w_j: f64,
}

struct Discretization<'a> {
    mesh: &'a SectorMesh,
    rhs: &'a Rhs<'a>,
    fluxes: &'a BoundaryFluxes,
    sources: Vec<SourcePoint>,
    areas: Vec<f64>,
    inv_measure: Vec<f64>,
}

impl<'a> Discretization<'a> {
    fn new(mesh: &'a SectorMesh, rhs: &'a Rhs<'a>, fluxes: &'a BoundaryFluxes) -> Self {
        let (m, n) = (mesh.m(), mesh.n_theta());
        let (h, dt) = (mesh.log_step(), mesh.theta_step());
        let mut sources = Vec::with_capacity(mesh.node_count());
        let mut areas = Vec::with_capacity(mesh.node_count());
        let mut inv_measure = Vec::with_capacity(mesh.node_count());
        for i in 0..=m {
            let wr = if i == 0 || i == m { 0.5 * h } else { h };
            let (ii, w_i, r) = match i {
                0 => (1, 0.25, mesh.radii()[0] * (-0.25 * h).exp()),
                _ if i == m => (m - 1, 0.25, mesh.radii()[m] * (0.25 * h).exp()),
                _ => (i, 0.0, mesh.radii()[i]),
            };
            for j in 0..=n {
                let wt = if j == 0 || j == n { 0.5 * dt } else { dt };
                let t = mesh.thetas()[j];
                let (jj, w_j, t) = match j {
                    0 => (1, 0.25, t + 0.25 * dt),
                    _ if j == n => (n - 1, 0.25, t - 0.25 * dt),
                    _ => (j, 0.0, t),
                };
                sources.push(SourcePoint {
                    x: r * t.cos(),
                    y: r * t.sin(),
                    k_i: mesh.index(ii, j),
                    k_j: mesh.index(i, jj),
                    k_ij: mesh.index(ii, jj),
                    w_i,
                    w_j,
                });
                areas.push(mesh.cv_area(i, j));
                inv_measure.push(1.0 / (wr * wt));
            }
        }
        Self {
            mesh,
            rhs,
            fluxes,
            sources,
            areas,
            inv_measure,
        }
    }

    fn len(&self) -> usize {
        self.areas.len()
    }

    /// `∫ rhs` over control volume `k`, by the midpoint rule.
    fn source(&self, f: &[f64], k: usize) -> f64 {
        let p = &self.sources[k];
        let f0 = f[k];
        let v = f0
            + p.w_i * (f[p.k_i] - f0)
            + p.w_j * (f[p.k_j] - f0)
            + p.w_i * p.w_j * (f0 - f[p.k_i] - f[p.k_j] + f[p.k_ij]);
        (self.rhs)(p.x, p.y, v) * self.areas[k]
    }

    /// Net outward flux minus source for every control volume. Fluxes through
    /// the half-length faces of boundary volumes are sampled at the face
    /// midpoints so that the scheme stays second order up to the boundary.
    fn residual(&self, f: &[f64], out: &mut [f64]) {
        let mesh = self.mesh;
        let (m, n) = (mesh.m(), mesh.n_theta());
        let (h, dt) = (mesh.log_step(), mesh.theta_step());
        let cols = n + 1;
        let at = |i: usize, j: usize| f[i * cols + j];

        let mut d_theta = vec![0.0; f.len()];
        let mut d_rho = vec![0.0; f.len()];
        for i in 0..=m {
            for j in 0..=n {
                d_theta[i * cols + j] = if j == 0 {
                    (-3.0 * at(i, 0) + 4.0 * at(i, 1) - at(i, 2)) / (2.0 * dt)
                } else if j == n {
                    (3.0 * at(i, n) - 4.0 * at(i, n - 1) + at(i, n - 2)) / (2.0 * dt)
                } else {
                    (at(i, j + 1) - at(i, j - 1)) / (2.0 * dt)
                };
                // ρ decreases with i
                d_rho[i * cols + j] = if i == 0 {
                    (3.0 * at(0, j) - 4.0 * at(1, j) + at(2, j)) / (2.0 * h)
                } else if i == m {
                    (-3.0 * at(m, j) + 4.0 * at(m - 1, j) - at(m - 2, j)) / (2.0 * h)
                } else {
                    (at(i - 1, j) - at(i + 1, j)) / (2.0 * h)
                };
            }
        }

        for (k, o) in out.iter_mut().enumerate() {
            *o = -self.source(f, k);
        }
        for i in 0..=m {
            out[i * cols] += self.fluxes.minus_wall[i];
            out[i * cols + n] += self.fluxes.plus_wall[i];
        }
        for j in 0..=n {
            out[j] += self.fluxes.outer_arc[j];
            out[m * cols + j] += self.fluxes.inner_arc[j];
        }

        // derivatives on the face between rows i and i+1 at column j
        let fr_face = |i: usize, j: usize| (at(i, j) - at(i + 1, j)) / h;
        let ft_face = |i: usize, j: usize| 0.5 * (d_theta[i * cols + j] + d_theta[(i + 1) * cols + j]);
        // derivatives on the face between columns j and j+1 in row i
        let ft_side = |i: usize, j: usize| (at(i, j + 1) - at(i, j)) / dt;
        let fr_side = |i: usize, j: usize| 0.5 * (d_rho[i * cols + j] + d_rho[i * cols + j + 1]);

        let radii = mesh.radii();
        for i in 0..m {
            let r_face = (radii[i] * radii[i + 1]).sqrt();
            for j in 0..=n {
                let (fr, ft, wt) = if j == 0 {
                    let mid = 0.5 * (ft_side(i, 0) + ft_side(i + 1, 0));
                    (
                        fr_face(i, 0) + 0.25 * (fr_face(i, 1) - fr_face(i, 0)),
                        0.5 * (ft_face(i, 0) + mid),
                        0.5 * dt,
                    )
                } else if j == n {
                    let mid = 0.5 * (ft_side(i, n - 1) + ft_side(i + 1, n - 1));
                    (
                        fr_face(i, n) + 0.25 * (fr_face(i, n - 1) - fr_face(i, n)),
                        0.5 * (ft_face(i, n) + mid),
                        0.5 * dt,
                    )
                } else {
                    (fr_face(i, j), ft_face(i, j), dt)
                };
                let w = (1.0 + (fr * fr + ft * ft) / (r_face * r_face)).sqrt();
                let g = fr / w * wt;
                out[(i + 1) * cols + j] += g;
                out[i * cols + j] -= g;
            }
        }
        let quarter = (0.25 * h).exp();
        for i in 0..=m {
            for j in 0..n {
                let (ft, fr, r, wr) = if i == 0 {
                    let mid = 0.5 * (fr_face(0, j) + fr_face(0, j + 1));
                    (
                        ft_side(0, j) + 0.25 * (ft_side(1, j) - ft_side(0, j)),
                        0.5 * (fr_side(0, j) + mid),
                        radii[0] / quarter,
                        0.5 * h,
                    )
                } else if i == m {
                    let mid = 0.5 * (fr_face(m - 1, j) + fr_face(m - 1, j + 1));
                    (
                        ft_side(m, j) + 0.25 * (ft_side(m - 1, j) - ft_side(m, j)),
                        0.5 * (fr_side(m, j) + mid),
                        radii[m] * quarter,
                        0.5 * h,
                    )
                } else {
                    (ft_side(i, j), fr_side(i, j), radii[i], h)
                };
                let w = (1.0 + (fr * fr + ft * ft) / (r * r)).sqrt();
                let g = ft / w * wr;
                out[i * cols + j] += g;
                out[i * cols + j + 1] -= g;
            }
        }
    }

    fn norm(&self, res: &[f64]) -> f64 {
        res.iter()
            .zip(&self.inv_measure)
            .map(|(r, w)| (r * w).abs())
            .fold(0.0, f64::max)
    }

    /// Jacobian by forward differences with a 5×5 colouring of the grid; the
    /// residual stencil spans at most two nodes in each index direction.
    fn jacobian(&self, f: &[f64], r0: &[f64]) -> Vec<Triplet<usize, usize, f64>> {
        let (m, n) = (self.mesh.m(), self.mesh.n_theta());
        let cols = n + 1;
        let mut triplets = Vec::with_capacity(25 * f.len());
        let mut fp = f.to_vec();
        let mut rp = vec![0.0; f.len()];
        let mut steps = vec![0.0; f.len()];
        for ci in 0..5 {
            for cj in 0..5 {
                fp.copy_from_slice(f);
                for i in (ci..=m).step_by(5) {
                    for j in (cj..=n).step_by(5) {
                        let k = i * cols + j;
                        let trial = f[k] + 1.5e-8 * f[k].abs().max(1.0);
                        fp[k] = trial;
                        steps[k] = trial - f[k];
                    }
                }
                self.residual(&fp, &mut rp);
                for ic in (ci..=m).step_by(5) {
                    for jc in (cj..=n).step_by(5) {
                        let col = ic * cols + jc;
                        for i in ic.saturating_sub(2)..=(ic + 2).min(m) {
                            for j in jc.saturating_sub(2)..=(jc + 2).min(n) {
                                let row = i * cols + j;
                                let v = (rp[row] - r0[row]) / steps[col];
                                if v != 0.0 {
                                    triplets.push(Triplet::new(row, col, v));
                                }
                            }
                        }
                    }
                }
            }
        }
        triplets
    }
}

fn solve_sparse(dim: usize, triplets: &[Triplet<usize, usize, f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let a = SparseColMat::<usize, f64>::try_new_from_triplets(dim, dim, triplets)
        .map_err(|e| Error::LinearSolve(format!("{e:?}")))?;
    let lu = a.sp_lu().map_err(|e| Error::LinearSolve(format!("{e:?}")))?;
    let b = Col::<f64>::from_fn(dim, |i| rhs[i]);
    let x = lu.solve(&b);
    let out: Vec<f64> = (0..dim).map(|i| x[i]).collect();
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::LinearSolve("singular Jacobian".into()));
    }
    Ok(out)
}

/// Constant `t` with `rhs(x_c, y_c, t) = 0` at the sector centre, by secant
/// iteration from 0; 0 if the right-hand side does not depend on `t`.
fn default_level(mesh: &SectorMesh, rhs: &Rhs<'_>) -> f64 {
    let (x, y) = mesh.node_xy(mesh.m() / 2, mesh.n_theta() / 2);
    let (mut t0, mut t1) = (0.0, 1.0);
    let (mut g0, mut g1) = (rhs(x, y, t0), rhs(x, y, t1));
    if g0 == 0.0 {
        return 0.0;
    }
    for _ in 0..60 {
        if g1 == g0 || !g1.is_finite() {
            break;
        }
        let t2 = t1 - g1 * (t1 - t0) / (g1 - g0);
        if !t2.is_finite() {
            break;
        }
        (t0, g0) = (t1, g1);
        t1 = t2;
        g1 = rhs(x, y, t1);
        if g1 == 0.0 || (t1 - t0).abs() <= 1e-15 * t1.abs().max(1.0) {
            return t1;
        }
    }
    if g1.is_finite() && g1.abs() < g0.abs() {
        t1
    } else {
        0.0
    }
}

/// Newton iteration shared by the capillary, prescribed-mean-curvature and
/// manufactured-solution drivers.
pub(crate) fn solve_general(
    mesh: &SectorMesh,
    rhs: &Rhs<'_>,
    fluxes: &BoundaryFluxes,
    config: &SolverConfig,
) -> Result<SolutionField> {
    if mesh.m() < 16 || mesh.n_theta() < 16 {
        return Err(Error::InvalidMesh(format!(
            "solver needs m, n_theta >= 16, got m={}, n_theta={}",
            mesh.m(),
            mesh.n_theta()
        )));
    }
    if !(config.tol > 0.0) || config.max_iter == 0 {
        return Err(Error::Domain(
            "solver tolerance and iteration cap must be positive".into(),
        ));
    }
    let disc = Discretization::new(mesh, rhs, fluxes);
    let n = disc.len();
    let start = config.initial_guess.unwrap_or_else(|| default_level(mesh, rhs));

    let pinned = disc
        .sources
        .iter()
        .all(|p| rhs(p.x, p.y, start + 1.0) == rhs(p.x, p.y, start));
    let total_area: f64 = disc.areas.iter().sum();
    if pinned {
        let level = vec![start; n];
        let source: f64 = (0..n).map(|k| disc.source(&level, k)).sum();
        let imbalance = fluxes.total() - source;
        if (imbalance / total_area).abs() > 1e-9_f64.max(config.tol) {
            return Err(Error::IncompatibleData { imbalance });
        }
    }

    // With pinning the unknowns are (f, μ): R(f) - μ·area = 0, Σ area·f = 0.
    let dim = if pinned { n + 1 } else { n };
    let mut u = vec![if pinned { 0.0 } else { start }; dim];
    if pinned {
        u[n] = 0.0;
    }
    let eval = |u: &[f64], out: &mut [f64]| -> f64 {
        disc.residual(&u[..n], &mut out[..n]);
        let mut norm = disc.norm(&out[..n]);
        if pinned {
            let mu = u[n];
            let mut mean = 0.0;
            for k in 0..n {
                out[k] -= mu * disc.areas[k];
                mean += disc.areas[k] * u[k];
            }
            out[n] = mean / total_area;
            norm = disc.norm(&out[..n]).max(out[n].abs());
        }
        norm
    };

    let mut res = vec![0.0; dim];
    let mut norm = eval(&u, &mut res);
    let mut history = vec![norm];
    let mut iterations = 0;
    let mut trial = vec![0.0; dim];
    let mut trial_res = vec![0.0; dim];
    while norm > config.tol && iterations < config.max_iter && norm.is_finite() {
        let mut triplets = disc.jacobian(&u[..n], &res[..n]);
        if pinned {
            for k in 0..n {
                triplets.push(Triplet::new(k, n, -disc.areas[k]));
                triplets.push(Triplet::new(n, k, disc.areas[k] / total_area));
            }
        }
        let neg: Vec<f64> = res.iter().map(|r| -r).collect();
        let step = solve_sparse(dim, &triplets, &neg)?;
        iterations += 1;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=12 {
            for k in 0..dim {
                trial[k] = u[k] + t * step[k];
            }
            let tn = eval(&trial, &mut trial_res);
            if tn.is_finite() && (tn <= (1.0 - 1e-4 * t) * norm || tn <= config.tol) {
                u.copy_from_slice(&trial);
                res.copy_from_slice(&trial_res);
                norm = tn;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        history.push(norm);
        if !accepted {
            break;
        }
    }

    u.truncate(n);
    let mut warnings = Vec::new();
    if pinned {
        warnings.push("pure Neumann nullspace: mean value pinned to 0".to_string());
    }
    Ok(SolutionField {
        mesh: mesh.clone(),
        values: u,
        physics: Physics::Pmc { h_values: Vec::new() },
        converged: norm <= config.tol,
        residual_norm: norm,
        newton_iterations: iterations,
        history,
        nullspace_pinned: pinned,
        warnings,
    })
}

/// Solves `Nf = 2H(x, y, f)` with `Tf·ν = cos γ±` on the walls.
///
/// `H` must be weakly increasing in its last argument; violations sampled on
/// the solution range are recorded in `warnings`.
pub fn solve_pmc(
    mesh: &SectorMesh,
    h: &(dyn Fn(f64, f64, f64) -> f64 + Sync),
    plus: &ContactProfile,
    minus: &ContactProfile,
    config: &SolverConfig,
) -> Result<SolutionField> {
    let fluxes = BoundaryFluxes::from_profiles(mesh, plus, minus)?;
    let rhs = |x: f64, y: f64, t: f64| 2.0 * h(x, y, t);
    let mut field = solve_general(mesh, &rhs, &fluxes, config)?;

    let lo = field.values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = field.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 1.0, hi + 1.0) };
    let mut violations = 0usize;
    for i in 0..=mesh.m() {
        for j in 0..=mesh.n_theta() {
            let (x, y) = mesh.node_xy(i, j);
            let samples: Vec<f64> = (0..=8).map(|k| h(x, y, lo + (hi - lo) * k as f64 / 8.0)).collect();
            if samples.windows(2).any(|w| w[1] < w[0]) {
                violations += 1;
            }
        }
    }
    if violations > 0 {
        field
            .warnings
            .push(format!("H decreases in t at {violations} nodes on [{lo}, {hi}]"));
    }
    let h_values = (0..=mesh.m())
        .flat_map(|i| (0..=mesh.n_theta()).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (x, y) = mesh.node_xy(i, j);
            h(x, y, field.value(i, j))
        })
        .collect();
    field.physics = Physics::Pmc { h_values };
    Ok(field)
}

/// Solves `Nf = κf + λ` with `Tf·ν = cos γ±` on the walls and no flux on
/// the arcs `r = r_min`, `r = r_max`.
pub fn solve_capillary(
    mesh: &SectorMesh,
    kappa: f64,
    lambda: f64,
    plus: &ContactProfile,
    minus: &ContactProfile,
    config: &SolverConfig,
) -> Result<SolutionField> {
    if !(kappa >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "need kappa >= 0, got kappa={kappa}, lambda={lambda}"
        )));
    }
    let h = move |_x: f64, _y: f64, t: f64| (kappa * t + lambda) / 2.0;
    let mut field = solve_pmc(mesh, &h, plus, minus, config)?;
    field.physics = Physics::Capillary { kappa, lambda };
    let hyp = GammaBoundsHypothesis::from_profiles(plus, minus);
    if theorem1_applicability(mesh.geometry(), &hyp) == Theorem1Verdict::Fails {
        field.warnings.push(
            "convex corner with angle sums outside (pi - 2 alpha, pi + 2 alpha): radial limits are not guaranteed"
                .to_string(),
        );
    }
    Ok(field)
}

/// `(M1, M2)` with `M1 = max |f|` and `M2 = max |H|` over the nodes, where
/// `H = κf + λ` for the capillary problem.
pub fn bounds_estimate(field: &SolutionField) -> Result<(f64, f64)> {
    if field.values.is_empty() {
        return Err(Error::Domain("empty field".into()));
    }
    let m1 = field.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let m2 = match &field.physics {
        Physics::Capillary { kappa, lambda } => field
            .values
            .iter()
            .fold(0.0f64, |a, v| a.max((kappa * v + lambda).abs())),
        Physics::Pmc { h_values } => h_values.iter().fold(0.0f64, |a, v| a.max(v.abs())),
    };
    Ok((m1, m2))
}

/// Minor radius of the comparison torus with major radius 2:
/// `1` if `M2 = 0`, else `1/M2 + 1 - √(1/M2² + 1)`.
pub fn torus_minor_radius(m2: f64) -> Result<f64> {
    if !(m2 >= 0.0) {
        return Err(Error::Domain(format!("M2={m2} must be nonnegative")));
    }
    if m2 == 0.0 {
        return Ok(1.0);
    }
    // same value as 1/M2 + 1 - √(1/M2² + 1), without the cancellation
    let h = 1f64.hypot(m2);
    Ok((1.0 + h - m2) / (1.0 + h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact_profile::{Side, WedgeGeometry};
    use crate::solver::mesh::build_sector_mesh;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn mesh(alpha: f64, m: usize, n: usize) -> SectorMesh {
        build_sector_mesh(WedgeGeometry::new(alpha).unwrap(), 0.05, 1.0, m, n).unwrap()
    }

    fn neutral() -> (ContactProfile, ContactProfile) {
        (
            ContactProfile::constant(Side::Plus, FRAC_PI_2, 1.0).unwrap(),
            ContactProfile::constant(Side::Minus, FRAC_PI_2, 1.0).unwrap(),
        )
    }

    #[test]
    fn neutral_angle_gives_constant_solution() {
        let (p, q) = neutral();
        let f = solve_capillary(&mesh(1.0, 16, 16), 1.0, 2.0, &p, &q, &SolverConfig::default()).unwrap();
        assert!(f.converged);
        assert!(f.values.iter().all(|v| (v + 2.0).abs() < 1e-8));
        assert_eq!(
            bounds_estimate(&f).unwrap().0,
            f.values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
        );
    }

    #[test]
    fn shift_in_lambda_shifts_solution() {
        let (p, q) = neutral();
        let mesh = mesh(1.0, 16, 16);
        let a = solve_capillary(&mesh, 2.0, 1.0, &p, &q, &SolverConfig::default()).unwrap();
        let b = solve_capillary(&mesh, 2.0, 1.5, &p, &q, &SolverConfig::default()).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((y - x + 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_angles_give_symmetric_solution() {
        let p = ContactProfile::constant(Side::Plus, FRAC_PI_3, 1.0).unwrap();
        let q = ContactProfile::constant(Side::Minus, FRAC_PI_3, 1.0).unwrap();
        let f = solve_capillary(&mesh(1.2, 16, 20), 1.0, 0.0, &p, &q, &SolverConfig::default()).unwrap();
        assert!(f.converged, "{:?}", f.history);
        assert!(f.reflection_asymmetry() <= 1e-8);
    }

    #[test]
    fn pmc_reduces_to_capillary() {
        let p = ContactProfile::constant(Side::Plus, 1.2, 1.0).unwrap();
        let q = ContactProfile::constant(Side::Minus, 1.4, 1.0).unwrap();
        let mesh = mesh(0.8, 16, 16);
        let cfg = SolverConfig::default();
        let a = solve_capillary(&mesh, 1.5, 0.3, &p, &q, &cfg).unwrap();
        let h = |_x: f64, _y: f64, t: f64| (1.5 * t + 0.3) / 2.0;
        let b = solve_pmc(&mesh, &h, &p, &q, &cfg).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.history, b.history);
    }

    #[test]
    fn minimal_surface_with_no_flux_is_pinned() {
        let (p, q) = neutral();
        let h = |_x: f64, _y: f64, _t: f64| 0.0;
        let f = solve_pmc(&mesh(1.0, 16, 16), &h, &p, &q, &SolverConfig::default()).unwrap();
        assert!(f.converged);
        assert!(f.nullspace_pinned);
        assert!(f.values.iter().all(|v| v.abs() < 1e-8));
    }

    #[test]
    fn tanh_curvature_has_zero_solution() {
        let (p, q) = neutral();
        let h = |_x: f64, _y: f64, t: f64| t.tanh() / 2.0;
        let f = solve_pmc(&mesh(1.0, 16, 16), &h, &p, &q, &SolverConfig::default()).unwrap();
        assert!(f.converged);
        assert!(!f.nullspace_pinned);
        assert!(f.values.iter().all(|v| v.abs() < 1e-8));
    }

    #[test]
    fn decreasing_h_is_reported() {
        let (p, q) = neutral();
        let h = |x: f64, _y: f64, t: f64| -0.01 * t * x;
        let f = solve_pmc(&mesh(1.0, 16, 16), &h, &p, &q, &SolverConfig::default()).unwrap();
        assert!(f.warnings.iter().any(|w| w.contains("decreases")));
    }

    #[test]
    fn incompatible_neumann_data_is_rejected() {
        let p = ContactProfile::constant(Side::Plus, 0.5, 1.0).unwrap();
        let q = ContactProfile::constant(Side::Minus, 0.5, 1.0).unwrap();
        let r = solve_capillary(&mesh(1.0, 16, 16), 0.0, 0.0, &p, &q, &SolverConfig::default());
        assert!(matches!(r, Err(Error::IncompatibleData { .. })));
    }

    #[test]
    fn small_meshes_are_rejected() {
        let (p, q) = neutral();
        let m = build_sector_mesh(WedgeGeometry::new(1.0).unwrap(), 0.1, 1.0, 4, 4).unwrap();
        assert!(solve_capillary(&m, 1.0, 0.0, &p, &q, &SolverConfig::default()).is_err());
    }

    #[test]
    fn torus_radius_values() {
        assert_eq!(torus_minor_radius(0.0).unwrap(), 1.0);
        assert_eq!(torus_minor_radius(0.75).unwrap(), 2.0 / 3.0);
        assert_eq!(torus_minor_radius(4.0 / 3.0).unwrap(), 0.5);
        assert!(torus_minor_radius(-1.0).is_err());
        for m2 in [1e-12, 0.1, 1.0, 10.0, 1e8] {
            let r = torus_minor_radius(m2).unwrap();
            assert!(r > 0.0 && r <= 1.0);
        }
    }

    #[test]
    fn bounds_examples() {
        let m = build_sector_mesh(WedgeGeometry::new(1.0).unwrap(), 0.01, 1.0, 16, 16).unwrap();
        let phys = Physics::Capillary {
            kappa: 1.0,
            lambda: 2.0,
        };
        let c = SolutionField::from_fn(m.clone(), phys.clone(), |_, _| -2.0);
        assert_eq!(bounds_estimate(&c).unwrap(), (2.0, 0.0));
        let z = SolutionField::from_fn(m.clone(), phys, |_, _| 0.0);
        assert_eq!(bounds_estimate(&z).unwrap(), (0.0, 2.0));
        let lin = SolutionField::from_fn(
            m,
            Physics::Capillary {
                kappa: 0.0,
                lambda: 0.0,
            },
            |r, t| r * t.cos(),
        );
        assert_eq!(bounds_estimate(&lin).unwrap(), (1.0, 0.0));
    }
}
