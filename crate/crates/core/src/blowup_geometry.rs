//! Blow-up rescaling and the triangle comparisons behind the fan bounds.
//!
//! The comparison removes the triangle with vertices `O = (0,0)`,
//! `B = b(cos(±α), sin(±α))` on a wall and `C = (cos θ₀, sin θ₀)` from the
//! set where the blown-up solution is `+∞` (resp. `-∞`). Only the finite
//! change of the perimeter-plus-adhesion functional is computed; it is
//! `(1 ∓ A(b)) - sin(angle at O)/sin ω` with `π - ω = ∠OBC`.

use std::f64::consts::PI;

use crate::contact_profile::{Side, WedgeGeometry};
use crate::error::{Error, Result};
use crate::fan_bounds::{
    case_condition_map, scan_minimum, AdhesionFunction, ConditionKind, FanCase, LambdaGrid, CONDITION_TOLERANCE,
};

/// Relative tolerance on `|OB × OC|` below which the triangle is collinear.
const COLLINEAR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleSpec {
    pub eps: f64,
    pub z0: f64,
}

impl RescaleSpec {
    pub fn new(eps: f64, z0: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Domain(format!("rescale factor {eps} must be positive")));
        }
        Ok(Self { eps, z0 })
    }
}

/// Maps samples `(X, Y, f(X, Y))` of the original solution to
/// `(X/ε, Y/ε, (f - z0)/ε)`, i.e. `f_k(x, y) = (f(εx, εy) - z0)/ε` on the
/// rescaled domain.
pub fn rescale_solution(
    samples: &[(f64, f64, f64)],
    spec: &RescaleSpec,
    domain: &WedgeGeometry,
) -> Result<Vec<(f64, f64, f64)>> {
    samples
        .iter()
        .map(|&(x, y, f)| {
            if !domain.contains(x, y) {
                return Err(Error::Domain(format!("sample ({x}, {y}) outside the wedge")));
            }
            Ok((x / spec.eps, y / spec.eps, (f - spec.z0) / spec.eps))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleComparison {
    pub alpha: f64,
    pub theta0: f64,
    pub b: f64,
    pub side: Side,
}

impl TriangleComparison {
    /// `θ₀ = ±α` is accepted and describes the collapsed triangle.
    pub fn new(alpha: f64, theta0: f64, b: f64, side: Side) -> Result<Self> {
        WedgeGeometry::new(alpha)?;
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::Domain(format!("wall distance b={b} must be positive")));
        }
        if !(theta0 >= -alpha && theta0 <= alpha) {
            return Err(Error::Domain(format!("theta0={theta0} outside [-{alpha}, {alpha}]")));
        }
        Ok(Self { alpha, theta0, b, side })
    }

    pub fn vertex_b(&self) -> (f64, f64) {
        let a = self.side.sign() * self.alpha;
        (self.b * a.cos(), self.b * a.sin())
    }

    pub fn vertex_c(&self) -> (f64, f64) {
        (self.theta0.cos(), self.theta0.sin())
    }

    /// Opening of the triangle at the corner: `α - θ₀` (side +) or `α + θ₀`.
    pub fn corner_angle(&self) -> f64 {
        self.alpha - self.side.sign() * self.theta0
    }

    fn is_degenerate(&self) -> bool {
        let (bx, by) = self.vertex_b();
        let (cx, cy) = self.vertex_c();
        (bx * cy - by * cx).abs() <= COLLINEAR_TOL * self.b
    }

    fn check(&self) -> Result<()> {
        if self.is_degenerate() {
            return Err(Error::DegenerateTriangle(format!(
                "O, B, C collinear for alpha={}, theta0={}, b={}",
                self.alpha, self.theta0, self.b
            )));
        }
        Ok(())
    }
}

/// Interior angle `∠OBC` from coordinates.
pub fn angle_obc(cmp: &TriangleComparison) -> Result<f64> {
    cmp.check()?;
    let (bx, by) = cmp.vertex_b();
    let (cx, cy) = cmp.vertex_c();
    let (ux, uy) = (-bx, -by);
    let (vx, vy) = (cx - bx, cy - by);
    Ok((ux * vy - uy * vx).abs().atan2(ux * vx + uy * vy))
}

/// `ω = π - ∠OBC`. With this convention `ω → λ` in the fan limit on either
/// wall, and mirrored triangles share the same `ω`.
pub fn triangle_omega(cmp: &TriangleComparison) -> Result<f64> {
    Ok(PI - angle_obc(cmp)?)
}

/// `|BC|` from coordinates.
pub fn bc_length(cmp: &TriangleComparison) -> Result<f64> {
    cmp.check()?;
    let (bx, by) = cmp.vertex_b();
    let (cx, cy) = cmp.vertex_c();
    Ok((cx - bx).hypot(cy - by))
}

/// `sin(corner angle)/sin ω`, continued by `|1 - b|` when the triangle
/// collapses onto the wall.
fn sine_ratio_or_limit(cmp: &TriangleComparison) -> Result<f64> {
    if cmp.is_degenerate() {
        let wall = (cmp.corner_angle()).abs() < 0.5 * PI;
        return Ok(if wall { (1.0 - cmp.b).abs() } else { 1.0 + cmp.b });
    }
    Ok(cmp.corner_angle().sin() / triangle_omega(cmp)?.sin())
}

/// `Φ(P) - Φ(P \ Σ) = (1 - A_I⁺(b)) - sin(α-θ₀)/sin ω`.
pub fn phi_difference(cmp: &TriangleComparison, a_plus: f64) -> Result<f64> {
    if cmp.side != Side::Plus {
        return Err(Error::Domain("phi comparison uses the + wall".into()));
    }
    Ok((1.0 - a_plus) - sine_ratio_or_limit(cmp)?)
}

/// `Ψ(N) - Ψ(N \ Σ) = (1 + A_S⁻(b)) - sin(α+θ₀)/sin ω`.
pub fn psi_difference(cmp: &TriangleComparison, a_minus: f64) -> Result<f64> {
    if cmp.side != Side::Minus {
        return Err(Error::Domain("psi comparison uses the - wall".into()));
    }
    Ok((1.0 + a_minus) - sine_ratio_or_limit(cmp)?)
}

/// Comparison triangle at the edge of a fan of size `β` seen from direction
/// `λ`: corner opening `β` and `b = sin(λ-β)/sin λ`. The difference does not
/// depend on `α`, so the widest wedge `α = π` is used.
pub fn fan_edge_triangle(side: Side, beta: f64, lambda: f64) -> Result<TriangleComparison> {
    if !(beta >= 0.0 && beta < lambda && lambda < PI) {
        return Err(Error::Domain(format!(
            "need 0 <= beta < lambda < pi, got beta={beta}, lambda={lambda}"
        )));
    }
    let b = (lambda - beta).sin() / lambda.sin();
    let theta0 = side.sign() * (PI - beta);
    TriangleComparison::new(PI, theta0, b, side)
}

/// Limiting functional difference at the fan edge, computed through the
/// triangle geometry. Positive values contradict minimality.
pub fn limiting_difference(a: &AdhesionFunction, kind: ConditionKind, beta: f64, lambda: f64) -> Result<f64> {
    match kind {
        ConditionKind::Increasing => {
            let t = fan_edge_triangle(Side::Plus, beta, lambda)?;
            phi_difference(&t, a.value(t.b))
        }
        ConditionKind::Decreasing => {
            let t = fan_edge_triangle(Side::Minus, beta, lambda)?;
            psi_difference(&t, a.value(t.b))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub lambda: f64,
    pub value: f64,
}

fn condition_for(case: FanCase, side: Side) -> ConditionKind {
    case_condition_map(case)
        .into_iter()
        .find(|(s, _)| *s == side)
        .map(|(_, k)| k)
        .expect("every case constrains both walls")
}

/// Searches λ for a positive limiting difference, which would show the
/// claimed fan size is too small.
pub fn contradiction_witness(
    a: &AdhesionFunction,
    case: FanCase,
    side: Side,
    beta_claim: f64,
    grid: &LambdaGrid,
) -> Result<Option<Witness>> {
    if !(0.0..PI).contains(&beta_claim) {
        return Err(Error::Domain(format!("beta={beta_claim} outside [0, pi)")));
    }
    let kind = condition_for(case, side);
    let neg = |l: f64| -limiting_difference(a, kind, beta_claim, l).unwrap_or(f64::NAN);
    let (lambda, min) = scan_minimum(&neg, beta_claim, grid)?;
    Ok((-min > -CONDITION_TOLERANCE).then_some(Witness { lambda, value: -min }))
}

/// `(λ, limiting difference)` on the λ grid.
pub fn limiting_difference_sweep(
    a: &AdhesionFunction,
    case: FanCase,
    side: Side,
    beta: f64,
    grid: &LambdaGrid,
) -> Result<Vec<(f64, f64)>> {
    let kind = condition_for(case, side);
    grid.nodes(beta)?
        .into_iter()
        .map(|l| limiting_difference(a, kind, beta, l).map(|d| (l, d)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_functionals::AdhesionKind;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rescale_examples() {
        let g = WedgeGeometry::new(FRAC_PI_2).unwrap();
        let pts = [(0.5, 0.1, 3.0), (0.2, -0.1, -1.0)];
        let id = rescale_solution(&pts, &RescaleSpec::new(1.0, 0.0).unwrap(), &g).unwrap();
        assert_eq!(id, pts.to_vec());

        let flat = [(0.5, 0.1, 2.0), (0.1, 0.0, 2.0)];
        let r = rescale_solution(&flat, &RescaleSpec::new(0.01, 2.0).unwrap(), &g).unwrap();
        assert!(r.iter().all(|p| p.2 == 0.0));

        let lin: Vec<_> = [(0.5, 0.1), (0.25, 0.2)].iter().map(|&(x, y)| (x, y, x)).collect();
        let r = rescale_solution(&lin, &RescaleSpec::new(0.125, 0.0).unwrap(), &g).unwrap();
        assert!(r.iter().all(|p| (p.2 - p.0).abs() < 1e-15));

        assert!(rescale_solution(&[(-1.0, 0.0, 0.0)], &RescaleSpec::new(1.0, 0.0).unwrap(), &g).is_err());
        assert!(RescaleSpec::new(0.0, 0.0).is_err());
    }

    #[test]
    fn omega_right_angle_example() {
        let b = 0.75;
        let t = TriangleComparison::new(FRAC_PI_2, 0.0, b, Side::Plus).unwrap();
        let obc = angle_obc(&t).unwrap();
        assert!((obc - (b / (1.0f64 + b * b).sqrt()).acos()).abs() < 1e-14);
        assert!((triangle_omega(&t).unwrap() - (PI - obc)).abs() < 1e-15);
    }

    #[test]
    fn mirror_triangle_has_same_omega() {
        let p = TriangleComparison::new(1.2, 0.3, 0.6, Side::Plus).unwrap();
        let m = TriangleComparison::new(1.2, -0.3, 0.6, Side::Minus).unwrap();
        assert!((triangle_omega(&p).unwrap() - triangle_omega(&m).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn small_b_limit() {
        // as b → 0 the angle at B tends to π minus the corner opening
        let t = TriangleComparison::new(1.0, 0.2, 1e-9, Side::Plus).unwrap();
        assert!((triangle_omega(&t).unwrap() - (1.0 - 0.2)).abs() < 1e-8);
    }

    #[test]
    fn bc_length_examples() {
        let t = TriangleComparison::new(FRAC_PI_2, 0.0, 0.75, Side::Plus).unwrap();
        assert!((bc_length(&t).unwrap() - 1.25).abs() < 1e-15);
        let near = TriangleComparison::new(1.0, 1.0 - 1e-9, 0.4, Side::Plus).unwrap();
        assert!((bc_length(&near).unwrap() - 0.6).abs() < 1e-8);
        let wall = TriangleComparison::new(1.0, 1.0, 0.4, Side::Plus).unwrap();
        assert!(bc_length(&wall).is_err());
        assert!(triangle_omega(&wall).is_err());
    }

    #[test]
    fn phi_and_psi_examples() {
        let t = TriangleComparison::new(FRAC_PI_2, 0.0, 0.75, Side::Plus).unwrap();
        assert!((phi_difference(&t, 0.75).unwrap() + 1.0).abs() < 1e-14);
        let m = TriangleComparison::new(FRAC_PI_2, 0.0, 0.75, Side::Minus).unwrap();
        assert!((psi_difference(&m, -0.75).unwrap() + 1.0).abs() < 1e-14);
        assert!(phi_difference(&m, 0.0).is_err());
        assert!(psi_difference(&t, 0.0).is_err());

        // collapsed triangle: continuous limit (1 - A) - |1 - b|
        let wall = TriangleComparison::new(1.0, 1.0, 1.0, Side::Plus).unwrap();
        assert_eq!(phi_difference(&wall, 0.3).unwrap(), 0.7);
        let wall = TriangleComparison::new(1.0, 1.0, 0.25, Side::Plus).unwrap();
        assert!((phi_difference(&wall, 0.3).unwrap() - (0.7 - 0.75)).abs() < 1e-15);
        let wall = TriangleComparison::new(1.0, -1.0, 1.0, Side::Minus).unwrap();
        assert_eq!(psi_difference(&wall, -0.3).unwrap(), 0.7);
    }

    #[test]
    fn witness_examples() {
        let grid = LambdaGrid::default();
        let z = AdhesionFunction::linear(AdhesionKind::I, 0.0);
        let w = contradiction_witness(&z, FanCase::I, Side::Plus, FRAC_PI_4, &grid)
            .unwrap()
            .unwrap();
        assert!((w.lambda - FRAC_PI_2).abs() < 1e-6);
        assert!((w.value - (1.0 - FRAC_PI_4.sin())).abs() < 1e-9);
        assert!(contradiction_witness(&z, FanCase::I, Side::Plus, FRAC_PI_2, &grid)
            .unwrap()
            .is_none());
        let one = AdhesionFunction::linear(AdhesionKind::I, 1.0);
        assert!(contradiction_witness(&one, FanCase::I, Side::Plus, 0.0, &grid)
            .unwrap()
            .is_none());
    }
}
