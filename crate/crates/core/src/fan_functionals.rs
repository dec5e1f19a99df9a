//! Scale-averaged adhesion functionals
//! `A_I(b) = liminf_{ε↓0} (1/ε)∫₀^{bε} cos γ` and `A_S(b)` (the limsup).
//!
//! General profiles are handled by a deterministic sweep over a geometric
//! grid of scales, which yields an estimate with a reported uncertainty.
//! Two structured evaluators are exact: one for log-periodic
//! (self-similar) profiles and one for the dyadic block construction of
//! [`ContactProfile::example1`].

use std::fmt;

use serde::Serialize;

use crate::contact_profile::ContactProfile;
use crate::error::{Error, Result};

/// Default smallest scale of a sweep.
pub const DEFAULT_EPS_LO: f64 = 1e-10;
/// Default sweep density.
pub const DEFAULT_POINTS_PER_DECADE: usize = 64;

/// Which envelope of the averaged integral is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AdhesionKind {
    /// liminf
    I,
    /// limsup
    S,
}

impl fmt::Display for AdhesionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdhesionKind::I => "I",
            AdhesionKind::S => "S",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    Sweep,
    LogPeriodicExact,
    SequenceExact,
}

impl EstimateMethod {
    pub fn is_exact(self) -> bool {
        !matches!(self, EstimateMethod::Sweep)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EstimateMethod::Sweep => "sweep",
            EstimateMethod::LogPeriodicExact => "log_periodic_exact",
            EstimateMethod::SequenceExact => "sequence_exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdhesionEstimate {
    pub b: f64,
    pub kind: AdhesionKind,
    pub value: f64,
    pub method: EstimateMethod,
    pub uncertainty: f64,
}

impl AdhesionEstimate {
    fn exact(b: f64, kind: AdhesionKind, value: f64, method: EstimateMethod) -> Self {
        Self {
            b,
            kind,
            value,
            method,
            uncertainty: 0.0,
        }
    }
}

/// Geometric grid of scales `ε_i = eps_hi · 10^{-i/ppd}` down to `eps_lo`.
///
/// The grid is anchored at `eps_hi`, so doubling `points_per_decade` or
/// lowering `eps_lo` produces a superset of the previous grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub eps_hi: f64,
    pub eps_lo: f64,
    pub points_per_decade: usize,
}

impl SweepConfig {
    pub fn new(eps_hi: f64, eps_lo: f64, points_per_decade: usize) -> Result<Self> {
        if !(eps_lo > 0.0 && eps_lo < eps_hi && eps_hi.is_finite()) {
            return Err(Error::EmptyGrid { eps_lo, eps_hi });
        }
        if points_per_decade < 8 {
            return Err(Error::Domain(format!(
                "points_per_decade={points_per_decade} must be at least 8"
            )));
        }
        Ok(Self {
            eps_hi,
            eps_lo,
            points_per_decade,
        })
    }

    /// `eps_hi = s_max / b` with the default floor and density.
    pub fn default_for(profile: &ContactProfile, b: f64) -> Result<Self> {
        Self::with_floor(profile, b, DEFAULT_EPS_LO, DEFAULT_POINTS_PER_DECADE)
    }

    pub fn with_floor(profile: &ContactProfile, b: f64, eps_lo: f64, points_per_decade: usize) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::Domain(format!("b={b} must be positive")));
        }
        Self::new(profile.s_max() / b, eps_lo, points_per_decade)
    }

    pub fn scales(&self) -> impl Iterator<Item = f64> + '_ {
        let ppd = self.points_per_decade as f64;
        (0..)
            .map(move |i| self.eps_hi * 10f64.powf(-(i as f64) / ppd))
            .take_while(move |&e| e >= self.eps_lo)
    }

    /// Relative spacing of consecutive grid scales.
    pub fn relative_spacing(&self) -> f64 {
        10f64.powf(1.0 / self.points_per_decade as f64) - 1.0
    }
}

/// Averaged cosine at every grid scale.
pub fn sweep_profile(profile: &ContactProfile, b: f64, sweep: &SweepConfig) -> Result<Vec<(f64, f64)>> {
    sweep
        .scales()
        .map(|eps| profile.averaged_cos(eps, b).map(|v| (eps, v)))
        .collect()
}

fn estimate(profile: &ContactProfile, b: f64, sweep: &SweepConfig, kind: AdhesionKind) -> Result<AdhesionEstimate> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b={b} must be positive")));
    }
    let mut best: Option<f64> = None;
    for eps in sweep.scales() {
        let v = profile.averaged_cos(eps, b)?;
        best = Some(match (best, kind) {
            (None, _) => v,
            (Some(m), AdhesionKind::I) => m.min(v),
            (Some(m), AdhesionKind::S) => m.max(v),
        });
    }
    let value = best.ok_or(Error::EmptyGrid {
        eps_lo: sweep.eps_lo,
        eps_hi: sweep.eps_hi,
    })?;
    Ok(AdhesionEstimate {
        b,
        kind,
        value,
        method: EstimateMethod::Sweep,
        uncertainty: b * sweep.relative_spacing(),
    })
}

/// Sweep estimate of `A_I(b)`: the minimum of the averaged cosine over the grid.
pub fn estimate_ai(profile: &ContactProfile, b: f64, sweep: &SweepConfig) -> Result<AdhesionEstimate> {
    estimate(profile, b, sweep, AdhesionKind::I)
}

/// Sweep estimate of `A_S(b)`: the maximum of the averaged cosine over the grid.
pub fn estimate_as(profile: &ContactProfile, b: f64, sweep: &SweepConfig) -> Result<AdhesionEstimate> {
    estimate(profile, b, sweep, AdhesionKind::S)
}

/// A profile whose pattern repeats under `s ↦ s/ratio` on `[floor, top]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarWindow {
    pub top: f64,
    pub ratio: f64,
}

fn dedup_relative(points: &mut Vec<f64>) {
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
}

/// Checks `γ(s) = γ(s·ratio)` on `[floor, top/ratio]`, where `floor` is the
/// lowest break (below it the profile is a constant tail). At least two full
/// periods must fit in `[floor, top]` and the top period must contain a jump.
fn is_self_similar_below(profile: &ContactProfile, top: f64, ratio: f64) -> bool {
    let floor = profile.segment_ends()[0];
    if top / (ratio * ratio) < floor * (1.0 - 1e-12) {
        return false;
    }
    let jumps: Vec<f64> = profile
        .jumps()
        .into_iter()
        .filter(|&j| j >= floor && j <= top)
        .collect();
    // a constant stretch is trivially self-similar but says nothing about the pattern
    if !jumps.iter().any(|&j| j > top / ratio && j < top) {
        return false;
    }
    let mut pts = vec![floor, top / ratio, top];
    for &j in &jumps {
        pts.push(j);
        pts.push(j / ratio);
        pts.push(j * ratio);
    }
    pts.retain(|&p| p >= floor && p <= top);
    dedup_relative(&mut pts);
    let limit = top / ratio * (1.0 + 1e-12);
    pts.windows(2).filter(|w| w[1] <= limit).all(|w| {
        let mid = 0.5 * (w[0] + w[1]);
        match (profile.value_at(mid), profile.value_at(mid * ratio)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    })
}

/// Finds the highest arclength below which the profile is self-similar with
/// the given ratio. Candidates are `s_max` and then the jumps, descending.
pub fn find_self_similar_window(profile: &ContactProfile, ratio: f64) -> Result<SelfSimilarWindow> {
    if !(ratio > 1.0 && ratio.is_finite()) {
        return Err(Error::Domain(format!("scale ratio {ratio} must exceed 1")));
    }
    let mut candidates = vec![profile.s_max()];
    candidates.extend(profile.jumps().into_iter().rev());
    candidates
        .into_iter()
        .find(|&top| is_self_similar_below(profile, top, ratio))
        .map(|top| SelfSimilarWindow { top, ratio })
        .ok_or(Error::NotSelfSimilar { ratio })
}

/// Exact `(A_I(b), A_S(b))` for a log-periodic profile.
///
/// On one period `[top/ratio, top]` the integral below the period is
/// `P/(ratio-1)` with `P` the integral over the period, as if the pattern
/// continued to the corner. Within a segment `I(x)/x` is monotone in `x`, so
/// the extrema over the period are attained at the segment breaks.
pub fn exact_a_log_periodic(
    profile: &ContactProfile,
    b: f64,
    ratio: f64,
) -> Result<(AdhesionEstimate, AdhesionEstimate)> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b={b} must be positive")));
    }
    let (lo, hi) = log_periodic_slopes(profile, ratio)?;
    let m = EstimateMethod::LogPeriodicExact;
    Ok((
        AdhesionEstimate::exact(b, AdhesionKind::I, b * lo, m),
        AdhesionEstimate::exact(b, AdhesionKind::S, b * hi, m),
    ))
}

/// `(min, max)` of `I(x)/x` over one period; `A_I(b) = b·min`, `A_S(b) = b·max`.
pub(crate) fn log_periodic_slopes(profile: &ContactProfile, ratio: f64) -> Result<(f64, f64)> {
    if profile.is_constant() {
        let c = profile.segment_values()[0].cos();
        return Ok((c, c));
    }
    let w = find_self_similar_window(profile, ratio)?;
    let bottom = w.top / ratio;
    let i_bottom = profile.cos_integral(bottom)?;
    let period = profile.cos_integral(w.top)? - i_bottom;
    let below = period / (ratio - 1.0);

    let mut xs = vec![bottom, w.top];
    xs.extend(profile.jumps().into_iter().filter(|&j| j > bottom && j < w.top));
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in xs {
        let v = (below + profile.cos_integral(x)? - i_bottom) / x;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

/// `A_I(b) = b cos g2`, `A_S(b) = b cos g1` for the dyadic block profile,
/// from the limits along `ε_j = c_{2j+1}/b` and `ε_j = c_{2j}/b`.
pub fn exact_a_example1(g1: f64, g2: f64, b: f64) -> Result<(AdhesionEstimate, AdhesionEstimate)> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b={b} must be positive")));
    }
    let m = EstimateMethod::SequenceExact;
    let (c1, c2) = (g1.cos(), g2.cos());
    Ok((
        AdhesionEstimate::exact(b, AdhesionKind::I, b * c1.min(c2), m),
        AdhesionEstimate::exact(b, AdhesionKind::S, b * c1.max(c2), m),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact_profile::Side;
    use std::f64::consts::{FRAC_PI_3, PI};

    const G1: f64 = FRAC_PI_3;
    const G2: f64 = 2.0 * FRAC_PI_3;

    #[test]
    fn constant_profile_sweeps_are_exact() {
        let p = ContactProfile::constant(Side::Plus, 0.9, 1.0).unwrap();
        for b in [0.1, 0.5, 0.9] {
            let s = SweepConfig::default_for(&p, b).unwrap();
            let ai = estimate_ai(&p, b, &s).unwrap();
            let as_ = estimate_as(&p, b, &s).unwrap();
            assert!((ai.value - b * 0.9f64.cos()).abs() < 1e-14);
            assert!((as_.value - b * 0.9f64.cos()).abs() < 1e-14);
            assert_eq!(ai.method, EstimateMethod::Sweep);
            assert!(ai.uncertainty > 0.0);
        }
    }

    #[test]
    fn example1_sweep_approaches_limits() {
        let p = ContactProfile::example1(Side::Plus, G1, G2, 8).unwrap();
        let s = SweepConfig::default_for(&p, 0.5).unwrap();
        let ai = estimate_ai(&p, 0.5, &s).unwrap();
        let as_ = estimate_as(&p, 0.5, &s).unwrap();
        assert!((ai.value + 0.25).abs() < 0.05 * 0.5, "{}", ai.value);
        assert!((as_.value - 0.25).abs() < 0.05 * 0.5, "{}", as_.value);
    }

    #[test]
    fn example2_exact_and_sweep() {
        let p = ContactProfile::example2(Side::Plus, G1, G2, 24).unwrap();
        let (ai, as_) = exact_a_log_periodic(&p, 0.5, 4.0).unwrap();
        assert!((ai.value + 1.0 / 12.0).abs() < 1e-12);
        assert!((as_.value - 1.0 / 12.0).abs() < 1e-12);
        assert_eq!(ai.uncertainty, 0.0);

        let s = SweepConfig::default_for(&p, 0.5).unwrap();
        assert!((estimate_ai(&p, 0.5, &s).unwrap().value - ai.value).abs() < 1e-3);
        assert!((estimate_as(&p, 0.5, &s).unwrap().value - as_.value).abs() < 1e-3);
    }

    #[test]
    fn example1_is_not_log_periodic() {
        let p = ContactProfile::example1(Side::Plus, G1, G2, 8).unwrap();
        assert!(matches!(
            exact_a_log_periodic(&p, 0.5, 4.0),
            Err(Error::NotSelfSimilar { .. })
        ));
        let p2 = ContactProfile::example2(Side::Plus, G1, G2, 24).unwrap();
        assert!(exact_a_log_periodic(&p2, 0.5, 2.0).is_err());
    }

    #[test]
    fn constant_log_periodic() {
        let p = ContactProfile::constant(Side::Plus, 1.1, 1.0).unwrap();
        let (ai, as_) = exact_a_log_periodic(&p, 0.3, 4.0).unwrap();
        assert_eq!(ai.value, 0.3 * 1.1f64.cos());
        assert_eq!(as_.value, ai.value);
    }

    #[test]
    fn example1_exact_values() {
        let (ai, as_) = exact_a_example1(G1, G2, 0.5).unwrap();
        assert!((ai.value + 0.25).abs() < 1e-15);
        assert!((as_.value - 0.25).abs() < 1e-15);
        assert_eq!(ai.method, EstimateMethod::SequenceExact);
        let (ai, as_) = exact_a_example1(0.7, 0.7, 0.4).unwrap();
        assert_eq!(ai.value, as_.value);
        assert!(exact_a_example1(0.0, PI, 0.0).is_err());
    }

    #[test]
    fn grid_errors() {
        assert!(SweepConfig::new(1.0, 2.0, 64).is_err());
        assert!(SweepConfig::new(1.0, 0.1, 4).is_err());
    }
}
