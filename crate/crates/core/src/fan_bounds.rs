//! Lower bounds on the side-fan sizes `β±` from the adhesion functionals.
//!
//! For a fan size `β` and a direction `λ ∈ (β, π)` write
//! `b = sin(λ-β)/sin λ`. The increasing-side condition is
//! `A_I(b) + sin β / sin λ ≥ 1` and the decreasing-side condition is
//! `1 + A_S(b) ≤ sin β / sin λ`; each must hold for every admissible `λ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::contact_profile::{ContactProfile, Side};
use crate::error::{Error, Result};
use crate::fan_functionals::{estimate_ai, estimate_as, log_periodic_slopes, AdhesionKind, SweepConfig};

/// Condition values at or above this count as satisfied.
pub const CONDITION_TOLERANCE: f64 = -1e-12;
/// Distance kept from the singular endpoints `λ = β` and `λ = π`.
pub const LAMBDA_MARGIN: f64 = 1e-4;
pub const DEFAULT_LAMBDA_POINTS: usize = 512;
pub const DEFAULT_BETA_STEP: f64 = 1e-3;

/// Monotonicity structure of the radial-limit function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FanCase {
    I,
    D,
    ID,
    DI,
}

impl FanCase {
    pub const ALL: [FanCase; 4] = [FanCase::I, FanCase::D, FanCase::ID, FanCase::DI];
}

impl fmt::Display for FanCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanCase::I => "I",
            FanCase::D => "D",
            FanCase::ID => "ID",
            FanCase::DI => "DI",
        })
    }
}

impl FromStr for FanCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(FanCase::I),
            "D" => Ok(FanCase::D),
            "ID" => Ok(FanCase::ID),
            "DI" => Ok(FanCase::DI),
            other => Err(Error::Parse(format!("unknown fan case {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    /// `A_I(b) + sin β / sin λ ≥ 1`
    Increasing,
    /// `1 + A_S(b) ≤ sin β / sin λ`
    Decreasing,
}

impl ConditionKind {
    /// The functional the condition consumes.
    pub fn adhesion_kind(self) -> AdhesionKind {
        match self {
            ConditionKind::Increasing => AdhesionKind::I,
            ConditionKind::Decreasing => AdhesionKind::S,
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionKind::Increasing => "increasing",
            ConditionKind::Decreasing => "decreasing",
        })
    }
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `b ↦ A(b)` for one wall, with liminf or limsup semantics.
#[derive(Clone)]
pub struct AdhesionFunction {
    kind: AdhesionKind,
    eval: Evaluator,
    label: String,
}

impl fmt::Debug for AdhesionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdhesionFunction")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .finish()
    }
}

impl AdhesionFunction {
    pub fn from_fn(
        kind: AdhesionKind,
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind,
            eval: Arc::new(f),
            label: label.into(),
        }
    }

    /// `A(b) = slope · b`, which is what every constant or self-similar
    /// profile produces.
    pub fn linear(kind: AdhesionKind, slope: f64) -> Self {
        Self::from_fn(kind, format!("linear({slope})"), move |b| slope * b)
    }

    /// Constant contact angle `γ₀`: `A(b) = b cos γ₀` for both kinds.
    pub fn constant_angle(kind: AdhesionKind, gamma: f64) -> Self {
        Self::linear(kind, gamma.cos())
    }

    /// Exact functional of the dyadic block profile.
    pub fn example1(kind: AdhesionKind, g1: f64, g2: f64) -> Self {
        let (c1, c2) = (g1.cos(), g2.cos());
        let slope = match kind {
            AdhesionKind::I => c1.min(c2),
            AdhesionKind::S => c1.max(c2),
        };
        Self::from_fn(kind, "example1_exact", move |b| slope * b)
    }

    /// Exact functional of a log-periodic profile.
    pub fn log_periodic(kind: AdhesionKind, profile: &ContactProfile, ratio: f64) -> Result<Self> {
        let (lo, hi) = log_periodic_slopes(profile, ratio)?;
        let slope = match kind {
            AdhesionKind::I => lo,
            AdhesionKind::S => hi,
        };
        Ok(Self::from_fn(kind, "log_periodic_exact", move |b| slope * b))
    }

    /// Sweep estimate with `eps_hi = s_max/b` for every queried `b`.
    pub fn sweep(kind: AdhesionKind, profile: ContactProfile, eps_lo: f64, points_per_decade: usize) -> Self {
        Self::from_fn(kind, "sweep", move |b| {
            let est = SweepConfig::with_floor(&profile, b, eps_lo, points_per_decade).and_then(|s| match kind {
                AdhesionKind::I => estimate_ai(&profile, b, &s),
                AdhesionKind::S => estimate_as(&profile, b, &s),
            });
            // b·eps_lo above s_max leaves no scales: fall back to the coarsest one
            match est {
                Ok(e) => e.value,
                Err(_) => profile.averaged_cos(profile.s_max() / b, b).unwrap_or(f64::NAN),
            }
        })
    }

    pub fn kind(&self) -> AdhesionKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self, b: f64) -> f64 {
        (self.eval)(b)
    }
}

fn fan_ratio(beta: f64, lambda: f64) -> Result<(f64, f64)> {
    if !(beta >= 0.0 && beta < lambda && lambda < PI) {
        return Err(Error::Domain(format!(
            "need 0 <= beta < lambda < pi, got beta={beta}, lambda={lambda}"
        )));
    }
    let s = lambda.sin();
    Ok(((lambda - beta).sin() / s, beta.sin() / s))
}

/// `A(sin(λ-β)/sin λ) + sin β/sin λ - 1`; nonnegative when the condition holds.
pub fn condition_increasing(a: &AdhesionFunction, beta: f64, lambda: f64) -> Result<f64> {
    let (b, q) = fan_ratio(beta, lambda)?;
    Ok(a.value(b) + q - 1.0)
}

/// `sin β/sin λ - 1 - A(sin(λ-β)/sin λ)`; nonnegative when the condition holds.
pub fn condition_decreasing(a: &AdhesionFunction, beta: f64, lambda: f64) -> Result<f64> {
    let (b, q) = fan_ratio(beta, lambda)?;
    Ok(q - 1.0 - a.value(b))
}

pub fn condition_value(kind: ConditionKind, a: &AdhesionFunction, beta: f64, lambda: f64) -> Result<f64> {
    match kind {
        ConditionKind::Increasing => condition_increasing(a, beta, lambda),
        ConditionKind::Decreasing => condition_decreasing(a, beta, lambda),
    }
}

/// Uniform grid on `(β + margin, π - margin)` used for "for all λ" checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaGrid {
    pub points: usize,
    pub margin: f64,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self {
            points: DEFAULT_LAMBDA_POINTS,
            margin: LAMBDA_MARGIN,
        }
    }
}

impl LambdaGrid {
    pub fn nodes(&self, beta: f64) -> Result<Vec<f64>> {
        let lo = beta + self.margin;
        let hi = PI - self.margin;
        if self.points < 2 || !(lo < hi) {
            return Err(Error::DegenerateGrid { beta });
        }
        let n = self.points;
        Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaScan {
    pub holds: bool,
    pub worst_lambda: f64,
    pub min_value: f64,
}

fn golden_minimize(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..80 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimum of `f` over the λ grid, refined by golden section between the
/// neighbours of the grid minimiser. Returns `(argmin, min)`.
pub fn scan_minimum(f: &dyn Fn(f64) -> f64, beta: f64, grid: &LambdaGrid) -> Result<(f64, f64)> {
    let nodes = grid.nodes(beta)?;
    let values: Vec<f64> = nodes.iter().map(|&l| f(l)).collect();
    let (k, &vk) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid has at least two nodes");
    let lo = nodes[k.saturating_sub(1)];
    let hi = nodes[(k + 1).min(nodes.len() - 1)];
    let (lr, vr) = golden_minimize(f, lo, hi);
    Ok(if vr < vk { (lr, vr) } else { (nodes[k], vk) })
}

/// Checks `cond(λ) ≥ -1e-12` for all λ on the (refined) grid.
pub fn holds_for_all_lambda(cond: &dyn Fn(f64) -> f64, beta: f64, grid: &LambdaGrid) -> Result<LambdaScan> {
    let (worst_lambda, min_value) = scan_minimum(cond, beta, grid)?;
    Ok(LambdaScan {
        holds: min_value >= CONDITION_TOLERANCE,
        worst_lambda,
        min_value,
    })
}

fn feasibility(a: &AdhesionFunction, kind: ConditionKind, beta: f64, grid: &LambdaGrid) -> Result<LambdaScan> {
    let cond = |l: f64| condition_value(kind, a, beta, l).unwrap_or(f64::NAN);
    holds_for_all_lambda(&cond, beta, grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanScan {
    pub beta_step: f64,
    pub lambda_grid: LambdaGrid,
}

impl Default for FanScan {
    fn default() -> Self {
        Self {
            beta_step: DEFAULT_BETA_STEP,
            lambda_grid: LambdaGrid::default(),
        }
    }
}

/// Outcome of scanning β upward for one condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanScanResult {
    pub beta_min: f64,
    pub worst_lambda: f64,
    pub min_value: f64,
    /// False if some β above `beta_min` on the scan was infeasible again.
    pub monotone_flag: bool,
}

/// Smallest grid `β = k·beta_step < π - beta_step` satisfying the condition
/// for every λ. All candidates are evaluated so that non-monotone
/// feasibility can be reported.
pub fn min_admissible_fan(a: &AdhesionFunction, kind: ConditionKind, scan: &FanScan) -> Result<FanScanResult> {
    let step = scan.beta_step;
    if !(step > 0.0 && step < PI / 4.0) {
        return Err(Error::Domain(format!("beta_step={step} out of range")));
    }
    let count = ((PI - step) / step).ceil() as usize;
    let betas: Vec<f64> = (0..count).map(|k| k as f64 * step).filter(|&b| b < PI - step).collect();
    let results: Vec<Option<LambdaScan>> = betas
        .par_iter()
        .map(|&beta| feasibility(a, kind, beta, &scan.lambda_grid).ok())
        .collect();
    let first = results
        .iter()
        .position(|r| r.is_some_and(|s| s.holds))
        .ok_or(Error::InfeasibleScan { beta_step: step })?;
    let monotone_flag = results[first..].iter().all(|r| r.is_some_and(|s| s.holds));
    let at = results[first].expect("feasible entry");
    Ok(FanScanResult {
        beta_min: betas[first],
        worst_lambda: at.worst_lambda,
        min_value: at.min_value,
        monotone_flag,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorollaryVariant {
    /// `A_I⁺(b) ≤ mb`, cases I/DI: `β⁺ ≥ σ`
    A,
    /// `A_I⁻(b) ≤ mb`, cases D/DI: `β⁻ ≥ σ`
    B,
    /// `A_S⁻(b) ≥ mb`, cases I/ID: `β⁻ ≥ π - σ`
    C,
    /// `A_S⁺(b) ≥ mb`, cases D/ID: `β⁺ ≥ π - σ`
    D,
}

impl CorollaryVariant {
    pub fn for_condition(side: Side, kind: ConditionKind) -> Self {
        match (side, kind) {
            (Side::Plus, ConditionKind::Increasing) => CorollaryVariant::A,
            (Side::Minus, ConditionKind::Increasing) => CorollaryVariant::B,
            (Side::Minus, ConditionKind::Decreasing) => CorollaryVariant::C,
            (Side::Plus, ConditionKind::Decreasing) => CorollaryVariant::D,
        }
    }
}

/// Closed-form fan bound from a linear envelope `A(b) ≶ mb`, `σ = arccos m`.
pub fn corollary1_bound(m: f64, variant: CorollaryVariant) -> Result<f64> {
    if !(-1.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("m={m} outside [-1, 1]")));
    }
    let sigma = m.acos();
    Ok(match variant {
        CorollaryVariant::A | CorollaryVariant::B => sigma,
        CorollaryVariant::C | CorollaryVariant::D => PI - sigma,
    })
}

/// 64 midpoints of a uniform partition of `(0, 1)`.
pub fn default_b_grid() -> Vec<f64> {
    (0..64).map(|k| (k as f64 + 0.5) / 64.0).collect()
}

/// Tightest linear envelope on the grid and its angle `σ = arccos m`.
///
/// For liminf functionals `m = max A(b)/b`, the smallest `m` with
/// `A(b) ≤ mb` on every grid point; for limsup functionals
/// `m = min A(b)/b`, the largest `m` with `A(b) ≥ mb`.
pub fn effective_angle(a: &AdhesionFunction, b_grid: &[f64]) -> Result<(f64, f64)> {
    if b_grid.len() < 32 {
        return Err(Error::Domain(format!(
            "b grid has {} points, need at least 32",
            b_grid.len()
        )));
    }
    if b_grid.iter().any(|&b| !(b > 0.0 && b < 1.0)) {
        return Err(Error::Domain("b grid must lie in (0, 1)".into()));
    }
    let ratios = b_grid.iter().map(|&b| a.value(b) / b);
    let m = match a.kind() {
        AdhesionKind::I => ratios.fold(f64::NEG_INFINITY, f64::max),
        AdhesionKind::S => ratios.fold(f64::INFINITY, f64::min),
    };
    let m = m.clamp(-1.0, 1.0);
    Ok((m, m.acos()))
}

/// Which wall and which condition each monotonicity case constrains.
pub fn case_condition_map(case: FanCase) -> [(Side, ConditionKind); 2] {
    use ConditionKind::*;
    match case {
        FanCase::I => [(Side::Plus, Increasing), (Side::Minus, Decreasing)],
        FanCase::D => [(Side::Minus, Increasing), (Side::Plus, Decreasing)],
        FanCase::DI => [(Side::Plus, Increasing), (Side::Minus, Increasing)],
        FanCase::ID => [(Side::Minus, Decreasing), (Side::Plus, Decreasing)],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Theorem2Scan,
    Corollary1,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMethod::Theorem2Scan => "theorem2_scan",
            BoundMethod::Corollary1 => "corollary1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanBoundResult {
    pub side: Side,
    pub case: FanCase,
    pub condition: ConditionKind,
    pub beta_min: f64,
    pub method: BoundMethod,
    pub worst_lambda: Option<f64>,
    pub monotone_flag: bool,
    pub effective_m: f64,
    pub effective_sigma: f64,
}

/// The four functionals of a corner: `A_I±` and `A_S±`.
#[derive(Debug, Clone)]
pub struct CornerFunctionals {
    pub plus_i: AdhesionFunction,
    pub plus_s: AdhesionFunction,
    pub minus_i: AdhesionFunction,
    pub minus_s: AdhesionFunction,
}

impl CornerFunctionals {
    pub fn get(&self, side: Side, kind: AdhesionKind) -> &AdhesionFunction {
        match (side, kind) {
            (Side::Plus, AdhesionKind::I) => &self.plus_i,
            (Side::Plus, AdhesionKind::S) => &self.plus_s,
            (Side::Minus, AdhesionKind::I) => &self.minus_i,
            (Side::Minus, AdhesionKind::S) => &self.minus_s,
        }
    }
}

/// Scans both conditions of a case and attaches the effective angles.
pub fn bounds_for_case(
    functionals: &CornerFunctionals,
    case: FanCase,
    scan: &FanScan,
    b_grid: &[f64],
) -> Result<Vec<FanBoundResult>> {
    case_condition_map(case)
        .into_iter()
        .map(|(side, condition)| {
            let a = functionals.get(side, condition.adhesion_kind());
            let r = min_admissible_fan(a, condition, scan)?;
            let (m, sigma) = effective_angle(a, b_grid)?;
            Ok(FanBoundResult {
                side,
                case,
                condition,
                beta_min: r.beta_min,
                method: BoundMethod::Theorem2Scan,
                worst_lambda: Some(r.worst_lambda),
                monotone_flag: r.monotone_flag,
                effective_m: m,
                effective_sigma: sigma,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn zero() -> AdhesionFunction {
        AdhesionFunction::linear(AdhesionKind::I, 0.0)
    }

    #[test]
    fn increasing_condition_examples() {
        let id = AdhesionFunction::linear(AdhesionKind::I, 1.0);
        for (beta, lambda) in [(0.1, 0.5), (1.0, 2.0), (2.5, 3.0)] {
            assert!(condition_increasing(&id, beta, lambda).unwrap() >= -1e-15);
        }
        let v = condition_increasing(&zero(), FRAC_PI_4, FRAC_PI_2).unwrap();
        assert!((v - (FRAC_PI_4.sin() - 1.0)).abs() < 1e-15);
        assert!((v + 0.29289).abs() < 1e-5);
        let v = condition_increasing(&zero(), FRAC_PI_2, FRAC_PI_2 + 1e-6).unwrap();
        assert!(v.abs() < 1e-11);
        assert!(condition_increasing(&zero(), 1.0, 1.0).is_err());
        assert!(condition_increasing(&zero(), 1.0, PI).is_err());
    }

    #[test]
    fn decreasing_condition_examples() {
        let neg = AdhesionFunction::linear(AdhesionKind::S, -1.0);
        for (beta, lambda) in [(0.1, 0.5), (1.0, 2.0), (2.5, 3.0)] {
            assert!(condition_decreasing(&neg, beta, lambda).unwrap() >= -1e-15);
        }
        let z = AdhesionFunction::linear(AdhesionKind::S, 0.0);
        let v = condition_decreasing(&z, FRAC_PI_4, FRAC_PI_2).unwrap();
        assert!((v + 0.29289).abs() < 1e-5);
        let v = condition_decreasing(&z, FRAC_PI_2, FRAC_PI_2 + 1e-6).unwrap();
        assert!(v.abs() < 1e-11);
    }

    #[test]
    fn for_all_lambda_examples() {
        let grid = LambdaGrid::default();
        let id = AdhesionFunction::linear(AdhesionKind::I, 1.0);
        let c = |l: f64| condition_increasing(&id, 0.0, l).unwrap();
        assert!(holds_for_all_lambda(&c, 0.0, &grid).unwrap().holds);

        let z = zero();
        let c = |l: f64| condition_increasing(&z, FRAC_PI_4, l).unwrap();
        let s = holds_for_all_lambda(&c, FRAC_PI_4, &grid).unwrap();
        assert!(!s.holds);
        assert!((s.worst_lambda - FRAC_PI_2).abs() < 1e-6);

        let c = |l: f64| condition_increasing(&z, FRAC_PI_2, l).unwrap();
        let s = holds_for_all_lambda(&c, FRAC_PI_2, &grid).unwrap();
        assert!(s.holds);
        assert!((s.worst_lambda - FRAC_PI_2).abs() < 1e-3);

        assert!(holds_for_all_lambda(&c, PI - 1e-5, &grid).is_err());
    }

    #[test]
    fn min_fan_for_constant_angles() {
        let scan = FanScan::default();
        let z = zero();
        let r = min_admissible_fan(&z, ConditionKind::Increasing, &scan).unwrap();
        assert!((r.beta_min - FRAC_PI_2).abs() <= 1e-3);
        assert!(r.monotone_flag);

        let g = 2.0 * PI / 3.0;
        let a = AdhesionFunction::example1(AdhesionKind::I, g, g);
        let r = min_admissible_fan(&a, ConditionKind::Increasing, &scan).unwrap();
        assert!((r.beta_min - g).abs() <= 1e-3);

        let s = AdhesionFunction::constant_angle(AdhesionKind::S, FRAC_PI_2);
        let r = min_admissible_fan(&s, ConditionKind::Decreasing, &scan).unwrap();
        assert!((r.beta_min - FRAC_PI_2).abs() <= 1e-3);
    }

    #[test]
    fn infeasible_scan() {
        // A(b) = -b with the increasing condition needs β = π
        let a = AdhesionFunction::linear(AdhesionKind::I, -1.0);
        let scan = FanScan {
            beta_step: 1e-2,
            ..FanScan::default()
        };
        assert!(matches!(
            min_admissible_fan(&a, ConditionKind::Increasing, &scan),
            Err(Error::InfeasibleScan { .. })
        ));
    }

    #[test]
    fn closed_form_bound_examples() {
        assert_eq!(corollary1_bound(1.0, CorollaryVariant::A).unwrap(), 0.0);
        assert!((corollary1_bound(0.0, CorollaryVariant::C).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let v = corollary1_bound(-1.0 / 6.0, CorollaryVariant::A).unwrap();
        assert!((v - 1.73824).abs() < 1e-5);
        assert!(corollary1_bound(1.5, CorollaryVariant::B).is_err());
    }

    #[test]
    fn effective_angle_examples() {
        let g = default_b_grid();
        let (g1, g2) = (PI / 3.0, 2.0 * PI / 3.0);
        let (m, s) = effective_angle(&AdhesionFunction::example1(AdhesionKind::I, g1, g2), &g).unwrap();
        assert!((m - g2.cos()).abs() < 1e-12);
        assert!((s - g2).abs() < 1e-6);
        let (m, s) = effective_angle(&AdhesionFunction::constant_angle(AdhesionKind::S, 0.8), &g).unwrap();
        assert!((m - 0.8f64.cos()).abs() < 1e-12);
        assert!((s - 0.8).abs() < 1e-6);
        assert!(effective_angle(&zero(), &g[..10]).is_err());
        assert!(effective_angle(&zero(), &vec![1.5; 40]).is_err());
    }

    #[test]
    fn case_map_matches_condition_list() {
        use ConditionKind::*;
        assert_eq!(
            case_condition_map(FanCase::I),
            [(Side::Plus, Increasing), (Side::Minus, Decreasing)]
        );
        assert_eq!(
            case_condition_map(FanCase::DI),
            [(Side::Plus, Increasing), (Side::Minus, Increasing)]
        );
        assert_eq!(
            case_condition_map(FanCase::ID),
            [(Side::Minus, Decreasing), (Side::Plus, Decreasing)]
        );
        assert_eq!(
            case_condition_map(FanCase::D),
            [(Side::Minus, Increasing), (Side::Plus, Decreasing)]
        );
        assert!("X".parse::<FanCase>().is_err());
    }
}
