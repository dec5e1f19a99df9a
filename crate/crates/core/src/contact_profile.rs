//! Piecewise-constant contact-angle profiles on the two walls of a wedge.
//!
//! A profile stores `γ(s)` along one wall as a list of segments
//! `(s_{i-1}, s_i]` with `s_0 = 0`. Integrals of `cos γ` are finite sums of
//! `length × cos(value)` and are therefore exact up to floating-point
//! rounding.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent `k` for which `2^-k` is still a positive `f64`.
const MIN_POSITIVE_EXPONENT: usize = 1074;

/// Which wall of the wedge a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn mirror(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Side::Plus),
            "-" | "minus" => Ok(Side::Minus),
            other => Err(Error::Parse(format!("unknown side {other:?}"))),
        }
    }
}

/// The wedge `{r > 0, -α < θ < α}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeGeometry {
    alpha: f64,
}

impl WedgeGeometry {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= PI) {
            return Err(Error::InvalidGeometry(format!(
                "half-opening angle {alpha} not in (0, pi]"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Convex corners have `α ≤ π/2`.
    pub fn is_convex(&self) -> bool {
        self.alpha <= FRAC_PI_2
    }

    /// True if `(x, y)` lies in the closed sector without the corner.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let r = x.hypot(y);
        r > 0.0 && y.atan2(x).abs() <= self.alpha + 1e-12
    }
}

/// Contact angle `γ(s)` along one wall, piecewise constant in arclength.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactProfile {
    side: Side,
    s_max: f64,
    /// Upper ends of the segments; the last entry equals `s_max`.
    ends: Vec<f64>,
    values: Vec<f64>,
    cos_values: Vec<f64>,
    /// `prefix[i]` is the integral of `cos γ` over `(0, ends[i]]`.
    prefix: Vec<f64>,
    annotations: Vec<(f64, f64)>,
}

fn check_angle(value: f64) -> Result<()> {
    if !(0.0..=PI).contains(&value) {
        return Err(Error::InvalidProfile(format!("contact angle {value} outside [0, pi]")));
    }
    Ok(())
}

impl ContactProfile {
    /// Builds a validated profile.
    ///
    /// `values[i]` applies on `(breaks[i-1], breaks[i]]`. If the last break is
    /// below `s_max`, `values` must carry one extra entry for the tail
    /// `(breaks[n-1], s_max]`.
    pub fn make_piecewise(side: Side, breaks: &[f64], values: &[f64], s_max: f64) -> Result<Self> {
        if !(s_max > 0.0 && s_max.is_finite()) {
            return Err(Error::InvalidProfile(format!("s_max {s_max} must be positive")));
        }
        if breaks.is_empty() || values.is_empty() {
            return Err(Error::InvalidProfile("empty segment list".into()));
        }
        if breaks[0] <= 0.0 || breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidProfile(
                "breaks must be positive and strictly increasing".into(),
            ));
        }
        let last = *breaks.last().unwrap();
        if last > s_max {
            return Err(Error::InvalidProfile(format!("break {last} exceeds s_max {s_max}")));
        }
        let mut ends = breaks.to_vec();
        match values.len() as isize - breaks.len() as isize {
            0 if last == s_max => {}
            0 => {
                return Err(Error::InvalidProfile(format!(
                    "segments end at {last} but s_max is {s_max}; supply a tail value"
                )))
            }
            1 if last < s_max => ends.push(s_max),
            _ => {
                return Err(Error::InvalidProfile(format!(
                    "{} values for {} breaks",
                    values.len(),
                    breaks.len()
                )))
            }
        }
        for &v in values {
            check_angle(v)?;
        }
        Ok(Self::from_parts(side, s_max, ends, values.to_vec()))
    }

    /// Constant profile `γ ≡ gamma` on `(0, s_max]`.
    pub fn constant(side: Side, gamma: f64, s_max: f64) -> Result<Self> {
        Self::make_piecewise(side, &[s_max], &[gamma], s_max)
    }

    fn from_parts(side: Side, s_max: f64, ends: Vec<f64>, values: Vec<f64>) -> Self {
        let cos_values: Vec<f64> = values.iter().map(|v| v.cos()).collect();
        let mut prefix = Vec::with_capacity(ends.len());
        let mut acc = 0.0;
        let mut lo = 0.0;
        for (&hi, &c) in ends.iter().zip(&cos_values) {
            acc += (hi - lo) * c;
            prefix.push(acc);
            lo = hi;
        }
        Self {
            side,
            s_max,
            ends,
            values,
            cos_values,
            prefix,
            annotations: Vec::new(),
        }
    }

    /// Example 1 blocks: `(2^{-n²}, 2^{-n(n-1)}]` carry `g1` and
    /// `(2^{-n(n+1)}, 2^{-n²}]` carry `g2`, for `n = 1..=depth`. Below
    /// `2^{-depth(depth+1)}` the profile keeps the value `g2`.
    pub fn example1(side: Side, g1: f64, g2: f64, depth: usize) -> Result<Self> {
        check_angle(g1)?;
        check_angle(g2)?;
        if depth == 0 {
            return Err(Error::InvalidProfile("depth must be at least 1".into()));
        }
        if depth * (depth + 1) > MIN_POSITIVE_EXPONENT {
            return Err(Error::DepthUnderflow { depth });
        }
        let pow2 = |k: usize| 2f64.powi(-(k as i32));
        let mut ends = vec![pow2(depth * (depth + 1))];
        let mut values = vec![g2];
        for n in (1..=depth).rev() {
            ends.push(pow2(n * n));
            values.push(g2);
            ends.push(pow2(n * (n - 1)));
            values.push(g1);
        }
        Ok(Self::from_parts(side, 1.0, ends, values))
    }

    /// Example 2 blocks: `(2/4ⁿ, 4/4ⁿ)` carry `g1` and `(1/4ⁿ, 2/4ⁿ)` carry
    /// `g2`. The isolated values `π` at `4/4ⁿ` and `0` at `2/4ⁿ` are kept as
    /// point annotations only.
    pub fn example2(side: Side, g1: f64, g2: f64, depth: usize) -> Result<Self> {
        check_angle(g1)?;
        check_angle(g2)?;
        if depth == 0 {
            return Err(Error::InvalidProfile("depth must be at least 1".into()));
        }
        if 2 * depth > MIN_POSITIVE_EXPONENT {
            return Err(Error::DepthUnderflow { depth });
        }
        let pow4 = |k: usize| 2f64.powi(-2 * k as i32);
        let mut ends = vec![pow4(depth)];
        let mut values = vec![g2];
        let mut annotations = Vec::with_capacity(2 * depth);
        for n in (1..=depth).rev() {
            ends.push(2.0 * pow4(n));
            values.push(g2);
            ends.push(4.0 * pow4(n));
            values.push(g1);
        }
        for n in 1..=depth {
            annotations.push((4.0 * pow4(n), PI));
            annotations.push((2.0 * pow4(n), 0.0));
        }
        annotations.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut profile = Self::from_parts(side, 1.0, ends, values);
        profile.annotations = annotations;
        Ok(profile)
    }

    /// Restricts the profile to `(0, s_max]`.
    pub fn truncated(&self, s_max: f64) -> Result<Self> {
        if !(s_max > 0.0 && s_max <= self.s_max) {
            return Err(Error::Domain(format!(
                "cannot truncate profile on (0, {}] to s_max={s_max}",
                self.s_max
            )));
        }
        let k = self.segment_index(s_max);
        let mut ends = self.ends[..=k].to_vec();
        ends[k] = s_max;
        let values = self.values[..=k].to_vec();
        let mut out = Self::from_parts(self.side, s_max, ends, values);
        out.annotations = self.annotations.iter().copied().filter(|&(s, _)| s <= s_max).collect();
        Ok(out)
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    /// Upper ends of the segments, ascending; the last one is `s_max`.
    pub fn segment_ends(&self) -> &[f64] {
        &self.ends
    }

    pub fn segment_values(&self) -> &[f64] {
        &self.values
    }

    pub fn point_annotations(&self) -> &[(f64, f64)] {
        &self.annotations
    }

    /// Index of the segment covering `s` (segments are closed on the right).
    fn segment_index(&self, s: f64) -> usize {
        self.ends.partition_point(|&e| e < s).min(self.ends.len() - 1)
    }

    fn check_arclength(&self, s: f64, allow_zero: bool) -> Result<f64> {
        let lo_ok = if allow_zero { s >= 0.0 } else { s > 0.0 };
        if lo_ok && s <= self.s_max {
            return Ok(s);
        }
        // eps_hi = s_max / b can land one ulp above s_max after multiplying back
        if s > self.s_max && s <= self.s_max * (1.0 + 1e-12) {
            return Ok(self.s_max);
        }
        Err(Error::Domain(format!("arclength {s} outside (0, {}]", self.s_max)))
    }

    /// `γ(s)` for `s ∈ (0, s_max]`. Point annotations are ignored.
    pub fn value_at(&self, s: f64) -> Result<f64> {
        let s = self.check_arclength(s, false)?;
        Ok(self.values[self.segment_index(s)])
    }

    /// `∫₀ˣ cos γ(t) dt`.
    pub fn cos_integral(&self, x: f64) -> Result<f64> {
        let x = self.check_arclength(x, true)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        let k = self.segment_index(x);
        let (below, lo) = if k == 0 {
            (0.0, 0.0)
        } else {
            (self.prefix[k - 1], self.ends[k - 1])
        };
        Ok(below + (x - lo) * self.cos_values[k])
    }

    /// `(1/ε) ∫₀^{bε} cos γ(t) dt`.
    pub fn averaged_cos(&self, eps: f64, b: f64) -> Result<f64> {
        if !(eps > 0.0 && b > 0.0) {
            return Err(Error::Domain(format!("eps={eps} and b={b} must be positive")));
        }
        Ok(self.cos_integral(b * eps)? / eps)
    }

    /// Essential lower and upper limits of `γ` at the corner.
    ///
    /// A finite profile is constant below its first break, so the limits are
    /// taken over the deepest half of the segments (rounded up), which is
    /// where the generated oscillations accumulate.
    pub fn essential_range(&self) -> (f64, f64) {
        let deep = self.values.len().div_ceil(2);
        self.values[..deep]
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// True if every segment carries the same angle.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Arclengths where the angle actually changes.
    pub fn jumps(&self) -> Vec<f64> {
        self.values
            .windows(2)
            .zip(&self.ends)
            .filter(|(w, _)| w[0] != w[1])
            .map(|(_, &e)| e)
            .collect()
    }
}

/// Bounds `γ̲± ≤ γ±(s) ≤ γ̄±` near the corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBoundsHypothesis {
    pub lower_plus: f64,
    pub upper_plus: f64,
    pub lower_minus: f64,
    pub upper_minus: f64,
}

impl GammaBoundsHypothesis {
    pub fn new(lower_plus: f64, upper_plus: f64, lower_minus: f64, upper_minus: f64) -> Result<Self> {
        for v in [lower_plus, upper_plus, lower_minus, upper_minus] {
            check_angle(v)?;
        }
        if lower_plus > upper_plus || lower_minus > upper_minus {
            return Err(Error::InvalidProfile("lower bound exceeds upper bound".into()));
        }
        Ok(Self {
            lower_plus,
            upper_plus,
            lower_minus,
            upper_minus,
        })
    }

    /// Uses the essential range of each wall profile as the bounds.
    pub fn from_profiles(plus: &ContactProfile, minus: &ContactProfile) -> Self {
        let (lp, up) = plus.essential_range();
        let (lm, um) = minus.essential_range();
        Self {
            lower_plus: lp,
            upper_plus: up,
            lower_minus: lm,
            upper_minus: um,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem1Verdict {
    /// Nonconvex corner: radial limits exist without further conditions.
    NonconvexOk,
    /// Convex corner and the angle-sum condition holds.
    ConvexOk,
    Fails,
}

/// Checks whether the radial-limit existence result applies.
pub fn theorem1_applicability(geometry: &WedgeGeometry, h: &GammaBoundsHypothesis) -> Theorem1Verdict {
    let alpha = geometry.alpha();
    if !geometry.is_convex() {
        return Theorem1Verdict::NonconvexOk;
    }
    let low = h.lower_plus + h.lower_minus;
    let high = h.upper_plus + h.upper_minus;
    if PI - 2.0 * alpha < low && high < PI + 2.0 * alpha {
        Theorem1Verdict::ConvexOk
    } else {
        Theorem1Verdict::Fails
    }
}
