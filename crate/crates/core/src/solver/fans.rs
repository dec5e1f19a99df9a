//! Fan structure of a sampled radial-limit function `Rf(θ)`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::solver::trace::RadialTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceCase {
    /// `Rf` constant on the whole sector.
    Constant,
    I,
    D,
    ID,
    DI,
}

impl TraceCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceCase::Constant => "constant",
            TraceCase::I => "I",
            TraceCase::D => "D",
            TraceCase::ID => "ID",
            TraceCase::DI => "DI",
        }
    }
}

impl fmt::Display for TraceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TraceCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "constant" | "i" => TraceCase::Constant,
            "I" => TraceCase::I,
            "D" => TraceCase::D,
            "ID" => TraceCase::ID,
            "DI" => TraceCase::DI,
            _ => return Err(Error::Parse(format!("unknown trace case {s:?}"))),
        })
    }
}

impl Serialize for TraceCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FanMeasurement {
    pub case: TraceCase,
    pub alpha: f64,
    /// End of the fan at `-α`; equals `α` in the constant case.
    pub alpha1: f64,
    /// Start of the fan at `+α`; equals `-α` in the constant case.
    pub alpha2: f64,
    pub alpha_l: Option<f64>,
    pub alpha_r: Option<f64>,
    pub beta_minus: f64,
    pub beta_plus: f64,
    pub tol: f64,
    pub grid_spacing: f64,
}

/// Plateau tolerance: ten times the median extrapolation residual, floored
/// at `1e-9·max(1, max|Rf|)` so exact traces still tolerate rounding.
pub fn default_tolerance(trace: &RadialTrace) -> f64 {
    let scale = trace.rf.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    (10.0 * trace.median_residual()).max(1e-9 * scale)
}

fn spread(v: &[f64]) -> f64 {
    let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    hi - lo
}

fn monotone(v: &[f64], increasing: bool, tol: f64) -> bool {
    let s = if increasing { 1.0 } else { -1.0 };
    v.windows(2).all(|w| s * (w[1] - w[0]) >= -tol) && s * (v[v.len() - 1] - v[0]) > tol
}

/// Longest run `[p, q]` inside `lo..=hi` whose values stay within `tol`.
fn longest_plateau(v: &[f64], lo: usize, hi: usize, tol: f64) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut p = lo;
    while p <= hi {
        let (mut mn, mut mx) = (v[p], v[p]);
        let mut q = p;
        while q < hi {
            let x = v[q + 1];
            if mx.max(x) - mn.min(x) > tol {
                break;
            }
            mn = mn.min(x);
            mx = mx.max(x);
            q += 1;
        }
        if best.is_none_or(|(a, b)| q - p > b - a) {
            best = Some((p, q));
        }
        p += 1;
    }
    best
}

/// Classifies `rf` sampled on the uniform grid `thetas` over `[-α, α]`.
pub fn measure_fans(thetas: &[f64], rf: &[f64], tol: f64) -> Result<FanMeasurement> {
    let n = thetas.len();
    if n < 3 || rf.len() != n {
        return Err(Error::Domain(
            "fan measurement needs matching theta and Rf samples (>= 3)".into(),
        ));
    }
    if !(tol >= 0.0) || rf.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("tolerance must be >= 0 and Rf finite".into()));
    }
    let alpha = thetas[n - 1];
    let dt = (thetas[n - 1] - thetas[0]) / (n - 1) as f64;
    if !(alpha > 0.0) || (thetas[0] + alpha).abs() > 1e-9 * alpha.max(1.0) {
        return Err(Error::Domain("theta grid must span [-alpha, alpha]".into()));
    }
    let measurement = |case, a1: f64, a2: f64, al, ar| FanMeasurement {
        case,
        alpha,
        alpha1: a1,
        alpha2: a2,
        alpha_l: al,
        alpha_r: ar,
        beta_minus: a1 + alpha,
        beta_plus: alpha - a2,
        tol,
        grid_spacing: dt,
    };

    // Noise inside the tolerance band can add up to a total variation above
    // tol on fine grids, so a trace whose spread fits the band is constant too.
    let tv: f64 = rf.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    if tv <= tol || spread(rf) <= tol {
        return Ok(measurement(TraceCase::Constant, alpha, -alpha, None, None));
    }

    let mut a = 0;
    while a + 1 < n && spread(&rf[..=a + 1]) <= tol {
        a += 1;
    }
    let mut b = n - 1;
    while b > 0 && spread(&rf[b - 1..]) <= tol {
        b -= 1;
    }
    if a >= b {
        return Err(Error::Unclassified(format!(
            "end plateaus overlap (alpha1={}, alpha2={}) although total variation {tv:e} exceeds {tol:e}",
            thetas[a], thetas[b]
        )));
    }
    let (a1, a2) = (thetas[a], thetas[b]);
    let middle = &rf[a..=b];
    if monotone(middle, true, tol) {
        return Ok(measurement(TraceCase::I, a1, a2, None, None));
    }
    if monotone(middle, false, tol) {
        return Ok(measurement(TraceCase::D, a1, a2, None, None));
    }

    if 2.0 * alpha > std::f64::consts::PI && b > a + 2 {
        if let Some((p, q)) = longest_plateau(rf, a + 1, b - 1, tol) {
            let (al, ar) = (thetas[p], thetas[q]);
            let width_ok = ((ar - al) - std::f64::consts::PI).abs() <= 2.0 * dt;
            let left = &rf[a..=p];
            let right = &rf[q..=b];
            if width_ok {
                if monotone(left, true, tol) && monotone(right, false, tol) {
                    return Ok(measurement(TraceCase::ID, a1, a2, Some(al), Some(ar)));
                }
                if monotone(left, false, tol) && monotone(right, true, tol) {
                    return Ok(measurement(TraceCase::DI, a1, a2, Some(al), Some(ar)));
                }
            }
            return Err(Error::Unclassified(format!(
                "between alpha1={a1} and alpha2={a2}: interior plateau [{al}, {ar}] (width {}) with non-monotone flanks",
                ar - al
            )));
        }
    }
    Err(Error::Unclassified(format!(
        "Rf is not monotone between alpha1={a1} and alpha2={a2}"
    )))
}

/// [`measure_fans`] on a radial trace with [`default_tolerance`] unless
/// `tol` is given.
pub fn measure_trace(trace: &RadialTrace, tol: Option<f64>) -> Result<FanMeasurement> {
    let tol = tol.unwrap_or_else(|| default_tolerance(trace));
    measure_fans(&trace.thetas, &trace.rf, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(alpha: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|j| alpha * (2.0 * j as f64 / n as f64 - 1.0)).collect()
    }

    #[test]
    fn constant_trace() {
        let th = grid(1.0, 40);
        let m = measure_fans(&th, &vec![5.0; 41], 1e-9).unwrap();
        assert_eq!(m.case, TraceCase::Constant);
        assert_eq!((m.beta_minus, m.beta_plus), (2.0, 2.0));
    }

    #[test]
    fn noise_within_band_is_constant() {
        let th = grid(1.0, 40);
        let rf: Vec<f64> = (0..41).map(|j| if j % 2 == 0 { 1.0 } else { 1.0 + 5e-10 }).collect();
        assert_eq!(measure_fans(&th, &rf, 1e-9).unwrap().case, TraceCase::Constant);
    }

    #[test]
    fn increasing_trace() {
        let th = grid(1.0, 200);
        let rf: Vec<f64> = th.iter().map(|&t| t.clamp(-0.7, 0.5)).collect();
        let m = measure_fans(&th, &rf, 1e-9).unwrap();
        assert_eq!(m.case, TraceCase::I);
        assert!((m.beta_minus - 0.3).abs() <= m.grid_spacing);
        assert!((m.beta_plus - 0.5).abs() <= m.grid_spacing);
        let total = m.beta_minus + (m.alpha2 - m.alpha1) + m.beta_plus;
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn decreasing_trace() {
        let th = grid(1.0, 100);
        let rf: Vec<f64> = th.iter().map(|&t| -(t.clamp(-0.2, 0.6))).collect();
        assert_eq!(measure_fans(&th, &rf, 1e-9).unwrap().case, TraceCase::D);
    }

    #[test]
    fn slit_trace_with_interior_plateau() {
        let th = grid(PI, 400);
        let rf: Vec<f64> = th
            .iter()
            .map(|&t| {
                if t < -2.8 {
                    1.0
                } else if t < -2.0 {
                    1.0 - (t + 2.8)
                } else if t <= -2.0 + PI {
                    0.2
                } else if t < 2.5 {
                    0.2 + (t - (PI - 2.0))
                } else {
                    0.2 + (2.5 - (PI - 2.0))
                }
            })
            .collect();
        let m = measure_fans(&th, &rf, 1e-9).unwrap();
        assert_eq!(m.case, TraceCase::DI);
        let (l, r) = (m.alpha_l.unwrap(), m.alpha_r.unwrap());
        assert!((r - l - PI).abs() <= 2.0 * m.grid_spacing);
    }

    #[test]
    fn oscillating_trace_is_unclassified() {
        let th = grid(1.0, 100);
        let rf: Vec<f64> = th.iter().map(|&t| (6.0 * t).sin()).collect();
        assert!(matches!(measure_fans(&th, &rf, 1e-9), Err(Error::Unclassified(_))));
    }

    #[test]
    fn case_labels_round_trip() {
        for c in [
            TraceCase::Constant,
            TraceCase::I,
            TraceCase::D,
            TraceCase::ID,
            TraceCase::DI,
        ] {
            assert_eq!(c.as_str().parse::<TraceCase>().unwrap(), c);
        }
    }
}
