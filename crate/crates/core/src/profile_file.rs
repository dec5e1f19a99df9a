//! JSON profile specification files.
//!
//! ```json
//! { "side": "+", "s_max": 1.0,
//!   "segments": [ { "s_end": 0.5, "gamma": 1.0 }, { "s_end": 1.0, "gamma": 2.0 } ] }
//! { "side": "-", "s_max": 1.0,
//!   "generator": { "type": "example1", "gamma1": 1.047, "gamma2": 2.094, "depth": 20 } }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::contact_profile::{ContactProfile, Side};
use crate::error::{Error, Result};

/// Depth used by generators when the file does not give one; the finest
/// block of Example 1 then sits at `2^-1056`.
pub const DEFAULT_EXAMPLE1_DEPTH: usize = 32;
pub const DEFAULT_EXAMPLE2_DEPTH: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub s_end: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    Constant {
        gamma1: f64,
    },
    Example1 {
        gamma1: f64,
        gamma2: f64,
        depth: Option<usize>,
    },
    Example2 {
        gamma1: f64,
        gamma2: f64,
        depth: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub side: Side,
    pub s_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<Segment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
}

impl ProfileSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("profile file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read profile {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Builds the profile. With `degrees` every angle in the file is read in
    /// degrees.
    pub fn build(&self, degrees: bool) -> Result<ContactProfile> {
        let conv = |g: f64| if degrees { g.to_radians() } else { g };
        match (&self.segments, &self.generator) {
            (Some(segments), None) => {
                let breaks: Vec<f64> = segments.iter().map(|s| s.s_end).collect();
                let values: Vec<f64> = segments.iter().map(|s| conv(s.gamma)).collect();
                ContactProfile::make_piecewise(self.side, &breaks, &values, self.s_max)
            }
            (None, Some(generator)) => {
                // generated profiles live on (0, 1]
                if !(self.s_max > 0.0 && self.s_max <= 1.0) {
                    return Err(Error::InvalidProfile(format!(
                        "generated profiles need 0 < s_max <= 1, got {}",
                        self.s_max
                    )));
                }
                let full = match *generator {
                    Generator::Constant { gamma1 } => ContactProfile::constant(self.side, conv(gamma1), 1.0)?,
                    Generator::Example1 { gamma1, gamma2, depth } => ContactProfile::example1(
                        self.side,
                        conv(gamma1),
                        conv(gamma2),
                        depth.unwrap_or(DEFAULT_EXAMPLE1_DEPTH),
                    )?,
                    Generator::Example2 { gamma1, gamma2, depth } => ContactProfile::example2(
                        self.side,
                        conv(gamma1),
                        conv(gamma2),
                        depth.unwrap_or(DEFAULT_EXAMPLE2_DEPTH),
                    )?,
                };
                if self.s_max < 1.0 {
                    full.truncated(self.s_max)
                } else {
                    Ok(full)
                }
            }
            _ => Err(Error::InvalidProfile(
                "exactly one of `segments` or `generator` must be given".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn segments_round_trip() {
        let spec = ProfileSpec::from_json(
            r#"{"side":"+","s_max":1,"segments":[{"s_end":0.5,"gamma":0},{"s_end":1,"gamma":3.141592653589793}]}"#,
        )
        .unwrap();
        let p = spec.build(false).unwrap();
        assert_eq!(p.side(), Side::Plus);
        assert!(p.cos_integral(1.0).unwrap().abs() < 1e-15);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(ProfileSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn generators_and_degrees() {
        let spec = ProfileSpec::from_json(
            r#"{"side":"-","s_max":0.5,"generator":{"type":"example1","gamma1":60,"gamma2":120,"depth":5}}"#,
        )
        .unwrap();
        let p = spec.build(true).unwrap();
        assert_eq!(p.s_max(), 0.5);
        assert!((p.value_at(0.4).unwrap() - 120f64.to_radians()).abs() < 1e-15);

        let c = ProfileSpec::from_json(r#"{"side":"+","s_max":1,"generator":{"type":"constant","gamma1":90}}"#)
            .unwrap()
            .build(true)
            .unwrap();
        assert!((c.value_at(0.3).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(ProfileSpec::from_json("{").is_err());
        assert!(ProfileSpec::from_json(r#"{"side":"x","s_max":1,"segments":[]}"#).is_err());
        let both = ProfileSpec::from_json(
            r#"{"side":"+","s_max":1,"segments":[{"s_end":1,"gamma":1}],"generator":{"type":"constant","gamma1":1}}"#,
        )
        .unwrap();
        assert!(both.build(false).is_err());
        let big =
            ProfileSpec::from_json(r#"{"side":"+","s_max":2,"generator":{"type":"constant","gamma1":1}}"#).unwrap();
        assert!(big.build(false).is_err());
    }
}
