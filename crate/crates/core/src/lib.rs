//! Capillary surfaces at wedge corners with oscillating contact angle.
//!
//! The crate is organised bottom-up:
//!
//! * [`contact_profile`] holds piecewise-constant contact-angle data on the two
//!   walls and integrates `cos γ` exactly.
//! * [`fan_functionals`] estimates (or, for structured profiles, evaluates
//!   exactly) the scale-averaged adhesion functionals `A_I(b)` and `A_S(b)`.
//! * [`fan_bounds`] turns those functionals into lower bounds on the sizes of
//!   the side fans of the radial-limit function.
//! * [`blowup_geometry`] implements the rescaling and triangle-perturbation
//!   comparisons that produce those bounds, with a coordinate-geometry check.
//! * [`solver`] is a finite-volume damped-Newton solver for the capillary and
//!   prescribed-mean-curvature problems on a truncated sector, together with
//!   radial-limit extraction and fan measurement.
//! * [`profile_file`] and [`report`] are the file formats used by the CLI.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blowup_geometry;
pub mod contact_profile;
pub mod error;
pub mod fan_bounds;
pub mod fan_functionals;
pub mod profile_file;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
