//! Choice of adhesion-functional evaluator for a profile file.

use capwedge::contact_profile::ContactProfile;
use capwedge::fan_bounds::AdhesionFunction;
use capwedge::fan_functionals::{
    estimate_ai, estimate_as, exact_a_example1, exact_a_log_periodic, AdhesionEstimate, AdhesionKind, SweepConfig,
    DEFAULT_POINTS_PER_DECADE,
};
use capwedge::profile_file::{Generator, ProfileSpec};

use crate::args::Method;
use crate::error::{CliError, CliResult};

/// Scale ratio of the log-periodic generator.
const LOG_PERIOD: f64 = 4.0;

fn angle(g: f64, degrees: bool) -> f64 {
    if degrees {
        g.to_radians()
    } else {
        g
    }
}

/// `(A_I(b), A_S(b))` by the closed form the profile admits.
pub fn exact_pair(
    spec: &ProfileSpec,
    profile: &ContactProfile,
    b: f64,
    degrees: bool,
) -> CliResult<(AdhesionEstimate, AdhesionEstimate)> {
    match spec.generator {
        Some(Generator::Example1 { gamma1, gamma2, .. }) => {
            Ok(exact_a_example1(angle(gamma1, degrees), angle(gamma2, degrees), b)?)
        }
        _ => Ok(exact_a_log_periodic(profile, b, LOG_PERIOD)?),
    }
}

pub fn sweep_pair(profile: &ContactProfile, b: f64, eps_floor: f64) -> CliResult<(AdhesionEstimate, AdhesionEstimate)> {
    let sweep = SweepConfig::with_floor(profile, b, eps_floor, DEFAULT_POINTS_PER_DECADE)?;
    Ok((estimate_ai(profile, b, &sweep)?, estimate_as(profile, b, &sweep)?))
}

pub fn pair(
    spec: &ProfileSpec,
    profile: &ContactProfile,
    b: f64,
    method: Method,
    degrees: bool,
    eps_floor: f64,
) -> CliResult<(AdhesionEstimate, AdhesionEstimate)> {
    match method {
        Method::Exact => exact_pair(spec, profile, b, degrees),
        Method::Sweep => sweep_pair(profile, b, eps_floor),
        Method::Auto => exact_pair(spec, profile, b, degrees).or_else(|_| sweep_pair(profile, b, eps_floor)),
    }
}

/// `b ↦ A(b)` of the requested kind.
pub fn function(
    spec: &ProfileSpec,
    profile: &ContactProfile,
    kind: AdhesionKind,
    method: Method,
    degrees: bool,
    eps_floor: f64,
) -> CliResult<AdhesionFunction> {
    let exact = || -> CliResult<AdhesionFunction> {
        match spec.generator {
            Some(Generator::Example1 { gamma1, gamma2, .. }) => Ok(AdhesionFunction::example1(
                kind,
                angle(gamma1, degrees),
                angle(gamma2, degrees),
            )),
            _ => Ok(AdhesionFunction::log_periodic(kind, profile, LOG_PERIOD)?),
        }
    };
    let sweep = || AdhesionFunction::sweep(kind, profile.clone(), eps_floor, DEFAULT_POINTS_PER_DECADE);
    match method {
        Method::Exact => exact(),
        Method::Sweep => Ok(sweep()),
        Method::Auto => Ok(exact().unwrap_or_else(|_| sweep())),
    }
}

pub fn check_eps_floor(eps_floor: f64) -> CliResult<f64> {
    if eps_floor > 0.0 && eps_floor < 1.0 {
        Ok(eps_floor)
    } else {
        Err(CliError::Core(capwedge::Error::Domain(format!(
            "eps floor {eps_floor} must lie in (0, 1)"
        ))))
    }
}
