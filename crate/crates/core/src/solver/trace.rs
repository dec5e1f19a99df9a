use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::capillary::SolutionField;

/// Values of `f` along each mesh ray at the smallest radii, and the
/// extrapolated radial limit `Rf(θ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialTrace {
    /// Strictly decreasing.
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
    /// `values[k][j] = f(radii[k], thetas[j])`
    pub values: Vec<Vec<f64>>,
    pub rf: Vec<f64>,
    /// `|T_n - T_{n-1}|`, the change from dropping the largest radius.
    pub residual: Vec<f64>,
}

impl RadialTrace {
    /// Builds a trace from samples without a mesh.
    pub fn from_samples(radii: Vec<f64>, thetas: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if radii.len() < 2 {
            return Err(Error::Domain("radial trace needs at least 2 radii".into()));
        }
        if radii.windows(2).any(|w| !(w[1] < w[0])) || radii.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::Domain(
                "trace radii must be positive and strictly decreasing".into(),
            ));
        }
        if values.len() != radii.len() || values.iter().any(|row| row.len() != thetas.len()) {
            return Err(Error::Domain("trace values do not match the radius/theta grid".into()));
        }
        let mut rf = Vec::with_capacity(thetas.len());
        let mut residual = Vec::with_capacity(thetas.len());
        for j in 0..thetas.len() {
            let column: Vec<f64> = values.iter().map(|row| row[j]).collect();
            let full = extrapolate_to_zero(&radii, &column);
            let reduced = extrapolate_to_zero(&radii[1..], &column[1..]);
            rf.push(full);
            residual.push((full - reduced).abs());
        }
        Ok(Self {
            radii,
            thetas,
            values,
            rf,
            residual,
        })
    }

    pub fn median_residual(&self) -> f64 {
        let mut r = self.residual.clone();
        r.sort_by(f64::total_cmp);
        let n = r.len();
        if n == 0 {
            0.0
        } else if n % 2 == 1 {
            r[n / 2]
        } else {
            0.5 * (r[n / 2 - 1] + r[n / 2])
        }
    }
}

/// Value at `r = 0` of the interpolating polynomial through `(xs, ys)`
/// (Neville's scheme). Constant data is reproduced exactly.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            // P_{i..j}(0) = P_{i+1..j} + (P_{i+1..j} - P_{i..j-1}) · x_j / (x_i - x_j)
            p[i] = p[i + 1] + (p[i + 1] - p[i]) * xj / (xi - xj);
        }
    }
    p[0]
}

/// Samples `field` at its `n_radii` smallest radii and extrapolates to the
/// corner along every mesh ray.
pub fn radial_trace(field: &SolutionField, n_radii: usize) -> Result<RadialTrace> {
    if !field.converged {
        return Err(Error::Unconverged);
    }
    let m = field.mesh.m();
    if n_radii < 2 || n_radii > m {
        return Err(Error::Domain(format!("n_radii must lie in 2..={m}, got {n_radii}")));
    }
    let rows: Vec<usize> = (m + 1 - n_radii..=m).collect();
    let radii = rows.iter().map(|&i| field.mesh.radii()[i]).collect();
    let values = rows
        .iter()
        .map(|&i| (0..=field.mesh.n_theta()).map(|j| field.value(i, j)).collect())
        .collect();
    RadialTrace::from_samples(radii, field.mesh.thetas().to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact_profile::WedgeGeometry;
    use crate::solver::capillary::Physics;
    use crate::solver::mesh::build_sector_mesh;

    fn field(f: impl Fn(f64, f64) -> f64) -> SolutionField {
        let mesh = build_sector_mesh(WedgeGeometry::new(1.0).unwrap(), 1e-3, 1.0, 24, 16).unwrap();
        SolutionField::from_fn(
            mesh,
            Physics::Capillary {
                kappa: 1.0,
                lambda: 0.0,
            },
            f,
        )
    }

    #[test]
    fn constant_field_is_exact() {
        let t = radial_trace(&field(|_, _| 3.7), 6).unwrap();
        assert!(t.rf.iter().all(|&v| v == 3.7));
        assert!(t.residual.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn linear_decay_is_removed() {
        let t = radial_trace(&field(|r, _| 2.0 + r), 4).unwrap();
        assert!(t.rf.iter().all(|v| (v - 2.0).abs() < 1e-13));
    }

    #[test]
    fn separable_field_recovers_angular_part() {
        let t = radial_trace(&field(|r, th| th.sin() + r * th.cos()), 5).unwrap();
        for (v, th) in t.rf.iter().zip(&t.thetas) {
            assert!((v - th.sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn residual_shrinks_with_more_radii() {
        let f = field(|r, th| th + r.exp());
        let r3 = radial_trace(&f, 3).unwrap().median_residual();
        let r5 = radial_trace(&f, 5).unwrap().median_residual();
        assert!(r5 < r3, "{r5} !< {r3}");
    }

    #[test]
    fn unconverged_field_is_rejected() {
        let mut f = field(|_, _| 0.0);
        f.converged = false;
        assert!(matches!(radial_trace(&f, 3), Err(Error::Unconverged)));
        f.converged = true;
        assert!(radial_trace(&f, 1).is_err());
        assert!(radial_trace(&f, 25).is_err());
    }
}
