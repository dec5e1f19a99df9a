use serde::Serialize;

use crate::contact_profile::WedgeGeometry;
use crate::error::{Error, Result};

/// Polar grid on the truncated sector `r_min ≤ r ≤ r_max`, `|θ| ≤ α`.
///
/// Radii are geometrically graded toward the corner, which makes the grid
/// uniform in `ρ = ln r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorMesh {
    #[serde(skip)]
    geometry: WedgeGeometry,
    alpha: f64,
    /// `r_0 = r_max > r_1 > … > r_m = r_min`
    radii: Vec<f64>,
    /// `-α = θ_0 < … < θ_n = α`
    thetas: Vec<f64>,
    log_step: f64,
}

pub fn build_sector_mesh(
    geometry: WedgeGeometry,
    r_min: f64,
    r_max: f64,
    m: usize,
    n_theta: usize,
) -> Result<SectorMesh> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(Error::InvalidMesh(format!(
            "need 0 < r_min < r_max, got r_min={r_min}, r_max={r_max}"
        )));
    }
    if m < 2 || n_theta < 2 {
        return Err(Error::InvalidMesh(format!(
            "need at least 2 radial and angular cells, got m={m}, n_theta={n_theta}"
        )));
    }
    let log_step = (r_max / r_min).ln() / m as f64;
    let mut radii: Vec<f64> = (0..=m).map(|i| r_max * (-(i as f64) * log_step).exp()).collect();
    radii[m] = r_min;
    let alpha = geometry.alpha();
    let thetas = (0..=n_theta)
        .map(|j| alpha * (2.0 * j as f64 / n_theta as f64 - 1.0))
        .collect();
    Ok(SectorMesh {
        geometry,
        alpha,
        radii,
        thetas,
        log_step,
    })
}

impl SectorMesh {
    pub fn geometry(&self) -> &WedgeGeometry {
        &self.geometry
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Number of radial cells `m`.
    pub fn m(&self) -> usize {
        self.radii.len() - 1
    }

    /// Number of angular cells `n_θ`.
    pub fn n_theta(&self) -> usize {
        self.thetas.len() - 1
    }

    pub fn r_min(&self) -> f64 {
        self.radii[self.m()]
    }

    pub fn r_max(&self) -> f64 {
        self.radii[0]
    }

    /// `ln(r_i / r_{i+1})`
    pub fn log_step(&self) -> f64 {
        self.log_step
    }

    pub fn theta_step(&self) -> f64 {
        2.0 * self.alpha / self.n_theta() as f64
    }

    /// `r_{i+1}/r_i`
    pub fn grading_ratio(&self) -> f64 {
        (-self.log_step).exp()
    }

    pub fn node_count(&self) -> usize {
        self.radii.len() * self.thetas.len()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.thetas.len() + j
    }

    pub fn node_xy(&self, i: usize, j: usize) -> (f64, f64) {
        let (r, t) = (self.radii[i], self.thetas[j]);
        (r * t.cos(), r * t.sin())
    }

    /// Radial extent `[r_lo, r_hi]` of the control volume of row `i`.
    pub fn cv_radial_bounds(&self, i: usize) -> (f64, f64) {
        let half = (0.5 * self.log_step).exp();
        let r = self.radii[i];
        let hi = if i == 0 { r } else { r * half };
        let lo = if i == self.m() { r } else { r / half };
        (lo, hi)
    }

    /// Angular extent of the control volume of column `j`.
    pub fn cv_angular_bounds(&self, j: usize) -> (f64, f64) {
        let half = 0.5 * self.theta_step();
        let t = self.thetas[j];
        let lo = if j == 0 { t } else { t - half };
        let hi = if j == self.n_theta() { t } else { t + half };
        (lo, hi)
    }

    /// Area of the control volume around node `(i, j)`.
    pub fn cv_area(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = self.cv_radial_bounds(i);
        let (tlo, thi) = self.cv_angular_bounds(j);
        0.5 * (hi * hi - lo * lo) * (thi - tlo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn geometric_radii() {
        let g = WedgeGeometry::new(FRAC_PI_4).unwrap();
        let mesh = build_sector_mesh(g, 1e-3, 1.0, 3, 4).unwrap();
        for (r, want) in mesh.radii().iter().zip([1.0, 0.1, 0.01, 0.001]) {
            assert!((r - want).abs() <= 1e-15 * want, "{r} vs {want}");
        }
        let want = [-FRAC_PI_4, -FRAC_PI_8, 0.0, FRAC_PI_8, FRAC_PI_4];
        for (t, w) in mesh.thetas().iter().zip(want) {
            assert!((t - w).abs() < 1e-16);
        }
    }

    #[test]
    fn constant_grading_ratio() {
        let g = WedgeGeometry::new(1.0).unwrap();
        let mesh = build_sector_mesh(g, 1e-5, 1.0, 40, 16).unwrap();
        let q = mesh.grading_ratio();
        for w in mesh.radii().windows(2) {
            assert!((w[1] / w[0] - q).abs() < 1e-12);
        }
    }

    #[test]
    fn refinement_takes_square_root_of_ratio() {
        let g = WedgeGeometry::new(1.0).unwrap();
        let coarse = build_sector_mesh(g, 1e-3, 1.0, 8, 16).unwrap();
        let fine = build_sector_mesh(g, 1e-3, 1.0, 16, 16).unwrap();
        assert!((fine.grading_ratio() - coarse.grading_ratio().sqrt()).abs() < 1e-14);
        for (i, r) in coarse.radii().iter().enumerate() {
            assert!((fine.radii()[2 * i] - r).abs() < 1e-15);
        }
    }

    #[test]
    fn control_volumes_tile_the_sector() {
        let g = WedgeGeometry::new(0.9).unwrap();
        let mesh = build_sector_mesh(g, 0.01, 2.0, 17, 20).unwrap();
        let total: f64 = (0..=mesh.m())
            .flat_map(|i| (0..=mesh.n_theta()).map(move |j| (i, j)))
            .map(|(i, j)| mesh.cv_area(i, j))
            .sum();
        let exact = 0.9 * (4.0 - 1e-4);
        assert!((total - exact).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let g = WedgeGeometry::new(1.0).unwrap();
        assert!(build_sector_mesh(g, 0.0, 1.0, 16, 16).is_err());
        assert!(build_sector_mesh(g, 2.0, 1.0, 16, 16).is_err());
        assert!(build_sector_mesh(g, 0.1, 1.0, 1, 16).is_err());
    }
}
