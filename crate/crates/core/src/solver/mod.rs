//! Truncated-sector solver, radial limits and fan measurement.

pub mod capillary;
pub mod fans;
pub mod manufactured;
pub mod mesh;
pub mod trace;

pub use capillary::{
    bounds_estimate, solve_capillary, solve_pmc, torus_minor_radius, BoundaryFluxes, Physics, SolutionField,
    SolverConfig,
};
pub use fans::{default_tolerance, measure_fans, measure_trace, FanMeasurement, TraceCase};
pub use manufactured::{convergence_study, solve_manufactured, ConvergenceRow};
pub use mesh::{build_sector_mesh, SectorMesh};
pub use trace::{radial_trace, RadialTrace};
