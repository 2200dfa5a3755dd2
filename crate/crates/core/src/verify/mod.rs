//! Independent numerical checks of the closed-form kernels.
//!
//! Nothing here evaluates a kernel through its closed form except where that
//! value is the thing being compared: the finite-difference oracle only
//! knows the potential, and quadrature only knows integrands.

mod green;
mod grid;
mod integrals;
mod quadrature;
mod schur;
mod wronskian;

pub use green::{
    default_window, green_residual, green_residual_default, oracle_resolve, oracle_resolve_with,
    refinement_study, window_doubling, EdgeCondition, GreenResidualReport, OracleSolution, RefinementReport,
    Window, WindowDoubling,
};
pub use grid::{fd_apply, fd_apply_with, Clustering, Grid, INTERVAL_QUANTUM};
pub use integrals::{hankel_transform, normalization_integral};
pub use quadrature::{
    gauss_legendre, integrate_finite, quadrature, quadrature_ray, quadrature_steepest_line, quadrature_with,
    QuadOptions, QuadResult,
};
pub use schur::{hilbert_schmidt_norm, schur_bound, SchurBlock, SchurReport};
pub use wronskian::{
    bc_wronskian_limit, boundary_function, wronskian, wronskian_scan, BcLimit, Endpoint, WronskianScan,
};
