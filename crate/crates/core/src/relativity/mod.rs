//! Two-fluid matter content, Einstein's field equations and the
//! space-matter tensor.
//!
//! Conventions follow [`geometry`](crate::geometry): curvature tensors are in
//! the `g(R(X,Y)Z,W)` form and divergences contract the last slot. In the
//! field equation `S − (r/2) g + Λ g = κ T`, `κ` is whatever multiplies `T`
//! and `Λ` whatever multiplies `g`.

mod fluid;
mod spacematter;

pub use fluid::{
    efe_residual, efe_residual_for, energy_densities, energy_density_consistency, fluid_normalization,
    ricci_from_fluids, stress_energy, EnergyDensityCheck, FluidComponent, FluidIdentification, FluidRicci,
    GravConstants, NormalizationItem,
};
pub use spacematter::{
    div_space_matter, div_space_matter_direct, sigma_gradient_from_div_p, space_matter, SigmaGradient, SpaceMatter,
};

use crate::coqe::CoqeError;
use crate::geometry::GeometryError;
use crate::symexpr::ExprError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelativityError {
    #[error("coupling κ must be nonzero")]
    KappaZero,
    #[error("asymmetric input: {0}")]
    Asymmetric(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Coqe(#[from] CoqeError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
