//! Coordinate-chart differential geometry.
//!
//! Tensors are dense arrays of [`Expr`](crate::symexpr::Expr) components.
//! Curvature is computed once per metric in a [`CurvatureBundle`].

mod algebra;
mod chart;
mod conformal;
mod curvature;
mod metric;
mod predicates;
mod tensor;

pub use algebra::{
    algebraic_weyl, conformally_flat_curvature, contract, g_tensor, kulkarni_nomizu, kulkarni_nomizu_checked,
    sectional, weyl_of,
};
pub use chart::Chart;
pub use conformal::{
    conformal_mapping_constants, conformal_rescale, conharmonic_defect, conharmonic_scalar_law, mu_formula,
    rho_formula,
};
pub use curvature::{christoffel, differing, CurvatureBundle};
pub use metric::Metric;
pub use predicates::{
    codazzi_defect, cyclic_parallel_defect, killing_defect, ricci_recurrence_defect, semi_pseudo_defect,
    vector_field_character, VectorCharacter,
};
pub use tensor::{eval2, eval_covariant, index_tuples, OneForm, Slot, Tensor, VectorField};

use crate::symexpr::ExprError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("asymmetric input: {0}")]
    Asymmetric(String),
    #[error("metric is not invertible: {0}")]
    Singular(String),
    #[error("needs dimension at least {need}, chart has {got}")]
    Dimension { need: usize, got: usize },
    #[error("degenerate plane: g(X,X)g(Y,Y) - g(X,Y)^2 vanishes")]
    DegeneratePlane,
    #[error("vector field is zero")]
    ZeroField,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
