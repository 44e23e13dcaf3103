//! Comprehensive quasi-Einstein structures.
//!
//! A structure decomposes a Ricci tensor as
//! `S = a g + Σ b_ij ω^i ⊗ ω^j + c₁ d₁ + c₂ d₂` over four generator 1-forms
//! and two symmetric tensors. This module verifies such decompositions,
//! classifies them into the named quasi-Einstein families, fits the scalars
//! for given forms, and builds the matching quasi-constant curvature ansatz.

mod classify;
mod existence;
mod fit;
mod identities;
mod qcc;
mod structure;

pub use classify::{classify, classify_verified, ClassLabel};
pub use existence::{existence_hypothesis_residual, synthesize_generators, ExistenceResidual, Generators};
pub use fit::{fit_decomposition, structure_unknowns, FitMode, FitResult, FIT_SAMPLE_POINTS, FIT_UNKNOWNS};
pub use identities::{
    generator_ricci_values, length_identity, length_identity_for, orthonormal_frame, trace_identity,
    trace_identity_for, DirectionalIdentity, Frame, GeneratorRicci, LengthIdentity, TraceIdentity,
};
pub use qcc::{
    build_qcc_curvature, qcc_blocks, qcc_contract, sectional_direct, sectional_from_structure, QccCoefficients,
    QccContraction, SectionalForms,
};
pub use structure::{
    decomposition_residual, decomposition_residual_for, verify_structure_constraints, verify_structure_for,
    CoQEStructure, ConstraintCheck, StructureReport, Verdict,
};

use crate::geometry::GeometryError;
use crate::symexpr::ExprError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoqeError {
    #[error("Ricci tensor is zero; definition requires non-zero")]
    RicciZero,
    #[error("needs dimension at least {need}, chart has {got}")]
    Dimension { need: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("asymmetric input: {0}")]
    Asymmetric(String),
    #[error("associated 1-form ω^{0} is zero")]
    ZeroForm(usize),
    #[error("vector field is zero")]
    ZeroField,
    #[error("structure does not reproduce the Ricci tensor ({0} nonzero residual components)")]
    Unverified(usize),
    #[error("sectional closed forms need c1 = c2 = 0")]
    NonzeroC,
    #[error("no exact fit; least-squares residual norm {residual_norm:.3e} at the sample point")]
    NoExactFit { residual_norm: f64 },
    #[error("cannot build an orthonormal frame at the sample point")]
    DegenerateFrame,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
