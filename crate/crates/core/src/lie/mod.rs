//! Vector fields, finite-dimensional Lie algebras and the adjoint action.

pub mod adjoint;
pub mod algebra;
pub mod field;
pub mod linalg;
pub mod optimal;

use thiserror::Error;

use crate::expr::ExprError;

pub use adjoint::{ad_matrix, adjoint, adjoint_table, AdMatrix, AdjointResult, Closure};
pub use algebra::{AlgebraBasis, CommutatorTable};
pub use field::VectorField;
pub use optimal::{normalize_element, Normalized};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("basis not closed: [{left}, {right}] is outside the span")]
    NotClosed { left: String, right: String },
    #[error("field is not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("basis fields are linearly dependent")]
    Dependent,
    #[error("non-rational coefficients in {0}")]
    NonRational(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
