//! Similarity reduction to ODEs, the `w = (h')²` order reduction, closed-form
//! solutions and their symbolic and numerical verification.

pub mod ansatz;
pub mod numeric;
pub mod reduce;
pub mod solve;
pub mod subst;
pub mod verify;

use thiserror::Error;

use crate::expr::{Atom, Expr, ExprError};
use crate::jet::{EquationInstance, JetError};

pub use ansatz::{match_ansatz, ReductionAnsatz};
pub use numeric::{integrate_numeric, pde_residual_numeric, Grid, ResidualReport, Trajectory};
pub use reduce::reduce;
pub use solve::{solve_closed_form, undo_ansatz, ClosedFormSolution, SolutionKind, SolveOutcome};
pub use subst::{back_substitute_w, substitute_w};
pub use verify::{verify_ode, verify_pde};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("no ansatz for generator {0}")]
    NoAnsatz(String),
    #[error("reduction failure: {0}")]
    Failure(String),
    #[error("substitution invalid: {0}")]
    SubstitutionInvalid(String),
    #[error("integration aborted at z = {z}: {reason}")]
    IntegrationAbort { z: f64, reason: String },
    #[error("grid error: {0}")]
    Grid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, ReductionError>;

/// An ODE `lhs = 0` for `dep(var)`.
#[derive(Clone, Debug)]
pub struct ReducedODE {
    pub lhs: Expr,
    /// Factor divided out: `substituted source = multiplier * lhs`.
    pub multiplier: Expr,
    pub dep: String,
    pub var: String,
    pub source: Option<EquationInstance>,
    pub ansatz: Option<ReductionAnsatz>,
}

impl ReducedODE {
    /// A free-standing ODE for `h(z)`.
    pub fn new(lhs: Expr) -> Self {
        ReducedODE {
            lhs,
            multiplier: Expr::one(),
            dep: "h".into(),
            var: "z".into(),
            source: None,
            ansatz: None,
        }
    }

    /// Highest derivative order of the unknown present.
    pub fn order(&self) -> u8 {
        (1..=crate::jet::MAX_ORDER)
            .rev()
            .find(|&k| self.lhs.contains(&Atom::prime(&self.dep, k)))
            .unwrap_or(0)
    }

    pub fn is_autonomous(&self) -> bool {
        !self.lhs.contains_sym(&self.var)
    }
}
