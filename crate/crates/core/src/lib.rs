//! Exact symbolic Lie-symmetry toolkit for the generalized
//! Kuramoto-Sivashinsky class
//!
//! ```text
//! u_t + (f(u))_x + α u_xx + (φ(u))_xx + β u_xxx + γ u_xxxx = g(u),   γ ≠ 0
//! ```
//!
//! [`expr`] holds canonical rational expressions with exact coefficients,
//! [`jet`] the total derivatives and prolongations, and [`lie`] the algebra
//! structure, adjoint action and optimal-system normalization.
//! [`equivalence`] covers the equivalence group and the classification of
//! elements. [`reduction`] performs similarity reductions, closed-form
//! solutions and the numeric cross-checks. [`suites`] runs the verification
//! suites behind the `lie-reduce` binary.
//!
//! The `examples/` directory shows each capability end to end.

pub mod checks;
pub mod equivalence;
pub mod expr;
pub mod fixtures;
pub mod jet;
pub mod lie;
pub mod reduction;
pub mod report;
pub mod suites;
