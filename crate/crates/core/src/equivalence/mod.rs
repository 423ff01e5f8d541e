//! The equivalence algebra of the class, its finite group, projections,
//! the principal algebra and preliminary classification.

mod classify;
mod flow;
mod member;

use thiserror::Error;

use crate::expr::{parse, ExprError};
use crate::jet::JetError;
use crate::lie::field::{VectorField, FIBER_START};
use crate::lie::{AlgebraBasis, LieError};

pub use classify::{
    classify, classify_element, invariance_residuals, lift, principal_algebra, Classification,
    PrincipalAlgebra,
};
pub use flow::{
    exponentiate, group_slice, verify_class_preservation, FiniteTransformation, FLOW_ORDER,
};
pub use member::{class_form_in, ClassMember, MemberError, ELEMENT_NAMES};

#[derive(Debug, Error)]
pub enum EquivError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("classification unsupported: {0}")]
    ClassificationUnsupported(String),
    #[error("degenerate class: gamma is forced to vanish")]
    Degenerate,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Member(#[from] MemberError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, EquivError>;

fn field(terms: &[(&str, &str)]) -> VectorField {
    VectorField::parse_terms(terms).expect("static field")
}

/// `Y1 .. Y10`.
pub fn equivalence_fields() -> Vec<VectorField> {
    vec![
        field(&[("t", "1")]),
        field(&[("x", "1")]),
        field(&[("u", "1")]),
        field(&[
            ("t", "t"),
            ("f", "-f"),
            ("g", "-g"),
            ("alpha", "-alpha"),
            ("beta", "-beta"),
            ("gamma", "-gamma"),
            ("phi", "-phi"),
        ]),
        field(&[
            ("x", "x"),
            ("f", "f"),
            ("alpha", "2*alpha"),
            ("beta", "3*beta"),
            ("gamma", "4*gamma"),
            ("phi", "2*phi"),
        ]),
        field(&[("u", "u"), ("f", "f"), ("g", "g"), ("phi", "phi")]),
        field(&[("x", "t"), ("f", "u")]),
        field(&[("alpha", "1"), ("phi", "-u")]),
        field(&[("f", "1")]),
        field(&[("phi", "1")]),
    ]
}

pub fn equivalence_basis() -> AlgebraBasis {
    let labels = (1..=10).map(|i| format!("Y{i}")).collect();
    AlgebraBasis::new(labels, equivalence_fields()).expect("equivalence algebra is closed")
}

/// Restriction to the `(t, x, u)` components.
pub fn project_xu(v: &VectorField) -> VectorField {
    v.restrict(|i| i < FIBER_START)
}

/// Restriction to the `(u, f, …, phi)` components.
pub fn project_upsi(v: &VectorField) -> VectorField {
    v.restrict(|i| i >= 2)
}

/// `Z1 .. Z8`: the nonzero projections of `Y3 .. Y10`.
pub fn projected_basis() -> AlgebraBasis {
    let fields: Vec<VectorField> = equivalence_fields()
        .iter()
        .skip(2)
        .map(project_upsi)
        .collect();
    let labels = (1..=8).map(|i| format!("Z{i}")).collect();
    AlgebraBasis::new(labels, fields).expect("projected algebra is closed")
}

/// Parses a combination of basis labels, e.g. `Y3 + Y4`.
pub fn parse_element(basis: &AlgebraBasis, text: &str) -> Result<VectorField> {
    let c = basis.parse_combination(text)?;
    Ok(basis.combine(&c))
}

/// Parses a field written component-wise, e.g. `t: t, u: 1`.
pub fn parse_field(text: &str) -> Result<VectorField> {
    let mut v = VectorField::zero();
    for part in text.split(',') {
        let (name, value) = part
            .split_once(':')
            .ok_or_else(|| EquivError::Unsupported(format!("expected name: value in {part:?}")))?;
        let name = name.trim();
        if crate::lie::field::coordinate_index(name).is_none() {
            return Err(EquivError::Unsupported(format!(
                "unknown coordinate {name}"
            )));
        }
        v.set(name, &v.component(name).clone() + &parse(value.trim())?);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_elements_as_printed() {
        let b = equivalence_basis();
        assert_eq!(b.field(6).to_string(), "t*D_x + u*D_f");
        assert_eq!(b.field(7).to_string(), "D_alpha - u*D_phi");
        assert_eq!(b.len(), 10);
    }

    #[test]
    fn projections() {
        let b = equivalence_basis();
        let y = b.field(2) + b.field(3);
        assert_eq!(
            project_upsi(&y).to_string(),
            "D_u - f*D_f - g*D_g - alpha*D_alpha - beta*D_beta - gamma*D_gamma - phi*D_phi"
        );
        assert_eq!(project_xu(b.field(0)), VectorField::partial("t"));
        assert!(project_upsi(b.field(1)).is_zero());
    }

    #[test]
    fn field_text() {
        let v = parse_field("t: t, u: 1").unwrap();
        assert_eq!(v.to_string(), "t*D_t + D_u");
    }
}
