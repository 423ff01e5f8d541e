//! Substitution of an invariant ansatz into a class member.

use std::collections::BTreeSet;

use super::{ReducedODE, ReductionAnsatz, ReductionError, Result};
use crate::expr::{Atom, Binding, Deriv, DerivIndex, Expr};
use crate::jet::EquationInstance;

/// `u`-jet multi-indices `(a, b)` occurring in `e`.
fn u_jets(e: &Expr) -> BTreeSet<(u8, u8)> {
    e.atoms_deep()
        .iter()
        .filter_map(|a| match a {
            Atom::Sym(s) if s.name() == "u" => Some((0, 0)),
            Atom::Deriv(Deriv {
                dep,
                index: DerivIndex::Partial { t, x },
            }) if dep.name() == "u" => Some((*t, *x)),
            _ => None,
        })
        .collect()
}

/// Replaces `u` and its jets by the ansatz and its total derivatives.
pub(crate) fn substitute_ansatz(lhs: &Expr, a: &ReductionAnsatz) -> Expr {
    let mut b = Binding::new();
    for (i, j) in u_jets(lhs) {
        let mut v = a.shape.clone();
        for _ in 0..i {
            v = a.derivative(&v, "t");
        }
        for _ in 0..j {
            v = a.derivative(&v, "x");
        }
        b.insert(crate::jet::jet_of("u", i, j), v);
    }
    lhs.substitute(&b)
}

/// Rewrites an expression in `(t, x)` in terms of `z` and the remaining
/// coordinate; returns the rewritten expression and that coordinate's name.
fn to_similarity_variables(e: &Expr, z: &Expr) -> Result<(Expr, &'static str)> {
    let zt = z.diff_sym("t");
    let zx = z.diff_sym("x");
    let zs = Expr::sym("z");
    if zx.is_zero() && zt.is_one() && z == &Expr::sym("t") {
        return Ok((e.subs_sym("t", &zs), "x"));
    }
    if zx.is_one() && zt.as_rational().is_some() {
        // z = x - c t  =>  x = z + c t
        let x = &zs - &(&zt * &Expr::sym("t"));
        return Ok((e.subs_sym("x", &x), "t"));
    }
    Err(ReductionError::Failure(format!(
        "unsupported similarity variable {z}"
    )))
}

/// Reduces `eq` under the ansatz to an ODE for `h(z)`.
pub fn reduce(eq: &EquationInstance, a: &ReductionAnsatz) -> Result<ReducedODE> {
    let (inv_z, inv_u) = a.invariance();
    if !inv_z.is_zero() || !inv_u.is_zero() {
        return Err(ReductionError::Failure(format!(
            "ansatz {} is not invariant under {}",
            a.shape, a.generator
        )));
    }
    let substituted = substitute_ansatz(&eq.lhs, a);
    let (s, other) = to_similarity_variables(&substituted, &a.z)?;
    if s.is_zero() {
        return Err(ReductionError::Failure(
            "equation vanishes identically on the ansatz".into(),
        ));
    }
    let top = (0..=crate::jet::MAX_ORDER)
        .rev()
        .map(|k| Atom::prime("h", k))
        .find(|atom| s.contains(atom))
        .ok_or_else(|| ReductionError::Failure(format!("{s} does not involve h")))?;
    let degree = s.degree_in(&top);
    let lead = s.coeff(&top, degree)?;
    if lead.is_zero() {
        return Err(ReductionError::Failure(format!(
            "{s} is not polynomial in {top:?}"
        )));
    }
    let ratio = s.try_div(&lead)?;
    let (k, mut lhs) = ratio.numer().primitive();
    if k < crate::expr::Q::from_integer(0.into()) {
        lhs = -&lhs;
    }
    if lhs.contains_sym(other) || lhs.contains_sym("u") {
        return Err(ReductionError::Failure(format!(
            "reduced expression {lhs} still depends on {other}"
        )));
    }
    let multiplier = lead.try_div(&lhs.coeff(&top, degree)?)?;
    if !(&s - &(&multiplier * &lhs)).is_zero() {
        return Err(ReductionError::Failure("multiplier identity failed".into()));
    }
    Ok(ReducedODE {
        lhs,
        multiplier,
        dep: "h".into(),
        var: "z".into(),
        source: Some(eq.clone()),
        ansatz: Some(a.clone()),
    })
}

impl ReducedODE {
    /// `substitute(source.lhs, ansatz) - multiplier * lhs`, in `(z, other)`.
    pub fn identity_residual(&self) -> Result<Expr> {
        let (Some(eq), Some(a)) = (&self.source, &self.ansatz) else {
            return Err(ReductionError::Failure("ODE has no source equation".into()));
        };
        let (s, _) = to_similarity_variables(&substitute_ansatz(&eq.lhs, a), &a.z)?;
        Ok(&s - &(&self.multiplier * &self.lhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::ClassMember;
    use crate::expr::parse;
    use crate::lie::VectorField;
    use crate::reduction::match_ansatz;

    #[test]
    fn example_two_multiplier_is_t() {
        let m = ClassMember::parse(["c1", "c2", "c3/u", "c4/u", "c5/u", "c6"]).unwrap();
        let eq = EquationInstance::from_lhs(
            parse("u*u_t + c3*u_xx + c4*u_xxx + c5*u_xxxx - c2*u").unwrap(),
            &m,
        )
        .unwrap();
        let x3 = VectorField::parse_terms(&[("t", "t"), ("u", "u")]).unwrap();
        let ode = reduce(&eq, &match_ansatz(&x3).unwrap()).unwrap();
        assert_eq!(
            ode.lhs,
            parse("c5*h'''' + c4*h''' + c3*h'' + h^2 - c2*h").unwrap()
        );
        assert_eq!(ode.multiplier, parse("t").unwrap());
        assert!(ode.identity_residual().unwrap().is_zero());
    }

    #[test]
    fn wrong_ansatz_fails() {
        let m = ClassMember::parse(["c1", "c2", "c3/u", "c4/u", "c5/u", "c6"]).unwrap();
        let eq = EquationInstance::from_member(&m);
        let x3 = VectorField::parse_terms(&[("t", "t"), ("u", "1")]).unwrap();
        assert!(matches!(
            reduce(&eq, &match_ansatz(&x3).unwrap()),
            Err(ReductionError::Failure(_))
        ));
    }
}
