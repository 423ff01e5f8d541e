//! Residuals of closed-form solutions.

use super::{ClosedFormSolution, ReducedODE, ReductionError, Result};
use crate::expr::{Atom, Binding, Expr};
use crate::jet::{jet_of, EquationInstance, MAX_ORDER};

/// Residual of a solution in its ODE; zero when the solution is exact.
pub fn verify_ode(sol: &ClosedFormSolution, r: &ReducedODE) -> Result<Expr> {
    let var = r.var.as_str();
    if let Some(h) = &sol.explicit {
        let mut b = Binding::new();
        let mut d = h.clone();
        for k in 0..=r.order() {
            b.insert(Atom::prime(&r.dep, k), d.clone());
            d = d.diff_sym(var);
        }
        return Ok(r.lhs.substitute(&b));
    }
    let rel = sol
        .implicit
        .as_ref()
        .ok_or_else(|| ReductionError::Unsupported("empty solution".into()))?;
    if r.order() != 1 {
        return Err(ReductionError::Unsupported(
            "implicit relations are verified on first-order equations only".into(),
        ));
    }
    // implicit differentiation: h' = -R_z / R_h
    let hp = (-&rel.diff_sym(var)).try_div(&rel.diff_sym(&r.dep))?;
    Ok(r.lhs.subs(&Atom::prime(&r.dep, 1), &hp))
}

/// Residual of an explicit `u(t, x)` in a class member.
pub fn verify_pde(sol: &ClosedFormSolution, eq: &EquationInstance) -> Result<Expr> {
    let u = sol
        .explicit
        .as_ref()
        .ok_or_else(|| ReductionError::Unsupported("implicit PDE solution".into()))?;
    let mut b = Binding::new();
    for i in 0..=MAX_ORDER {
        let needed: Vec<u8> = (0..=MAX_ORDER - i)
            .filter(|&j| eq.lhs.contains(&jet_of("u", i, j)))
            .collect();
        let Some(&last) = needed.last() else { continue };
        let mut d = u.clone();
        for _ in 0..i {
            d = d.diff_sym("t");
        }
        for j in 0..=last {
            if needed.contains(&j) {
                b.insert(jet_of("u", i, j), d.clone());
            }
            d = d.diff_sym("x");
        }
    }
    Ok(eq.lhs.substitute(&b))
}
