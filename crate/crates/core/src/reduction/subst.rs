//! The order-lowering substitution `w(h) = (h')²` for autonomous ODEs.

use super::{ReducedODE, ReductionError, Result};
use crate::expr::{Atom, Binding, Expr};
use crate::jet::MAX_ORDER;

fn sigma() -> Expr {
    Expr::sym("sigma")
}

fn w_prime(k: u8) -> Expr {
    Expr::prime("w", k)
}

/// `d/dh` on expressions in `(h, w, w', …)`.
fn d_dh(e: &Expr) -> Expr {
    let mut acc = e.diff_sym("h");
    for k in 0..MAX_ORDER {
        let d = e.diff(&Atom::prime("w", k));
        if !d.is_zero() {
            acc = &acc + &(&d * &w_prime(k + 1));
        }
    }
    acc
}

/// Rewrites an autonomous ODE for `h(z)` as an ODE for `w(h) = (h')²`, with
/// `h' = sigma*sqrt(w)` and `sigma² = 1`.
pub fn substitute_w(r: &ReducedODE) -> Result<ReducedODE> {
    if !r.is_autonomous() {
        return Err(ReductionError::SubstitutionInvalid(format!(
            "{} depends explicitly on {}",
            r.lhs, r.var
        )));
    }
    let order = r.order();
    if order < 2 {
        return Err(ReductionError::SubstitutionInvalid(format!(
            "order {order} equation gains nothing from w = (h')^2"
        )));
    }
    let hp = &sigma() * &Expr::sym("w").sqrt()?;
    let mut b = Binding::new();
    let mut current = hp.clone();
    for k in 1..=order {
        b.insert(Atom::prime("h", k), current.clone());
        current = &hp * &d_dh(&current);
    }
    let substituted = r.lhs.substitute(&b);
    let (k, mut lhs) = substituted.numer().primitive();
    if k < crate::expr::Q::from_integer(0.into()) {
        lhs = -&lhs;
    }
    let multiplier = substituted.try_div(&lhs)?;
    Ok(ReducedODE {
        lhs,
        multiplier,
        dep: "w".into(),
        var: "h".into(),
        source: None,
        ansatz: None,
    })
}

/// Undoes `w = (h')²` on an ODE for `w(h)`: the result is an expression in
/// `h, h', …` (with `sqrt(w) = sigma*h'`).
pub fn back_substitute_w(lhs: &Expr) -> Result<Expr> {
    let h1 = Expr::prime("h", 1);
    let mut b = Binding::new();
    b.insert(Atom::Sqrt(Expr::sym("w")), &sigma() * &h1);
    b.insert(Atom::sym("w"), &h1 * &h1);
    // d/dh = (1/h') d/dz along the solution
    let mut current = &h1 * &h1;
    for k in 1..MAX_ORDER {
        current = d_dz(&current).try_div(&h1)?;
        b.insert(Atom::prime("w", k), current.clone());
    }
    Ok(lhs.substitute(&b))
}

/// `d/dz` on expressions in `h, h', …`.
fn d_dz(e: &Expr) -> Expr {
    let mut acc = Expr::zero();
    for k in 0..MAX_ORDER {
        let d = e.diff(&Atom::prime("h", k));
        if !d.is_zero() {
            acc = &acc + &(&d * &Expr::prime("h", k + 1));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn second_order_terms() {
        let r = ReducedODE::new(p("h'' + h'^2 - h"));
        let w = substitute_w(&r).unwrap();
        assert_eq!(w.lhs, p("w' + 2*w - 2*h"));
        let back = back_substitute_w(&w.lhs).unwrap();
        assert_eq!(back.try_div(&r.lhs).unwrap(), p("2"));
    }

    #[test]
    fn explicit_z_is_rejected() {
        let r = ReducedODE::new(p("z^2*h' - c2*z^2 + h*z - 1"));
        assert!(matches!(
            substitute_w(&r),
            Err(ReductionError::SubstitutionInvalid(_))
        ));
    }
}
