//! Invariant-solution ansätze for the supported generator patterns.

use super::{ReductionError, Result};
use crate::expr::{Atom, Expr};
use crate::lie::VectorField;

/// `z = z(t, x)` and `u = U(t, x, h(z))`, with `h` written as the symbol `h`.
#[derive(Clone, Debug)]
pub struct ReductionAnsatz {
    pub z: Expr,
    pub shape: Expr,
    pub generator: VectorField,
    pub pattern: &'static str,
    pub domain: &'static str,
}

fn p(s: &str) -> Expr {
    crate::expr::parse(s).expect("static expression")
}

/// `v = k * w` for a nonzero constant `k`.
fn proportional(v: &VectorField, w: &VectorField) -> bool {
    let Some(i) = (0..9).find(|&i| !w.coeff(i).is_zero()) else {
        return false;
    };
    let Ok(k) = v.coeff(i).try_div(w.coeff(i)) else {
        return false;
    };
    k.as_rational().is_some() && (v - &w.scale(&k)).is_zero()
}

pub fn match_ansatz(x3: &VectorField) -> Result<ReductionAnsatz> {
    let none = || ReductionError::NoAnsatz(x3.to_string());
    if (3..9).any(|i| !x3.coeff(i).is_zero()) || x3.is_zero() {
        return Err(none());
    }
    let library: [(&str, &str, &str, &str, &str, &'static str); 4] = [
        ("t", "1", "x", "log(t) + h", "t*D_t + D_u", "t > 0"),
        ("t", "u", "x", "t*h", "t*D_t + u*D_u", "t > 0"),
        ("x", "u", "t", "x*h", "x*D_x + u*D_u", "all (t, x)"),
        ("x-by-t", "1", "t", "x/t + h", "t*D_x + D_u", "t > 0"),
    ];
    let fields = [
        VectorField::parse_terms(&[("t", "t"), ("u", "1")]),
        VectorField::parse_terms(&[("t", "t"), ("u", "u")]),
        VectorField::parse_terms(&[("x", "x"), ("u", "u")]),
        VectorField::parse_terms(&[("x", "t"), ("u", "1")]),
    ];
    for ((_, _, z, shape, pattern, domain), field) in library.iter().zip(fields) {
        let field = field.expect("static field");
        if proportional(x3, &field) {
            return Ok(ReductionAnsatz {
                z: p(z),
                shape: p(shape),
                generator: x3.clone(),
                pattern,
                domain,
            });
        }
    }
    // traveling waves a D_t + b D_x with constant a, b
    let a = x3.component("t");
    let b = x3.component("x");
    let constant = |e: &Expr| e.as_rational().is_some();
    if x3.component("u").is_zero() && constant(a) && constant(b) {
        let z = if a.is_zero() {
            Expr::sym("t")
        } else {
            &Expr::sym("x") - &(&(b / a) * &Expr::sym("t"))
        };
        return Ok(ReductionAnsatz {
            z,
            shape: Expr::sym("h"),
            generator: x3.clone(),
            pattern: "a*D_t + b*D_x",
            domain: "all (t, x)",
        });
    }
    Err(none())
}

impl ReductionAnsatz {
    /// Total derivative of an expression in `(t, x, h, h', …)` along `t` or
    /// `x`, with `h = h(z)`.
    pub fn derivative(&self, e: &Expr, var: &str) -> Expr {
        let zv = self.z.diff_sym(var);
        let mut acc = e.diff_sym(var);
        if zv.is_zero() {
            return acc;
        }
        for k in 0..crate::jet::MAX_ORDER {
            let a = Atom::prime("h", k);
            let d = e.diff(&a);
            if !d.is_zero() {
                acc = &acc + &(&(&d * &Expr::atom(Atom::prime("h", k + 1))) * &zv);
            }
        }
        acc
    }

    /// Residuals `X(z)` and `X(u - U)` restricted to `u = U`.
    pub fn invariance(&self) -> (Expr, Expr) {
        let g = &self.generator;
        let xz = &(g.component("t") * &self.z.diff_sym("t"))
            + &(g.component("x") * &self.z.diff_sym("x"));
        let du = &(&(g.component("t") * &self.derivative(&self.shape, "t"))
            + &(g.component("x") * &self.derivative(&self.shape, "x")))
            - g.component("u");
        (xz, (-du).subs_sym("u", &self.shape))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_patterns() {
        let v = VectorField::parse_terms(&[("t", "t"), ("u", "1")]).unwrap();
        let a = match_ansatz(&v).unwrap();
        assert_eq!(a.z, p("x"));
        assert_eq!(a.shape, p("log(t) + h"));
        let v = VectorField::parse_terms(&[("x", "t"), ("u", "1")]).unwrap();
        let a = match_ansatz(&v).unwrap();
        assert_eq!((a.z.clone(), a.shape.clone()), (p("t"), p("x/t + h")));
        let (r1, r2) = a.invariance();
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn fiber_field_has_no_ansatz() {
        let v = VectorField::parse_terms(&[("f", "u")]).unwrap();
        assert!(matches!(match_ansatz(&v), Err(ReductionError::NoAnsatz(_))));
    }

    #[test]
    fn traveling_wave() {
        let v = VectorField::parse_terms(&[("t", "1"), ("x", "2")]).unwrap();
        let a = match_ansatz(&v).unwrap();
        assert_eq!(a.z, p("x - 2*t"));
        let (r1, r2) = a.invariance();
        assert!(r1.is_zero() && r2.is_zero());
    }
}
