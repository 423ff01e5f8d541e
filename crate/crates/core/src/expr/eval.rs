//! Floating-point evaluation, used by numerical cross-checks only.

use num_traits::ToPrimitive;

use super::atom::Atom;
use super::poly::Poly;
use super::{Expr, Q};

fn q64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Expr {
    /// Evaluates with leaf values supplied by `env`; `None` when a leaf is
    /// unbound.
    pub fn eval(&self, env: &dyn Fn(&Atom) -> Option<f64>) -> Option<f64> {
        let n = eval_poly(self.num_poly(), env)?;
        let d = eval_poly(self.den_poly(), env)?;
        Some(n / d)
    }

    /// Evaluates with plain symbols bound by name.
    pub fn eval_at(&self, values: &[(&str, f64)]) -> Option<f64> {
        self.eval(&|a| match a {
            Atom::Sym(s) => values.iter().find(|(n, _)| *n == s.name()).map(|(_, v)| *v),
            _ => None,
        })
    }
}

fn eval_poly(p: &Poly, env: &dyn Fn(&Atom) -> Option<f64>) -> Option<f64> {
    let mut acc = 0.0;
    for (m, c) in &p.terms {
        let mut t = q64(c);
        for (a, k) in &m.factors {
            t *= eval_atom(a, env)?.powi(*k as i32);
        }
        if let Some(e) = &m.exp {
            t *= e.eval(env)?.exp();
        }
        acc += t;
    }
    Some(acc)
}

fn eval_atom(a: &Atom, env: &dyn Fn(&Atom) -> Option<f64>) -> Option<f64> {
    match a {
        Atom::Log(x) => Some(x.eval(env)?.ln()),
        Atom::Sqrt(x) => Some(x.eval(env)?.sqrt()),
        Atom::Atan(x) => Some(x.eval(env)?.atan()),
        _ => env(a),
    }
}
