//! Differentiation, substitution and linear solving.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::atom::{Atom, FuncApp};
use super::poly::{Monomial, Poly};
use super::symbol::Symbol;
use super::{Expr, ExprError, Result, Q};

impl Expr {
    /// Partial derivative with respect to an atom (a symbol or jet coordinate).
    pub fn diff(&self, v: &Atom) -> Expr {
        let mut cache = HashMap::new();
        let dn = diff_poly(self.num_poly(), v, &mut cache);
        if self.is_polynomial() {
            let c = self.den_poly().as_constant().expect("constant denominator");
            return &dn / &Expr::from_q(c);
        }
        let dd = diff_poly(self.den_poly(), v, &mut cache);
        if dd.is_zero() {
            return &dn / &self.denom();
        }
        let den = self.denom();
        (&(&dn * &den) - &(&self.numer() * &dd)) / (&den * &den)
    }

    pub fn diff_sym(&self, name: &str) -> Expr {
        self.diff(&Atom::sym(name))
    }

    /// Simultaneous substitution followed by normalization.
    pub fn substitute(&self, b: &Binding) -> Expr {
        if b.is_empty() {
            return self.clone();
        }
        let mut s = Substituter {
            binding: b,
            atoms: HashMap::new(),
        };
        let num = s.poly(self.num_poly());
        if self.is_polynomial() {
            let c = self.den_poly().as_constant().expect("constant denominator");
            return &num / &Expr::from_q(c);
        }
        let den = s.poly(self.den_poly());
        num / den
    }

    /// Shorthand for substituting a single atom.
    pub fn subs(&self, a: &Atom, value: &Expr) -> Expr {
        let mut b = Binding::new();
        b.insert(a.clone(), value.clone());
        self.substitute(&b)
    }

    pub fn subs_sym(&self, name: &str, value: &Expr) -> Expr {
        self.subs(&Atom::sym(name), value)
    }

    /// Solves `self = 0` for `s`, which must occur affinely.
    pub fn solve_for(&self, s: &Atom) -> Result<Expr> {
        let label = || Expr::atom(s.clone()).to_string();
        let coef = self.diff(s);
        if !coef.diff(s).is_zero() {
            return Err(ExprError::NotAffine(label()));
        }
        if coef.is_zero() {
            return Err(ExprError::ZeroCoefficient(label()));
        }
        let rest = self.subs(s, &Expr::zero());
        if rest.contains(s) || coef.contains(s) {
            return Err(ExprError::NotAffine(label()));
        }
        (-&rest).try_div(&coef)
    }

    /// Splits the numerator by powers of `vars`; the denominator must be
    /// free of them. Keys are exponent vectors in the order of `vars`.
    pub fn coefficients(&self, vars: &[Atom]) -> Result<BTreeMap<Vec<u32>, Expr>> {
        for v in vars {
            if self.den_poly().contains_atom(v) {
                return Err(ExprError::NotPolynomial(Expr::atom(v.clone()).to_string()));
            }
        }
        let mut parts: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.num_poly().terms {
            let key: Vec<u32> = vars.iter().map(|v| m.power_of(v)).collect();
            let rest = Monomial {
                factors: m
                    .factors
                    .iter()
                    .filter(|(a, _)| !vars.contains(a))
                    .cloned()
                    .collect(),
                exp: m.exp.clone(),
            };
            if rest
                .factors
                .iter()
                .any(|(a, _)| vars.iter().any(|v| a.contains(v)))
                || rest
                    .exp
                    .as_ref()
                    .is_some_and(|e| vars.iter().any(|v| e.contains(v)))
            {
                return Err(ExprError::NotPolynomial(
                    vars.iter()
                        .map(|v| Expr::atom(v.clone()).to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                ));
            }
            parts.entry(key).or_default().add_term(rest, c.clone());
        }
        let den = self.denom();
        Ok(parts
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| (k, &Expr::from_poly(p) / &den))
            .collect())
    }

    /// Coefficient of `v^k` in the numerator, divided by the denominator.
    pub fn coeff(&self, v: &Atom, k: u32) -> Result<Expr> {
        Ok(self
            .coefficients(std::slice::from_ref(v))?
            .remove(&vec![k])
            .unwrap_or_else(Expr::zero))
    }

    /// Highest power of `v` in the numerator.
    pub fn degree_in(&self, v: &Atom) -> u32 {
        self.num_poly()
            .terms
            .keys()
            .map(|m| m.power_of(v))
            .max()
            .unwrap_or(0)
    }

    /// Splits off all exponential factors: returns `(exp-free part, exp arg)`
    /// when every numerator term shares the same exponential factor.
    pub fn split_exp(&self) -> Option<(Expr, Expr)> {
        let mut args = self.num_poly().terms.keys().map(|m| m.exp.clone());
        let first = args.next()??;
        if args.any(|a| a.as_ref() != Some(&first)) {
            return None;
        }
        let unit = Monomial::exp(-&first);
        let rest = Expr::from_poly(self.num_poly().mul_monomial(&unit)) / self.denom();
        Some((rest, first))
    }
}

fn diff_poly(p: &Poly, v: &Atom, cache: &mut HashMap<Atom, Expr>) -> Expr {
    let mut acc = Poly::zero();
    let mut extra = Expr::zero();
    for (m, c) in &p.terms {
        for (i, (a, k)) in m.factors.iter().enumerate() {
            let da = atom_derivative(a, v, cache);
            if da.is_zero() {
                continue;
            }
            let mut rest = m.clone();
            if *k == 1 {
                rest.factors.remove(i);
            } else {
                rest.factors[i].1 = k - 1;
            }
            let coef = c * Q::from_integer((*k).into());
            if da.is_polynomial() && da.den_poly().as_constant().is_some_and(|d| d.is_one()) {
                acc = acc.add(&da.num_poly().mul_monomial(&rest).scale(&coef));
            } else {
                extra = &extra + &(&Expr::from_poly(Poly::term(rest, coef)) * &da);
            }
        }
        if let Some(arg) = &m.exp {
            let darg = arg.diff(v);
            if !darg.is_zero() {
                extra = &extra + &(&Expr::from_poly(Poly::term(m.clone(), c.clone())) * &darg);
            }
        }
    }
    &Expr::from_poly(acc.reduce_squares()) + &extra
}

fn atom_derivative(a: &Atom, v: &Atom, cache: &mut HashMap<Atom, Expr>) -> Expr {
    if a == v {
        return Expr::one();
    }
    if a.argument().is_none() {
        return Expr::zero();
    }
    if let Some(d) = cache.get(a) {
        return d.clone();
    }
    let d = match a {
        Atom::Func(f) => {
            let darg = f.arg.diff(v);
            if darg.is_zero() {
                Expr::zero()
            } else {
                &Expr::func(f.name.name(), f.order + 1, f.arg.clone()) * &darg
            }
        }
        Atom::Log(x) => {
            let dx = x.diff(v);
            if dx.is_zero() {
                Expr::zero()
            } else {
                &dx / x
            }
        }
        Atom::Sqrt(x) => {
            let dx = x.diff(v);
            if dx.is_zero() {
                Expr::zero()
            } else {
                &dx / &(&Expr::int(2) * &Expr::atom(a.clone()))
            }
        }
        Atom::Atan(x) => {
            let dx = x.diff(v);
            if dx.is_zero() {
                Expr::zero()
            } else {
                &dx / &(&Expr::one() + &(x * x))
            }
        }
        Atom::Deriv(_) | Atom::Sym(_) => Expr::zero(),
    };
    cache.insert(a.clone(), d.clone());
    d
}

/// Substitution targets. Atom keys replace jet coordinates and symbols;
/// function keys replace every application `F^{(k)}(arg)` of an opaque
/// function by the `k`-th `u`-derivative of the bound expression, evaluated
/// at the (substituted) argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding {
    atoms: BTreeMap<Atom, Expr>,
    funcs: BTreeMap<Symbol, Expr>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn insert(&mut self, a: Atom, value: Expr) -> &mut Self {
        self.atoms.insert(a, value);
        self
    }

    pub fn with(mut self, a: Atom, value: Expr) -> Self {
        self.atoms.insert(a, value);
        self
    }

    pub fn with_sym(self, name: &str, value: Expr) -> Self {
        self.with(Atom::sym(name), value)
    }

    /// Binds an opaque function symbol to an expression in `u`.
    pub fn insert_func(&mut self, name: &str, value_in_u: Expr) -> &mut Self {
        self.funcs.insert(Symbol::new(name), value_in_u);
        self
    }

    pub fn with_func(mut self, name: &str, value_in_u: Expr) -> Self {
        self.insert_func(name, value_in_u);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.funcs.is_empty()
    }

    pub fn get(&self, a: &Atom) -> Option<&Expr> {
        self.atoms.get(a)
    }

    pub fn keys(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.keys()
    }

    /// True when no key of `self` occurs among the keys of `other`.
    pub fn is_disjoint(&self, other: &Binding) -> bool {
        self.atoms.keys().all(|k| !other.atoms.contains_key(k))
            && self.funcs.keys().all(|k| !other.funcs.contains_key(k))
    }
}

struct Substituter<'a> {
    binding: &'a Binding,
    atoms: HashMap<Atom, Expr>,
}

impl Substituter<'_> {
    fn poly(&mut self, p: &Poly) -> Expr {
        let mut acc = Expr::zero();
        for (m, c) in &p.terms {
            let mut term = Expr::from_q(c.clone());
            for (a, k) in &m.factors {
                let v = self.atom(a);
                term = &term * &v.pow_i(*k as i64).expect("nonnegative power");
            }
            if let Some(arg) = &m.exp {
                let e = self.expr(arg).exp();
                term = &term * &e;
            }
            acc = &acc + &term;
        }
        acc
    }

    fn expr(&mut self, e: &Expr) -> Expr {
        let num = self.poly(e.num_poly());
        if e.is_polynomial() {
            let c = e.den_poly().as_constant().expect("constant denominator");
            return &num / &Expr::from_q(c);
        }
        let den = self.poly(e.den_poly());
        num / den
    }

    fn atom(&mut self, a: &Atom) -> Expr {
        if let Some(v) = self.atoms.get(a) {
            return v.clone();
        }
        let v = match self.binding.atoms.get(a) {
            Some(v) => v.clone(),
            None => self.rebuild(a),
        };
        self.atoms.insert(a.clone(), v.clone());
        v
    }

    fn rebuild(&mut self, a: &Atom) -> Expr {
        match a {
            Atom::Deriv(_) | Atom::Sym(_) => Expr::atom(a.clone()),
            Atom::Func(FuncApp { name, order, arg }) => {
                let arg2 = self.expr(arg);
                match self.binding.funcs.get(name) {
                    Some(value) => {
                        let u = Atom::sym("u");
                        let mut d = value.clone();
                        for _ in 0..*order {
                            d = d.diff(&u);
                        }
                        d.subs(&u, &arg2)
                    }
                    None => Expr::func(name.name(), *order, arg2),
                }
            }
            Atom::Log(x) => {
                let x2 = self.expr(x);
                x2.log().unwrap_or_else(|_| Expr::atom(Atom::Log(x2)))
            }
            Atom::Sqrt(x) => {
                let x2 = self.expr(x);
                x2.sqrt().unwrap_or_else(|_| Expr::atom(Atom::Sqrt(x2)))
            }
            Atom::Atan(x) => self.expr(x).atan(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let u = Atom::sym("u");
        assert_eq!(p("u^2").diff(&u), p("2*u"));
        assert_eq!(p("phi(u)").diff(&u), p("phi_u"));
        assert_eq!(p("c1*exp(-u)").diff(&u), p("-c1*exp(-u)"));
        assert!(p("t").diff(&u).is_zero());
        assert_eq!(p("log(t)").diff_sym("t"), p("1/t"));
        assert_eq!(p("sqrt(w)").diff_sym("w"), p("sqrt(w)/(2*w)"));
        assert_eq!(p("arctan(2*h)").diff_sym("h"), p("2/(1 + 4*h^2)"));
    }

    #[test]
    fn substitution_examples() {
        let b = Binding::new()
            .with(Atom::jet(1, 0), p("1/t"))
            .with(Atom::jet(0, 1), p("h'"));
        assert_eq!(p("u_t + u_x").substitute(&b), p("1/t + h'"));
        let f = Binding::new().with_func("f", p("u^2/2 + c1"));
        assert_eq!(p("f_u").substitute(&f), p("u"));
        assert_eq!(p("f_u(x*h)").substitute(&f), p("x*h"));
        let e = p("u + exp(u)");
        assert_eq!(e.substitute(&Binding::new()), e);
    }

    #[test]
    fn substitution_is_simultaneous() {
        let b = Binding::new().with_sym("x", p("t")).with_sym("t", p("x"));
        assert_eq!(p("x - 2*t").substitute(&b), p("t - 2*x"));
    }

    #[test]
    fn solve_examples() {
        let ut = Atom::jet(1, 0);
        assert_eq!(
            p("u*u_t + c3*u_xx - c2*u").solve_for(&ut).unwrap(),
            p("c2 - c3*u_xx/u")
        );
        assert_eq!(p("u_t + x").solve_for(&ut).unwrap(), p("-x"));
        assert!(matches!(
            p("u_t^2").solve_for(&ut),
            Err(ExprError::NotAffine(_))
        ));
        assert!(matches!(
            p("x").solve_for(&ut),
            Err(ExprError::ZeroCoefficient(_))
        ));
    }
}
