//! Exact symbolic expressions.
//!
//! An [`Expr`] is stored in canonical form: a reduced quotient of two sparse
//! polynomials over [atoms](Atom) with rational coefficients. Atoms are jet
//! coordinates, named symbols, opaque function applications and the
//! elementary functions `log`, `sqrt`, `arctan`. Exponentials live inside
//! monomials so that `exp(a)*exp(b)` merges to `exp(a + b)`.
//!
//! Canonicalization rules applied on every construction:
//!
//! * `sqrt(B)^2 -> B` and `sigma^2 -> 1`;
//! * denominators are freed of `sqrt` atoms and `sigma` by conjugation;
//! * the leading denominator term carries no exponential factor;
//! * numerator and denominator are coprime (multivariate GCD);
//! * the denominator is integer-primitive with a positive leading coefficient.

mod atom;
mod calculus;
mod eval;
mod gcd;
mod node;
mod parse;
mod poly;
mod print;
mod symbol;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use atom::{Atom, Deriv, DerivIndex, FuncApp};
pub use calculus::Binding;
pub use node::Node;
pub use parse::{parse, parse_with};
pub use print::{latex_name, Format};
pub use symbol::{Symbol, SymbolKind, CLASS_FUNCTIONS};

pub(crate) use poly::{Monomial, Poly};

/// Exact rational coefficient.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unsupported form: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not affine in {0}")]
    NotAffine(String),
    #[error("coefficient of {0} is zero")]
    ZeroCoefficient(String),
    #[error("expression is not a polynomial in {0}")]
    NotPolynomial(String),
}

pub type Result<T> = std::result::Result<T, ExprError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Frac {
    num: Poly,
    den: Poly,
}

/// Immutable, canonically normalized expression.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expr(Arc<Frac>);

impl Expr {
    pub(crate) fn from_poly(num: Poly) -> Expr {
        Expr(Arc::new(Frac {
            num,
            den: Poly::one(),
        }))
    }

    /// Canonical quotient `num / den`.
    pub(crate) fn from_parts(num: Poly, den: Poly) -> Result<Expr> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(Expr::from_poly(num.scale(&c.recip())));
        }
        let (mut num, mut den) = rationalize(num, den)?;
        if let Some(c) = den.as_constant() {
            return Ok(Expr::from_poly(num.scale(&c.recip())));
        }

        let content = num.monomial_content();
        let shared = shared_content(&content, &den.monomial_content());
        if !shared.is_one() {
            num = num.div_monomial(&shared);
            den = den.div_monomial(&shared);
        }
        if num.len() > 1 && den.len() > 1 {
            if let Some((n, d)) = gcd::cancel(&num, &den) {
                num = n;
                den = d;
            }
        }
        if let Some(e) = den.leading().and_then(|(m, _)| m.exp.clone()) {
            let unit = Monomial::exp(-&e);
            num = num.mul_monomial(&unit);
            den = den.mul_monomial(&unit);
        }
        if let Some(c) = den.as_constant() {
            return Ok(Expr::from_poly(num.scale(&c.recip())));
        }
        let k = primitive_scale(&den);
        Ok(Expr(Arc::new(Frac {
            num: num.scale(&k),
            den: den.scale(&k),
        })))
    }

    pub fn zero() -> Expr {
        Expr::from_poly(Poly::zero())
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn int(n: i64) -> Expr {
        Expr::from_q(Q::from_integer(BigInt::from(n)))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::from_q(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_q(q: Q) -> Expr {
        Expr::from_poly(Poly::constant(q))
    }

    pub fn atom(a: Atom) -> Expr {
        Expr::from_poly(Poly::term(Monomial::atom(a, 1), Q::one()).reduce_squares())
    }

    /// Named symbol. The name is not validated; see [`parse`] for checked input.
    pub fn sym(name: &str) -> Expr {
        Expr::atom(Atom::sym(name))
    }

    /// Jet coordinate `u_{t^t x^x}`; `jet(0, 0)` is `u` itself.
    pub fn jet(t: u8, x: u8) -> Expr {
        Expr::atom(Atom::jet(t, x))
    }

    /// `k`-th derivative of a one-variable function such as `h(z)`.
    pub fn prime(dep: &str, k: u8) -> Expr {
        Expr::atom(Atom::prime(dep, k))
    }

    /// Opaque function `name` differentiated `order` times, applied to `arg`.
    pub fn func(name: &str, order: u8, arg: Expr) -> Expr {
        Expr::atom(Atom::Func(FuncApp {
            name: Symbol::new(name),
            order,
            arg,
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.0.den.as_constant().is_some() {
            self.0.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_i64())
    }

    pub(crate) fn num_poly(&self) -> &Poly {
        &self.0.num
    }

    pub(crate) fn den_poly(&self) -> &Poly {
        &self.0.den
    }

    pub fn numer(&self) -> Expr {
        Expr::from_poly(self.0.num.clone())
    }

    pub fn denom(&self) -> Expr {
        Expr::from_poly(self.0.den.clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.as_constant().is_some()
    }

    /// The single atom this expression consists of, if any.
    pub fn as_atom(&self) -> Option<&Atom> {
        if !self.is_polynomial() || self.0.num.len() != 1 {
            return None;
        }
        let (m, c) = self.0.num.leading()?;
        if !c.is_one() || m.exp.is_some() || m.factors.len() != 1 || m.factors[0].1 != 1 {
            return None;
        }
        Some(&m.factors[0].0)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.num.contains_atom(atom) || self.0.den.contains_atom(atom)
    }

    pub fn contains_sym(&self, name: &str) -> bool {
        self.contains(&Atom::sym(name))
    }

    /// GCD of the numerators of two expressions, integer-primitive with a
    /// positive leading coefficient.
    pub fn poly_gcd(&self, other: &Expr) -> Expr {
        Expr::from_poly(gcd::gcd_poly(&self.0.num, &other.0.num))
    }

    /// `(k, k*self)` where the numerator of `k*self` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Q, Expr) {
        use num_integer::Integer;
        let mut num_gcd = num_bigint::BigInt::zero();
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.0.num.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return (Q::one(), self.clone());
        }
        let mut k = Q::new(den_lcm, num_gcd);
        if self.leading_negative() {
            k = -k;
        }
        (k.clone(), self * &Expr::from_q(k))
    }

    /// Sign of the leading numerator term in canonical order.
    pub fn leading_negative(&self) -> bool {
        self.0.num.leading_sign_negative()
    }

    /// True when the numerator has more than one term.
    pub fn is_sum(&self) -> bool {
        self.0.num.len() > 1
    }

    /// Numerator terms, each divided by the denominator.
    pub fn terms(&self) -> Vec<Expr> {
        let den = self.denom();
        self.0
            .num
            .terms
            .iter()
            .map(|(m, c)| &Expr::from_poly(Poly::term(m.clone(), c.clone())) / &den)
            .collect()
    }

    /// True when no atom for which `pred` holds occurs anywhere inside.
    pub fn free_of(&self, pred: &dyn Fn(&Atom) -> bool) -> bool {
        self.atoms_deep().iter().all(|a| !pred(a))
    }

    /// Atoms of the outer polynomial layer (not descending into arguments).
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for p in [&self.0.num, &self.0.den] {
            for m in p.terms.keys() {
                for (a, _) in &m.factors {
                    out.insert(a.clone());
                }
            }
        }
        out
    }

    /// All atoms, including those nested in function and exponential arguments.
    pub fn atoms_deep(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for p in [&self.0.num, &self.0.den] {
            for m in p.terms.keys() {
                for (a, _) in &m.factors {
                    if out.insert(a.clone()) {
                        if let Some(arg) = a.argument() {
                            arg.collect_atoms(out);
                        }
                    }
                }
                if let Some(e) = &m.exp {
                    e.collect_atoms(out);
                }
            }
        }
    }

    /// Names of all plain symbols occurring anywhere.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.atoms_deep()
            .into_iter()
            .filter_map(|a| match a {
                Atom::Sym(s) => Some(s),
                Atom::Deriv(d) => Some(d.dep),
                _ => None,
            })
            .collect()
    }

    pub fn try_div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Expr::from_parts(self.0.num.mul(&other.0.den), self.0.den.mul(&other.0.num))
    }

    pub fn recip(&self) -> Result<Expr> {
        Expr::one().try_div(self)
    }

    pub fn pow_i(&self, n: i64) -> Result<Expr> {
        let k = u32::try_from(n.unsigned_abs())
            .map_err(|_| ExprError::Unsupported(format!("exponent {n}")))?;
        let p = Expr::from_parts(self.0.num.pow(k), self.0.den.pow(k))?;
        if n < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// Rational power. Integer and half-integer exponents are supported.
    pub fn pow_q(&self, q: &Q) -> Result<Expr> {
        if q.is_integer() {
            let n = q
                .to_integer()
                .to_i64()
                .ok_or_else(|| ExprError::Unsupported(format!("exponent {q}")))?;
            return self.pow_i(n);
        }
        if *q.denom() == BigInt::from(2) {
            let n = q
                .numer()
                .to_i64()
                .ok_or_else(|| ExprError::Unsupported(format!("exponent {q}")))?;
            return self.sqrt()?.pow_i(n);
        }
        Err(ExprError::Unsupported(format!("fractional power {q}")))
    }

    /// `exp(self)`. Integer multiples of logarithms are pulled out:
    /// `exp(2*log(t) + h) = t^2*exp(h)`.
    pub fn exp(&self) -> Expr {
        if self.is_zero() {
            return Expr::one();
        }
        let mut rest = self.clone();
        let mut factor = Expr::one();
        if self.is_polynomial() {
            let scale = self.0.den.as_constant().unwrap_or_else(Q::one);
            let mut kept = Poly::zero();
            for (m, c) in &self.0.num.terms {
                let c = c / &scale;
                let log_arg = match (m.exp.is_none(), m.factors.as_slice()) {
                    (true, [(Atom::Log(arg), 1)]) if c.is_integer() => Some(arg),
                    _ => None,
                };
                match log_arg.and_then(|arg| arg.pow_i(c.to_integer().to_i64()?).ok()) {
                    Some(p) => factor = &factor * &p,
                    None => kept.add_term(m.clone(), c),
                }
            }
            rest = Expr::from_poly(kept);
        }
        if rest.is_zero() {
            return factor;
        }
        &factor * &Expr::from_poly(Poly::term(Monomial::exp(rest), Q::one()))
    }

    /// Natural logarithm with `log(1) = 0`, `log(exp(a)) = a`, and positive
    /// rationals split over their prime factors.
    pub fn log(&self) -> Result<Expr> {
        if self.is_zero() {
            return Err(ExprError::Unsupported("log(0)".into()));
        }
        if let Some(q) = self.as_rational() {
            if q.is_negative() {
                return Err(ExprError::Unsupported(format!("log({q})")));
            }
            return Ok(log_rational(&q));
        }
        if self.is_polynomial() && self.0.num.len() == 1 {
            let (m, c) = self.0.num.leading().expect("one term");
            let c = c / self.0.den.as_constant().expect("polynomial");
            if m.factors.is_empty() && c.is_positive() {
                let arg = m.exp.clone().expect("non-constant monomial");
                return Ok(&arg + &log_rational(&c));
            }
        }
        Ok(Expr::atom(Atom::Log(self.clone())))
    }

    /// Square root. Square rational content is extracted; nested radicals are
    /// rejected.
    pub fn sqrt(&self) -> Result<Expr> {
        if self.atoms_deep().iter().any(|a| matches!(a, Atom::Sqrt(_))) {
            return Err(ExprError::Unsupported(format!(
                "nested radical sqrt({self})"
            )));
        }
        if !self.is_polynomial() {
            // sqrt(P/Q) = sqrt(P*Q)/Q
            let d = self.denom();
            return (self * &d * &d).sqrt()?.try_div(&d);
        }
        if let Some(q) = self.as_rational() {
            if q.is_negative() {
                return Err(ExprError::Unsupported(format!("sqrt({q})")));
            }
        }
        let p = &self.0.num;
        let outside = square_content(p);
        let inner = Expr::from_poly(p.scale(&(outside.clone() * &outside).recip()));
        let root = match inner.as_rational() {
            Some(q) if q.is_one() => Expr::one(),
            _ => Expr::atom(Atom::Sqrt(inner)),
        };
        Ok(&Expr::from_q(outside) * &root)
    }

    /// `arctan`, normalized by oddness so the argument has a positive
    /// leading coefficient.
    pub fn atan(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        if self.0.num.leading_sign_negative() {
            return -&Expr::atom(Atom::Atan(-self));
        }
        Expr::atom(Atom::Atan(self.clone()))
    }

    /// Tree view for printing and inspection.
    pub fn node(&self) -> Node {
        node::to_node(self)
    }

    pub fn to_string_as(&self, format: Format) -> String {
        print::print(self, format)
    }
}

fn log_rational(q: &Q) -> Expr {
    let mut out = Expr::zero();
    for (p, k) in factor_small(q.numer()) {
        out = &out + &(&Expr::int(k) * &Expr::atom(Atom::Log(Expr::from_q(Q::from_integer(p)))));
    }
    for (p, k) in factor_small(q.denom()) {
        out = &out - &(&Expr::int(k) * &Expr::atom(Atom::Log(Expr::from_q(Q::from_integer(p)))));
    }
    out
}

/// Prime factorization by trial division; a cofactor above the search bound
/// is returned as a single "prime".
fn factor_small(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(100_000);
    while n > BigInt::one() && p <= bound && &p * &p <= n {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        if k > 0 {
            out.push((p.clone(), k));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Rational `s` such that `p / s^2` has square-free integer content.
fn square_content(p: &Poly) -> Q {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.terms.values() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut outside = Q::one();
    for (prime, k) in factor_small(&num_gcd) {
        outside *= Q::from_integer(prime.pow((k / 2) as u32));
    }
    let mut den_out = BigInt::one();
    for (prime, k) in factor_small(&den_lcm) {
        den_out *= prime.pow(((k + 1) / 2) as u32);
    }
    outside / Q::from_integer(den_out)
}

fn shared_content(a: &Monomial, b: &Monomial) -> Monomial {
    let factors = a
        .factors
        .iter()
        .filter_map(|(x, e)| {
            let f = b.power_of(x);
            (f > 0).then(|| (x.clone(), (*e).min(f)))
        })
        .collect();
    Monomial { factors, exp: None }
}

fn primitive_scale(p: &Poly) -> Q {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.terms.values() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let k = Q::new(den_lcm, num_gcd);
    if p.leading_sign_negative() {
        -k
    } else {
        k
    }
}

/// Multiplies by conjugates until the denominator is free of atoms that
/// square to something simpler.
fn rationalize(mut num: Poly, mut den: Poly) -> Result<(Poly, Poly)> {
    for _ in 0..16 {
        let atom = den
            .terms
            .keys()
            .flat_map(|m| m.factors.iter())
            .find(|(a, _)| a.square_value().is_some())
            .map(|(a, _)| a.clone());
        let Some(atom) = atom else {
            return Ok((num, den));
        };
        let (d0, d1) = den.split_linear(&atom);
        let conj = d0.sub(&d1.mul_monomial(&Monomial::atom(atom, 1)));
        num = num.mul(&conj);
        den = den.mul(&conj);
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
    }
    Err(ExprError::Unsupported(
        "denominator radicals do not clear".into(),
    ))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self, Format::Plain))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Q> for Expr {
    fn from(q: Q) -> Self {
        Expr::from_q(q)
    }
}

impl std::str::FromStr for Expr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

fn add_impl(a: &Expr, b: &Expr) -> Expr {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.clone();
    }
    if a.0.den == b.0.den {
        let num = a.0.num.add(&b.0.num);
        if a.0.den.as_constant().is_some() {
            return Expr::from_poly(num);
        }
        return Expr::from_parts(num, a.0.den.clone()).expect("denominator is nonzero");
    }
    Expr::from_parts(
        a.0.num.mul(&b.0.den).add(&b.0.num.mul(&a.0.den)),
        a.0.den.mul(&b.0.den),
    )
    .expect("denominator is nonzero")
}

fn mul_impl(a: &Expr, b: &Expr) -> Expr {
    if a.is_zero() || b.is_zero() {
        return Expr::zero();
    }
    if a.is_polynomial() && b.is_polynomial() {
        return Expr::from_poly(a.0.num.mul(&b.0.num));
    }
    Expr::from_parts(a.0.num.mul(&b.0.num), a.0.den.mul(&b.0.den)).expect("denominator is nonzero")
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr(Arc::new(Frac {
            num: self.0.num.neg(),
            den: self.0.den.clone(),
        }))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl $trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, |a, b| add_impl(a, &-b));
binop!(Mul, mul, mul_impl);
// Panics on division by zero, like integer division; use `try_div` otherwise.
binop!(Div, div, |a, b| a.try_div(b).expect("division by zero"));

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, e| &acc + &e)
    }
}

impl std::iter::Product for Expr {
    fn product<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::one(), |acc, e| &acc * &e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn expansion_cancels() {
        assert!((p("(u+1)^2 - u^2 - 2*u - 1")).is_zero());
        assert!(p("exp(h)*exp(-h)").is_one());
    }

    #[test]
    fn ode4_expansion() {
        let e = p("t^2*(h' + h/t - 1/t^2 - c2)");
        assert_eq!(e, p("t^2*h' + t*h - 1 - c2*t^2"));
    }

    #[test]
    fn rational_functions_cancel() {
        let e = p("(x^2 - y^2)/(x + y)");
        assert_eq!(e, p("x - y"));
        let e = p("(c1*x + c1*y)/(2*c1)");
        assert_eq!(e, p("x/2 + y/2"));
    }

    #[test]
    fn radicals_square_and_rationalize() {
        assert_eq!(p("sqrt(w)^2"), p("w"));
        assert_eq!(p("sigma^3"), p("sigma"));
        assert_eq!(p("1/sqrt(w)"), p("sqrt(w)/w"));
        assert_eq!(p("sqrt(4*w)"), p("2*sqrt(w)"));
        assert_eq!(p("sqrt(9/4)"), p("3/2"));
    }

    #[test]
    fn exp_and_log_interplay() {
        assert_eq!(p("exp(-log(t) - h)"), p("exp(-h)/t"));
        assert_eq!(p("log(exp(h))"), p("h"));
        assert_eq!(p("exp(log(z))"), p("z"));
        assert!(p("log(1)").is_zero());
        assert_eq!(p("log(4)"), p("2*log(2)"));
    }

    #[test]
    fn exponential_denominator_is_normalized() {
        let a = p("c2*exp(c2*z)/(2*c1*exp(c2*z) - exp(c0*c2))");
        let b = p("c2/(2*c1 - exp(c0*c2 - c2*z))");
        assert_eq!(a, b);
    }

    #[test]
    fn atan_is_odd() {
        assert_eq!(p("arctan(-x)"), p("-arctan(x)"));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            p("1").try_div(&Expr::zero()),
            Err(ExprError::DivisionByZero)
        );
    }
}
