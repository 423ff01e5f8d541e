//! Multivariate polynomial GCD used to cancel rational functions.
//!
//! Atoms and exponential factors are mapped to free indeterminates, the GCD
//! is computed with a recursive primitive remainder sequence, and the result
//! is mapped back. The map is a ring homomorphism, so every cancellation it
//! finds is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::atom::Atom;
use super::poly::{Monomial, Poly};
use super::{Expr, Q};

type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
struct MPoly {
    terms: BTreeMap<Exps, Q>,
}

/// An atom, or `exp(base / L)` for a primitive exponent `base`. Exponents
/// are split into their terms, so `exp(a)`, `exp(2a)` and `exp(a - 1)` are
/// monomials in the indeterminates for `exp(a)` and `exp(1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Atom(Atom),
    Exp(Expr),
}

struct VarMap {
    vars: Vec<Var>,
    /// Per exponential variable: the common denominator `L`.
    scale: BTreeMap<Expr, BigInt>,
}

/// `(k, base)` with `arg = k * base` and `base` integer-primitive.
fn exp_base(arg: &Expr) -> (Q, Expr) {
    let (k, base) = arg.primitive();
    (k.recip(), base)
}

/// `arg = sum k_i * base_i`, one entry per term.
fn exp_parts(arg: &Expr) -> Vec<(Q, Expr)> {
    arg.terms().iter().map(exp_base).collect()
}

impl VarMap {
    fn build(polys: &[&Poly]) -> VarMap {
        let mut vars = Vec::new();
        let mut scale: BTreeMap<Expr, BigInt> = BTreeMap::new();
        for p in polys {
            for m in p.terms.keys() {
                for (a, _) in &m.factors {
                    vars.push(Var::Atom(a.clone()));
                }
                if let Some(e) = &m.exp {
                    for (k, base) in exp_parts(e) {
                        let l = scale.entry(base.clone()).or_insert_with(BigInt::one);
                        *l = l.lcm(k.denom());
                        vars.push(Var::Exp(base));
                    }
                }
            }
        }
        vars.sort();
        vars.dedup();
        VarMap { vars, scale }
    }

    fn index(&self, v: &Var) -> usize {
        self.vars.binary_search(v).expect("variable registered")
    }

    /// Integer exponents of `exp(arg)` in its base variables.
    fn exp_powers(&self, arg: &Expr) -> Vec<(usize, i64)> {
        exp_parts(arg)
            .into_iter()
            .map(|(k, base)| {
                let n = k * Q::from_integer(self.scale[&base].clone());
                let n = n.to_integer().try_into().expect("exponent fits in i64");
                (self.index(&Var::Exp(base)), n)
            })
            .collect()
    }

    /// Polynomial image of `p`, shifted by a unit so all exponential powers
    /// are nonnegative; the second value is the unit divided out.
    fn to_mpoly(&self, p: &Poly) -> (MPoly, Option<Expr>) {
        let n = self.vars.len();
        let mut raw: Vec<(Vec<i64>, Q)> = Vec::new();
        for (m, c) in &p.terms {
            let mut e = vec![0i64; n];
            for (a, k) in &m.factors {
                e[self.index(&Var::Atom(a.clone()))] = *k as i64;
            }
            if let Some(x) = &m.exp {
                for (i, k) in self.exp_powers(x) {
                    e[i] += k;
                }
            }
            raw.push((e, c.clone()));
        }
        let mut shift = vec![0i64; n];
        for (e, _) in &raw {
            for (s, k) in shift.iter_mut().zip(e) {
                *s = (*s).min(*k);
            }
        }
        let terms = raw
            .into_iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(&shift).map(|(k, s)| (k - s) as u32).collect(),
                    c,
                )
            })
            .collect();
        (MPoly { terms }, self.unit(&shift))
    }

    /// Argument of `prod exp(base/L)^k` over the exponential variables;
    /// `None` for the trivial unit.
    fn unit(&self, powers: &[i64]) -> Option<Expr> {
        let mut arg = Expr::zero();
        for (v, k) in self.vars.iter().zip(powers) {
            if let (Var::Exp(base), true) = (v, *k != 0) {
                let q = Q::new(BigInt::from(*k), self.scale[base].clone());
                arg = &arg + &(base * &Expr::from_q(q));
            }
        }
        (!arg.is_zero()).then_some(arg)
    }

    fn to_poly(&self, p: &MPoly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &p.terms {
            let mut m = Monomial::one();
            let mut powers = vec![0i64; e.len()];
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                match &self.vars[i] {
                    Var::Atom(a) => m = m.mul(&Monomial::atom(a.clone(), *k)),
                    Var::Exp(_) => powers[i] = *k as i64,
                }
            }
            if let Some(x) = self.unit(&powers) {
                m = m.mul(&Monomial::exp(x));
            }
            out.add_term(m, c.clone());
        }
        out.reduce_squares()
    }
}

impl MPoly {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    fn constant(n: usize, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; n], c);
        }
        MPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn nvars(&self) -> usize {
        self.terms.keys().next().map_or(0, |k| k.len())
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|e| *e == 0))
    }

    fn add_term(&mut self, e: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn scale(&self, k: &Q) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    fn leading(&self) -> Option<(&Exps, &Q)> {
        self.terms.iter().next_back()
    }

    fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn main_var(&self) -> Option<usize> {
        let n = self.nvars();
        (0..n).find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Coefficient of `x_v^k` as a polynomial in the remaining variables.
    fn coeff(&self, v: usize, k: u32) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    fn shift(&self, v: usize, k: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[v] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.leading()?;
        let (ld, lc) = (ld.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((lr, cr)) = rem.leading() {
            if lr.iter().zip(&ld).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exps = lr.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let c = cr / &lc;
            let t = MPoly {
                terms: BTreeMap::from([(e.clone(), c.clone())]),
            };
            rem = rem.sub(&d.mul(&t));
            quot.add_term(e, c);
        }
        Some(quot)
    }

    fn prem(&self, b: &MPoly, v: usize) -> MPoly {
        let n = b.degree_in(v);
        let lc = b.coeff(v, n);
        let mut r = self.clone();
        loop {
            if r.is_zero() {
                return r;
            }
            let m = r.degree_in(v);
            if m < n {
                return r;
            }
            let lr = r.coeff(v, m);
            r = r.mul(&lc).sub(&b.mul(&lr).shift(v, m - n));
        }
    }

    /// Integer-primitive form with positive leading coefficient.
    fn normalized(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut k = Q::new(den_lcm, num_gcd);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            k = -k;
        }
        self.scale(&k)
    }

    fn content(&self, v: usize) -> MPoly {
        let n = self.nvars();
        let mut g: Option<MPoly> = None;
        for k in 0..=self.degree_in(v) {
            let c = self.coeff(v, k);
            if c.is_zero() {
                continue;
            }
            g = Some(match g {
                None => c.normalized(),
                Some(g) => gcd(&g, &c),
            });
            if g.as_ref().is_some_and(|g| g.is_constant()) {
                return MPoly::constant(n, Q::one());
            }
        }
        g.unwrap_or_else(|| MPoly::constant(n, Q::one()))
    }
}

fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let n = a.nvars().max(b.nvars());
    if a.is_constant() || b.is_constant() {
        return MPoly::constant(n, Q::one());
    }
    let va = a.main_var().expect("non-constant");
    let vb = b.main_var().expect("non-constant");
    let v = va.min(vb);
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content(v), b);
    }
    let ca = a.content(v);
    let cb = b.content(v);
    let g = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.prem(&q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return g;
        }
        let cr = r.content(v);
        p = q;
        q = r.div_exact(&cr).expect("content divides");
    }
    q.mul(&g).normalized()
}

/// Cancels the common factor of `num/den`; returns the reduced pair, or
/// `None` when the factor is trivial.
pub(crate) fn cancel(num: &Poly, den: &Poly) -> Option<(Poly, Poly)> {
    let vars = VarMap::build(&[num, den]);
    let (a, ua) = vars.to_mpoly(num);
    let (b, ub) = vars.to_mpoly(den);
    let g = gcd(&a, &b);
    if g.is_constant() {
        return None;
    }
    let qa = a.div_exact(&g)?;
    let qb = b.div_exact(&g)?;
    let restore = |p: Poly, u: &Option<Expr>| match u {
        Some(x) => p.mul_monomial(&Monomial::exp(x.clone())),
        None => p,
    };
    Some((
        restore(vars.to_poly(&qa), &ua),
        restore(vars.to_poly(&qb), &ub),
    ))
}

/// Normalized GCD of two polynomials.
pub(crate) fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    let vars = VarMap::build(&[a, b]);
    let g = gcd(&vars.to_mpoly(a).0, &vars.to_mpoly(b).0);
    vars.to_poly(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(terms: &[(&[u32], i64)]) -> MPoly {
        let mut p = MPoly::zero();
        for (e, c) in terms {
            p.add_term(e.to_vec(), Q::from_integer((*c).into()));
        }
        p
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (x + y)(x - 1) and (x + y)(y + 2)
        let a = mp(&[(&[2, 0], 1), (&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1)]);
        let b = mp(&[(&[1, 1], 1), (&[1, 0], 2), (&[0, 2], 1), (&[0, 1], 2)]);
        let g = gcd(&a, &b);
        assert_eq!(g, mp(&[(&[1, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn coprime_gives_one() {
        let a = mp(&[(&[1, 0], 1), (&[0, 0], 1)]);
        let b = mp(&[(&[0, 1], 1), (&[0, 0], 1)]);
        assert!(gcd(&a, &b).is_constant());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = mp(&[(&[2], 1), (&[0], 1)]);
        let b = mp(&[(&[1], 1), (&[0], 1)]);
        assert!(a.div_exact(&b).is_none());
        let sq = b.mul(&b);
        assert_eq!(sq.div_exact(&b), Some(b));
    }
}
