//! Sparse polynomials over atoms with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::atom::Atom;
use super::{Expr, Q};

/// Product of atom powers times an optional `exp(arg)` factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Monomial {
    pub factors: Vec<(Atom, u32)>,
    pub exp: Option<Expr>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(atom: Atom, power: u32) -> Self {
        Monomial {
            factors: vec![(atom, power)],
            exp: None,
        }
    }

    pub fn exp(arg: Expr) -> Self {
        Monomial {
            factors: Vec::new(),
            exp: Some(arg),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.exp.is_none()
    }

    pub fn power_of(&self, atom: &Atom) -> u32 {
        self.factors
            .iter()
            .find(|(a, _)| a == atom)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    factors.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        let exp = match (&self.exp, &other.exp) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => {
                let s = a + b;
                (!s.is_zero()).then_some(s)
            }
        };
        Monomial { factors, exp }
    }

    /// Exact quotient of the atom part; `None` when `other` does not divide.
    /// Exponential factors are divided freely since they are units.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut factors = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (a, ea) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < *a {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == *a {
                let eb = other.factors[j].1;
                j += 1;
                match ea.cmp(&eb) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => factors.push((a.clone(), ea - eb)),
                }
            } else {
                factors.push((a.clone(), *ea));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        let exp = match (&self.exp, &other.exp) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(-b),
            (Some(a), Some(b)) => {
                let s = a - b;
                (!s.is_zero()).then_some(s)
            }
        };
        Some(Monomial { factors, exp })
    }
}

// Term order: lexicographic in the global atom order, leading terms first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.factors.iter();
        let mut b = other.factors.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => break,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((aa, ea)), Some((ab, eb))) => match aa.cmp(ab) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match eb.cmp(ea) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                },
            }
        }
        self.exp.cmp(&other.exp)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct Poly {
    pub terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero();
        for (mm, c) in &self.terms {
            out.add_term(mm.mul(m), c.clone());
        }
        out.reduce_squares()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out.reduce_squares()
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Rewrites `sqrt(B)^k` and `sigma^k` with `k >= 2`.
    pub fn reduce_squares(self) -> Poly {
        let needs = self.terms.keys().any(|m| {
            m.factors
                .iter()
                .any(|(a, e)| *e >= 2 && a.square_value().is_some())
        });
        if !needs {
            return self;
        }
        let mut out = Poly::zero();
        for (m, c) in self.terms {
            let mut rest = Monomial {
                factors: Vec::new(),
                exp: m.exp.clone(),
            };
            let mut extra = Poly::one();
            for (a, e) in m.factors {
                match a.square_value() {
                    Some(value) if e >= 2 => {
                        extra = extra.mul(&value.pow(e / 2));
                        if e % 2 == 1 {
                            rest.factors.push((a, 1));
                        }
                    }
                    _ => rest.factors.push((a, e)),
                }
            }
            for (mm, cc) in extra.mul_monomial(&rest).terms {
                out.add_term(mm, cc * &c);
            }
        }
        out
    }

    /// Largest monomial dividing every term (atom part only).
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Monomial::one();
        };
        let mut factors = first.factors.clone();
        for m in iter {
            factors.retain_mut(|(a, e)| {
                let p = m.power_of(a);
                *e = (*e).min(p);
                *e > 0
            });
            if factors.is_empty() {
                break;
            }
        }
        Monomial { factors, exp: None }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero();
        for (mm, c) in &self.terms {
            let q = mm.div(m).expect("monomial divides every term");
            out.add_term(q, c.clone());
        }
        out
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        self.terms.keys().any(|m| {
            m.factors.iter().any(|(a, _)| a.contains(atom))
                || m.exp.as_ref().is_some_and(|e| e.contains(atom))
        })
    }

    /// Splits `self = d0 + d1 * atom` for an atom appearing with power at most one.
    pub fn split_linear(&self, atom: &Atom) -> (Poly, Poly) {
        let mut d0 = Poly::zero();
        let mut d1 = Poly::zero();
        for (m, c) in &self.terms {
            if m.power_of(atom) > 0 {
                let q = m
                    .div(&Monomial::atom(atom.clone(), 1))
                    .expect("atom present");
                d1.add_term(q, c.clone());
            } else {
                d0.add_term(m.clone(), c.clone());
            }
        }
        (d0, d1)
    }

    pub fn leading_sign_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}
