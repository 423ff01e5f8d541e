use std::cmp::Ordering;

use super::poly::Poly;
use super::symbol::Symbol;
use super::Expr;

/// Derivative multi-index of a jet coordinate.
///
/// `Partial` is used for `u(t, x)`; `Prime` for functions of one variable
/// (`h(z)`, `w(h)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivIndex {
    Partial { t: u8, x: u8 },
    Prime(u8),
}

impl DerivIndex {
    pub fn order(&self) -> u8 {
        match *self {
            DerivIndex::Partial { t, x } => t + x,
            DerivIndex::Prime(k) => k,
        }
    }
}

/// A jet coordinate such as `u_tx` or `h'''`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Deriv {
    pub dep: Symbol,
    pub index: DerivIndex,
}

impl Deriv {
    pub fn partial(dep: &str, t: u8, x: u8) -> Self {
        Deriv {
            dep: Symbol::new(dep),
            index: DerivIndex::Partial { t, x },
        }
    }

    pub fn prime(dep: &str, k: u8) -> Self {
        Deriv {
            dep: Symbol::new(dep),
            index: DerivIndex::Prime(k),
        }
    }

    pub fn order(&self) -> u8 {
        self.index.order()
    }
}

// Among equal orders, more t-derivatives sort first (u_t before u_x).
impl Ord for DerivIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        use DerivIndex::*;
        match (self, other) {
            (Partial { t: t1, x: x1 }, Partial { t: t2, x: x2 }) => {
                t2.cmp(t1).then_with(|| x2.cmp(x1))
            }
            (Prime(a), Prime(b)) => b.cmp(a),
            (Partial { .. }, Prime(_)) => Ordering::Less,
            (Prime(_), Partial { .. }) => Ordering::Greater,
        }
    }
}

impl PartialOrd for DerivIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Higher derivatives sort first so they lead the printed form.
impl Ord for Deriv {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .order()
            .cmp(&self.order())
            .then_with(|| self.dep.cmp(&other.dep))
            .then_with(|| self.index.cmp(&other.index))
    }
}

impl PartialOrd for Deriv {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Opaque function symbol applied to an argument, with a derivative order:
/// `f(u)`, `f_u(u)`, `phi_uu(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncApp {
    pub name: Symbol,
    pub order: u8,
    pub arg: Expr,
}

/// Indeterminates of the polynomial layer. `exp` is not an atom: it lives in
/// the monomial so that `exp(a)*exp(b)` merges into `exp(a + b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Deriv(Deriv),
    Sym(Symbol),
    Func(FuncApp),
    Log(Expr),
    Sqrt(Expr),
    Atan(Expr),
}

impl Atom {
    pub fn sym(name: &str) -> Self {
        Atom::Sym(Symbol::new(name))
    }

    pub fn jet(t: u8, x: u8) -> Self {
        if t == 0 && x == 0 {
            Atom::sym("u")
        } else {
            Atom::Deriv(Deriv::partial("u", t, x))
        }
    }

    pub fn prime(dep: &str, k: u8) -> Self {
        if k == 0 {
            Atom::sym(dep)
        } else {
            Atom::Deriv(Deriv::prime(dep, k))
        }
    }

    /// Polynomial value of `atom^2` for atoms that square to something simpler:
    /// `sqrt(B)^2 = B` and `sigma^2 = 1`.
    pub(crate) fn square_value(&self) -> Option<Poly> {
        match self {
            Atom::Sqrt(b) => Some(b.num_poly().clone()),
            Atom::Sym(s) if s.is_sign() => Some(Poly::one()),
            _ => None,
        }
    }

    /// Expression arguments nested inside this atom.
    pub fn argument(&self) -> Option<&Expr> {
        match self {
            Atom::Func(f) => Some(&f.arg),
            Atom::Log(a) | Atom::Sqrt(a) | Atom::Atan(a) => Some(a),
            Atom::Deriv(_) | Atom::Sym(_) => None,
        }
    }

    pub fn contains(&self, target: &Atom) -> bool {
        if self == target {
            return true;
        }
        self.argument().is_some_and(|a| a.contains(target))
    }
}
