//! Tree view of a canonical expression (sums, products, powers).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::atom::{Atom, DerivIndex};
use super::poly::{Monomial, Poly};
use super::symbol::SymbolKind;
use super::{Expr, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(Q),
    /// Symbol or jet coordinate, by printed name.
    Var(String),
    /// Elementary or opaque function applied to an argument.
    Call(String, Box<Node>),
    Sum(Vec<Node>),
    Product(Vec<Node>),
    Power(Box<Node>, Q),
}

impl Node {
    pub fn is_negative(&self) -> bool {
        match self {
            Node::Num(q) => q.is_negative(),
            Node::Product(fs) => fs.first().is_some_and(Node::is_negative),
            _ => false,
        }
    }
}

pub(crate) fn atom_name(a: &Atom) -> String {
    match a {
        Atom::Sym(s) => s.name().to_string(),
        Atom::Deriv(d) => match d.index {
            DerivIndex::Partial { t, x } => {
                format!(
                    "{}_{}{}",
                    d.dep,
                    "t".repeat(t as usize),
                    "x".repeat(x as usize)
                )
            }
            DerivIndex::Prime(k) => format!("{}{}", d.dep, "'".repeat(k as usize)),
        },
        Atom::Func(f) => {
            if f.order == 0 {
                f.name.name().to_string()
            } else {
                format!("{}_{}", f.name, "u".repeat(f.order as usize))
            }
        }
        Atom::Log(_) => "log".into(),
        Atom::Sqrt(_) => "sqrt".into(),
        Atom::Atan(_) => "arctan".into(),
    }
}

fn atom_node(a: &Atom) -> Node {
    match a {
        Atom::Sym(_) | Atom::Deriv(_) => Node::Var(atom_name(a)),
        Atom::Func(f) => {
            if f.order > 0 && f.arg.as_atom() == Some(&Atom::sym("u")) {
                Node::Var(atom_name(a))
            } else {
                Node::Call(atom_name(a), Box::new(to_node(&f.arg)))
            }
        }
        Atom::Log(x) | Atom::Sqrt(x) | Atom::Atan(x) => {
            Node::Call(atom_name(a), Box::new(to_node(x)))
        }
    }
}

// Print order inside a product: parameters, variables, functions, jets, the rest.
fn print_rank(a: &Atom) -> (u8, u8) {
    match a {
        Atom::Sym(s) => match s.kind() {
            SymbolKind::Parameter => (0, 0),
            _ => (1, 0),
        },
        Atom::Func(_) => (2, 0),
        Atom::Deriv(d) => (3, d.order()),
        Atom::Log(_) => (4, 0),
        Atom::Sqrt(_) => (5, 0),
        Atom::Atan(_) => (6, 0),
    }
}

fn monomial_factors(m: &Monomial) -> Vec<Node> {
    let mut factors: Vec<&(Atom, u32)> = m.factors.iter().collect();
    factors.sort_by(|(a, _), (b, _)| print_rank(a).cmp(&print_rank(b)).then_with(|| a.cmp(b)));
    let mut out: Vec<Node> = factors
        .into_iter()
        .map(|(a, k)| {
            let n = atom_node(a);
            if *k == 1 {
                n
            } else {
                Node::Power(Box::new(n), Q::from_integer((*k).into()))
            }
        })
        .collect();
    if let Some(e) = &m.exp {
        out.push(Node::Call("exp".into(), Box::new(to_node(e))));
    }
    out
}

fn term_node(m: &Monomial, c: &Q) -> Node {
    let mut factors = monomial_factors(m);
    if factors.is_empty() {
        return Node::Num(c.clone());
    }
    if !c.is_one() {
        factors.insert(0, Node::Num(c.clone()));
    }
    if factors.len() == 1 {
        factors.pop().expect("one factor")
    } else {
        Node::Product(factors)
    }
}

fn poly_node(p: &Poly) -> Node {
    let mut terms: Vec<Node> = p.terms.iter().map(|(m, c)| term_node(m, c)).collect();
    match terms.len() {
        0 => Node::Num(Q::from_integer(0.into())),
        1 => terms.pop().expect("one term"),
        _ => Node::Sum(terms),
    }
}

pub(crate) fn to_node(e: &Expr) -> Node {
    if e.is_polynomial() {
        return poly_node(e.num_poly());
    }
    // Clear fractional numerator coefficients for display.
    let lcm = e
        .num_poly()
        .terms
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let k = Q::from_integer(lcm);
    let num = poly_node(&e.num_poly().scale(&k));
    let den = Node::Power(Box::new(poly_node(&e.den_poly().scale(&k))), -Q::one());
    match num {
        Node::Product(mut fs) => {
            fs.push(den);
            Node::Product(fs)
        }
        other => Node::Product(vec![other, den]),
    }
}
