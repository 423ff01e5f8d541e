//! Total derivatives, prolongation of point fields and the on-manifold
//! symmetry test for members of the class.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::equivalence::ClassMember;
use crate::expr::{Atom, Deriv, DerivIndex, Expr, ExprError};
use crate::lie::VectorField;

/// Highest jet order stored: a fourth-order equation plus two eliminations.
pub const MAX_ORDER: u8 = 6;

#[derive(Debug, Error)]
pub enum JetError {
    #[error("total derivative would exceed the jet truncation order {MAX_ORDER}")]
    Truncation,
    #[error("prolongation order {0} unsupported (at most 4)")]
    OrderUnsupported(usize),
    #[error("field has components outside (t, x, u) or depends on fiber coordinates: {0}")]
    NotPointField(String),
    #[error("equation is not a member of the class: {0}")]
    NotInClass(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, JetError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    T,
    X,
}

impl Direction {
    fn name(self) -> &'static str {
        match self {
            Direction::T => "t",
            Direction::X => "x",
        }
    }
}

/// Jet coordinate `dep_{t^a x^b}` (the plain symbol when `a = b = 0`).
pub fn jet_of(dep: &str, a: u8, b: u8) -> Atom {
    if a == 0 && b == 0 {
        Atom::sym(dep)
    } else {
        Atom::Deriv(Deriv::partial(dep, a, b))
    }
}

/// Multi-index of `atom` if it is a jet coordinate of `dep`.
fn jet_index(atom: &Atom, dep: &str) -> Option<(u8, u8)> {
    match atom {
        Atom::Sym(s) if s.name() == dep => Some((0, 0)),
        Atom::Deriv(Deriv {
            dep: d,
            index: DerivIndex::Partial { t, x },
        }) if d.name() == dep => Some((*t, *x)),
        _ => None,
    }
}

/// `D_t` or `D_x` on expressions in `(t, x, u, u_J, parameters)`.
pub fn total_derivative(e: &Expr, dir: Direction) -> Result<Expr> {
    total_derivative_of(e, "u", dir)
}

/// Total derivative treating `dep` as the dependent variable.
pub fn total_derivative_of(e: &Expr, dep: &str, dir: Direction) -> Result<Expr> {
    let mut acc = e.diff_sym(dir.name());
    for atom in e.atoms_deep() {
        let Some((a, b)) = jet_index(&atom, dep) else {
            continue;
        };
        let d = e.diff(&atom);
        if d.is_zero() {
            continue;
        }
        if a + b >= MAX_ORDER {
            return Err(JetError::Truncation);
        }
        let next = match dir {
            Direction::T => jet_of(dep, a + 1, b),
            Direction::X => jet_of(dep, a, b + 1),
        };
        acc = &acc + &(&d * &Expr::atom(next));
    }
    Ok(acc)
}

/// `D_t^a D_x^b e`.
pub fn total_derivative_n(e: &Expr, dep: &str, a: u8, b: u8) -> Result<Expr> {
    let mut out = e.clone();
    for _ in 0..b {
        out = total_derivative_of(&out, dep, Direction::X)?;
    }
    for _ in 0..a {
        out = total_derivative_of(&out, dep, Direction::T)?;
    }
    Ok(out)
}

/// A point field on `(t, x, u)` together with its prolongation coefficients.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    pub tau: Expr,
    pub xi: Expr,
    pub eta: Expr,
    /// `ζ^J` keyed by `(t-order, x-order)`.
    pub zeta: BTreeMap<(u8, u8), Expr>,
}

impl ProlongedField {
    /// Characteristic `η - τ u_t - ξ u_x`.
    pub fn characteristic(&self) -> Expr {
        &(&self.eta - &(&self.tau * &Expr::jet(1, 0))) - &(&self.xi * &Expr::jet(0, 1))
    }

    /// `ζ^J = D_J(η - τ u_t - ξ u_x) + τ u_{Jt} + ξ u_{Jx}`.
    pub fn direct(&self, a: u8, b: u8) -> Result<Expr> {
        if a + b + 1 > MAX_ORDER {
            return Err(JetError::Truncation);
        }
        let dq = total_derivative_n(&self.characteristic(), "u", a, b)?;
        Ok(&(&dq + &(&self.tau * &Expr::atom(jet_of("u", a + 1, b))))
            + &(&self.xi * &Expr::atom(jet_of("u", a, b + 1))))
    }

    /// `ζ^J`, from the stored table when available.
    pub fn zeta_of(&self, a: u8, b: u8) -> Result<Expr> {
        match self.zeta.get(&(a, b)) {
            Some(z) => Ok(z.clone()),
            None => self.direct(a, b),
        }
    }

    /// Recursion `ζ^{Jr} = D_r ζ^J - D_r(τ) u_{Jt} - D_r(ξ) u_{Jx}`.
    pub fn recursive(&self, a: u8, b: u8, dir: Direction) -> Result<Expr> {
        let z = self.zeta_of(a, b)?;
        let dz = total_derivative(&z, dir)?;
        let dtau = total_derivative(&self.tau, dir)?;
        let dxi = total_derivative(&self.xi, dir)?;
        Ok(&(&dz - &(&dtau * &Expr::atom(jet_of("u", a + 1, b))))
            - &(&dxi * &Expr::atom(jet_of("u", a, b + 1))))
    }
}

fn is_fiber_atom(a: &Atom) -> bool {
    matches!(a, Atom::Sym(s) if crate::lie::field::COORDINATES[crate::lie::field::FIBER_START..]
        .contains(&s.name()))
}

/// Fourth (or lower) prolongation of a point field: `ζ^t` and `ζ^x .. ζ^{x^order}`.
pub fn prolong(v: &VectorField, order: usize) -> Result<ProlongedField> {
    if order > 4 {
        return Err(JetError::OrderUnsupported(order));
    }
    let fiber = (crate::lie::field::FIBER_START..9).any(|i| !v.coeff(i).is_zero());
    let depends = v.coeffs()[..3].iter().any(|c| !c.free_of(&is_fiber_atom));
    if fiber || depends {
        return Err(JetError::NotPointField(v.to_string()));
    }
    let mut p = ProlongedField {
        tau: v.component("t").clone(),
        xi: v.component("x").clone(),
        eta: v.component("u").clone(),
        zeta: BTreeMap::new(),
    };
    if order >= 1 {
        let zt = p.direct(1, 0)?;
        assert!(
            !zt.contains(&jet_of("u", 2, 0)),
            "u_tt terms of zeta^t must cancel identically"
        );
        p.zeta.insert((1, 0), zt);
    }
    for k in 1..=order as u8 {
        let z = p.direct(0, k)?;
        p.zeta.insert((0, k), z);
    }
    Ok(p)
}

/// Applies the prolonged operator to a jet-space expression.
pub fn lie_derivative(p: &ProlongedField, e: &Expr) -> Result<Expr> {
    let mut acc = &(&p.tau * &e.diff_sym("t")) + &(&p.xi * &e.diff_sym("x"));
    acc = &acc + &(&p.eta * &e.diff_sym("u"));
    for atom in e.atoms_deep() {
        let Some((a, b)) = jet_index(&atom, "u") else {
            continue;
        };
        if a + b == 0 {
            continue;
        }
        let d = e.diff(&atom);
        if !d.is_zero() {
            acc = &acc + &(&d * &p.zeta_of(a, b)?);
        }
    }
    Ok(acc)
}

/// An equation `lhs = 0` of the class, with the member it came from.
#[derive(Clone, Debug)]
pub struct EquationInstance {
    pub lhs: Expr,
    pub source: ClassMember,
}

impl EquationInstance {
    /// The class form `u_t + f_u u_x + α u_xx + φ_uu u_x² + φ_u u_xx + β u_xxx + γ u_xxxx - g`.
    pub fn from_member(member: &ClassMember) -> Self {
        EquationInstance {
            lhs: member.class_form(),
            source: member.clone(),
        }
    }

    /// Accepts any nonzero multiple of the class form, e.g. `u u_t + …`.
    pub fn from_lhs(lhs: Expr, member: &ClassMember) -> Result<Self> {
        let ut = Atom::jet(1, 0);
        let k = lhs.coeff(&ut, 1)?;
        if k.is_zero() || lhs.degree_in(&ut) != 1 {
            return Err(JetError::NotInClass(format!("{lhs} is not affine in u_t")));
        }
        let normalized = lhs.try_div(&k)?;
        let diff = &normalized - &member.class_form();
        if !diff.is_zero() {
            return Err(JetError::NotInClass(format!(
                "{lhs} differs from the class form by {diff}"
            )));
        }
        Ok(EquationInstance {
            lhs,
            source: member.clone(),
        })
    }

    /// `u_t` on the solution manifold.
    pub fn solved_ut(&self) -> Result<Expr> {
        Ok(self.lhs.solve_for(&Atom::jet(1, 0))?)
    }
}

/// Replaces every jet with a `t` derivative by its value on the solution
/// manifold of `u_t = s`, where `s` is free of `t` derivatives.
pub fn eliminate_t_jets(e: &Expr, s: &Expr) -> Result<Expr> {
    let mut cache: BTreeMap<(u8, u8), Expr> = BTreeMap::new();
    let mut out = e.clone();
    loop {
        let targets: Vec<(u8, u8)> = out
            .atoms_deep()
            .iter()
            .filter_map(|a| jet_index(a, "u"))
            .filter(|(a, _)| *a > 0)
            .collect();
        if targets.is_empty() {
            return Ok(out);
        }
        let mut b = crate::expr::Binding::new();
        for (a, x) in targets {
            let v = manifold_value(a, x, s, &mut cache)?;
            b.insert(jet_of("u", a, x), v);
        }
        out = out.substitute(&b);
    }
}

fn manifold_value(a: u8, b: u8, s: &Expr, cache: &mut BTreeMap<(u8, u8), Expr>) -> Result<Expr> {
    if let Some(v) = cache.get(&(a, b)) {
        return Ok(v.clone());
    }
    let v = if a == 1 {
        total_derivative_n(s, "u", 0, b)?
    } else {
        let prev = manifold_value(a - 1, b, s, cache)?;
        let d = total_derivative(&prev, Direction::T)?;
        eliminate_t_jets(&d, s)?
    };
    cache.insert((a, b), v.clone());
    Ok(v)
}

/// On-manifold residual of the symmetry condition; zero iff `v` is a point
/// symmetry of `eq`.
pub fn check_symmetry(v: &VectorField, eq: &EquationInstance) -> Result<Expr> {
    let p = prolong(v, 4)?;
    let l = lie_derivative(&p, &eq.lhs)?;
    let s = eq.solved_ut()?;
    eliminate_t_jets(&l, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn total_derivatives() {
        assert_eq!(total_derivative(&p("u"), Direction::X).unwrap(), p("u_x"));
        assert_eq!(
            total_derivative(&p("x"), Direction::T).unwrap(),
            Expr::zero()
        );
        let e = p("phi_u(u)*u_x");
        assert_eq!(
            total_derivative(&e, Direction::X).unwrap(),
            p("phi_uu(u)*u_x^2 + phi_u(u)*u_xx")
        );
    }

    #[test]
    fn truncation_is_reported() {
        let e = p("u_xxxxxx");
        assert!(matches!(
            total_derivative(&e, Direction::X),
            Err(JetError::Truncation)
        ));
    }

    #[test]
    fn prolongation_examples() {
        let dt = prolong(&VectorField::partial("t"), 4).unwrap();
        assert!(dt.zeta.values().all(Expr::is_zero));

        let v = VectorField::from_terms(&[("t", p("t")), ("u", p("1"))]);
        let pf = prolong(&v, 4).unwrap();
        assert_eq!(pf.zeta[&(1, 0)], p("-u_t"));
        assert!(pf.zeta[&(0, 1)].is_zero());
        assert!(pf.zeta[&(0, 2)].is_zero());

        let v = VectorField::from_terms(&[("x", p("t")), ("u", p("1"))]);
        let pf = prolong(&v, 4).unwrap();
        assert_eq!(pf.zeta[&(1, 0)], p("-u_x"));
        assert!(pf.zeta[&(0, 1)].is_zero());
    }

    #[test]
    fn fiber_fields_are_rejected() {
        let v = VectorField::from_terms(&[("f", p("u"))]);
        assert!(matches!(prolong(&v, 4), Err(JetError::NotPointField(_))));
        assert!(matches!(
            prolong(&VectorField::partial("t"), 5),
            Err(JetError::OrderUnsupported(5))
        ));
    }

    #[test]
    fn lie_derivative_of_ut() {
        let v = VectorField::from_terms(&[("t", p("t")), ("u", p("1"))]);
        let pf = prolong(&v, 4).unwrap();
        assert_eq!(lie_derivative(&pf, &p("u_t")).unwrap(), p("-u_t"));
        let dx = prolong(&VectorField::partial("x"), 4).unwrap();
        assert!(lie_derivative(&dx, &p("u*u_t + u_xx")).unwrap().is_zero());
    }
}
