//! Finite equivalence transformations: flows of affine fields and the
//! class-preservation check.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::member::{class_form_in, ClassMember, ELEMENT_NAMES};
use super::{equivalence_fields, EquivError, Result};
use crate::expr::{Atom, Binding, Expr, Q};
use crate::jet::{jet_of, total_derivative_of, Direction};
use crate::lie::field::{VectorField, COORDINATES};

/// Order in which the ten one-parameter flows are composed (0-based basis
/// indices, first applied first).
pub const FLOW_ORDER: [usize; 10] = [6, 7, 0, 1, 2, 8, 9, 3, 4, 5];

/// A point transformation of the augmented space, given by the new value of
/// each coordinate as an expression in the old coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTransformation {
    maps: [Expr; 9],
    /// `ε1 .. ε10` when built from group parameters.
    pub params: Option<Vec<Expr>>,
}

impl FiniteTransformation {
    pub fn identity() -> Self {
        FiniteTransformation {
            maps: COORDINATES.map(Expr::sym),
            params: None,
        }
    }

    pub fn map(&self, name: &str) -> &Expr {
        &self.maps[crate::lie::field::coordinate_index(name).expect("known coordinate")]
    }

    pub fn maps(&self) -> &[Expr; 9] {
        &self.maps
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &FiniteTransformation) -> FiniteTransformation {
        let mut b = Binding::new();
        for (name, m) in COORDINATES.iter().zip(&self.maps) {
            b.insert(Atom::sym(name), m.clone());
        }
        FiniteTransformation {
            maps: std::array::from_fn(|i| next.maps[i].substitute(&b)),
            params: None,
        }
    }

    /// Composition of the ten flows with parameters `eps[0..10]`.
    pub fn from_parameters(eps: &[Expr]) -> Result<Self> {
        assert_eq!(eps.len(), 10, "ten group parameters");
        let fields = equivalence_fields();
        let mut t = FiniteTransformation::identity();
        for &i in &FLOW_ORDER {
            if !eps[i].is_zero() {
                t = t.then(&exponentiate(&fields[i], &eps[i])?);
            }
        }
        t.params = Some(eps.to_vec());
        Ok(t)
    }

    /// Symbolic parameters `eps1 .. eps10`.
    pub fn symbolic() -> Self {
        let eps: Vec<Expr> = (1..=10).map(|i| Expr::sym(&format!("eps{i}"))).collect();
        FiniteTransformation::from_parameters(&eps).expect("basis flows are triangular")
    }

    /// The `ε`-vector as strings, or the coordinate maps when no parameters are known.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.params {
            Some(p) => serde_json::json!({
                "eps": p.iter().map(ToString::to_string).collect::<Vec<_>>()
            }),
            None => serde_json::json!({
                "maps": COORDINATES.iter().zip(&self.maps)
                    .map(|(n, m)| (n.to_string(), serde_json::Value::String(m.to_string())))
                    .collect::<serde_json::Map<_, _>>()
            }),
        }
    }
}

/// `Σ c ε^n e^{λε}` keyed by `(λ, n)`.
type ExpPoly = BTreeMap<(Q, u32), Expr>;

fn add_term(p: &mut ExpPoly, key: (Q, u32), c: Expr) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(key.clone()).or_insert_with(Expr::zero);
    *e = &*e + &c;
    if e.is_zero() {
        p.remove(&key);
    }
}

/// Solution of `y' = a y + g(ε)`, `y(0) = y0`.
fn solve_linear(a: &Q, g: &ExpPoly, y0: &Expr) -> ExpPoly {
    let mut out = ExpPoly::new();
    let mut at_zero = Expr::zero();
    for ((lambda, n), c) in g {
        if lambda == a {
            let k = Expr::from_q(Q::from_integer((*n + 1).into()));
            add_term(&mut out, (a.clone(), n + 1), c / &k);
        } else {
            let d = Expr::from_q(lambda - a);
            let mut p = vec![Expr::zero(); *n as usize + 1];
            p[*n as usize] = c / &d;
            for k in (0..*n as usize).rev() {
                p[k] = -(&(&p[k + 1] * &Expr::int(k as i64 + 1)) / &d);
            }
            at_zero = &at_zero + &p[0];
            for (k, pk) in p.into_iter().enumerate() {
                add_term(&mut out, (lambda.clone(), k as u32), pk);
            }
        }
    }
    add_term(&mut out, (a.clone(), 0), y0 - &at_zero);
    out
}

fn to_expr(p: &ExpPoly, eps: &Expr) -> Expr {
    p.iter()
        .map(|((lambda, n), c)| {
            let pow = eps.pow_i(*n as i64).expect("nonnegative power");
            &(c * &pow) * &(eps * &Expr::from_q(lambda.clone())).exp()
        })
        .sum()
}

/// Flow `exp(εY)` of a field whose components are affine in the coordinates
/// with rational coefficients, solved component by component.
pub fn exponentiate(y: &VectorField, eps: &Expr) -> Result<FiniteTransformation> {
    let n = COORDINATES.len();
    let vars: Vec<Atom> = COORDINATES.iter().map(|c| Atom::sym(c)).collect();
    let mut a = vec![vec![Q::zero(); n]; n];
    let mut b = vec![Q::zero(); n];
    for i in 0..n {
        for (exps, c) in y.coeff(i).coefficients(&vars)? {
            let q = c.as_rational().ok_or_else(|| {
                EquivError::Unsupported(format!("non-rational coefficient {c} in {y}"))
            })?;
            match exps.iter().sum::<u32>() {
                0 => b[i] = q,
                1 => a[i][exps.iter().position(|e| *e == 1).expect("degree one")] = q,
                _ => return Err(EquivError::Unsupported(format!("nonlinear flow of {y}"))),
            }
        }
    }
    // dependency order: a component is solved after those it depends on
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let next =
            (0..n).find(|&i| !done[i] && (0..n).all(|j| j == i || a[i][j].is_zero() || done[j]));
        let Some(i) = next else {
            return Err(EquivError::Unsupported(format!(
                "non-triangular flow of {y}"
            )));
        };
        done[i] = true;
        order.push(i);
    }
    let mut sol: Vec<ExpPoly> = vec![ExpPoly::new(); n];
    for i in order {
        let mut g = ExpPoly::new();
        add_term(&mut g, (Q::zero(), 0), Expr::from_q(b[i].clone()));
        for j in 0..n {
            if j != i && !a[i][j].is_zero() {
                for (k, c) in &sol[j] {
                    add_term(&mut g, k.clone(), c * &Expr::from_q(a[i][j].clone()));
                }
            }
        }
        sol[i] = solve_linear(&a[i][i], &g, &Expr::sym(COORDINATES[i]));
    }
    let maps = std::array::from_fn(|i| to_expr(&sol[i], eps));
    Ok(FiniteTransformation { maps, params: None })
}

fn slope(map: &Expr, var: &str, others_free: &[&str]) -> Result<Expr> {
    let d = map.diff_sym(var);
    let coordinate_free = COORDINATES.iter().all(|c| !d.contains_sym(c));
    let others_ok = others_free.iter().all(|c| !map.contains_sym(c));
    if !coordinate_free || !others_ok || d.is_zero() {
        return Err(EquivError::Unsupported(format!(
            "transformation component {map} is not a projectable affine map in {var}"
        )));
    }
    Ok(d)
}

/// Residual of class preservation: the member's equation rewritten in the
/// new variables, normalized by its `ũ_t̃` coefficient, minus the class form
/// with the transformed elements. Zero when `t` maps the member into the class.
pub fn verify_class_preservation(t: &FiniteTransformation, member: &ClassMember) -> Result<Expr> {
    let tt = slope(t.map("t"), "t", &["x", "u"])?;
    let xt = t.map("x").diff_sym("t");
    let xx = slope(t.map("x"), "x", &["u"])?;
    let uu = slope(t.map("u"), "u", &["t", "x"])?;
    if COORDINATES.iter().any(|c| xt.contains_sym(c)) {
        return Err(EquivError::Unsupported("x-map is not affine".into()));
    }
    // old u as a function of the new dependent variable v
    let v = Expr::sym("v");
    let u_of_v = (&v - &t.map("u").subs_sym("u", &Expr::zero())).try_div(&uu)?;
    let d_t = |e: &Expr| -> Result<Expr> {
        let a = total_derivative_of(e, "v", Direction::T)?;
        let b = total_derivative_of(e, "v", Direction::X)?;
        Ok(&(&tt * &a) + &(&xt * &b))
    };
    let d_x = |e: &Expr| -> Result<Expr> { Ok(&xx * &total_derivative_of(e, "v", Direction::X)?) };
    let mut bind = Binding::new();
    bind.insert(Atom::sym("u"), u_of_v.clone());
    bind.insert(jet_of("u", 1, 0), d_t(&u_of_v)?);
    let mut cur = u_of_v.clone();
    for k in 1..=4u8 {
        cur = d_x(&cur)?;
        bind.insert(jet_of("u", 0, k), cur.clone());
    }
    let old = member.class_form().substitute(&bind);
    // transformed elements as functions of v
    let mut eb = Binding::new();
    eb.insert(Atom::sym("u"), u_of_v.clone());
    for (name, e) in ELEMENT_NAMES.iter().zip(member.elements()) {
        eb.insert(Atom::sym(name), e.subs_sym("u", &u_of_v));
    }
    let new_el: Vec<Expr> = ELEMENT_NAMES
        .iter()
        .map(|n| t.map(n).substitute(&eb))
        .collect();
    let new_form = class_form_in(
        [
            &new_el[0], &new_el[1], &new_el[2], &new_el[3], &new_el[4], &new_el[5],
        ],
        "v",
    );
    let lambda = old.coeff(&jet_of("v", 1, 0), 1)?;
    if lambda.is_zero() {
        return Err(EquivError::Unsupported(
            "transformed equation lost its v_t term".into(),
        ));
    }
    Ok(&old.try_div(&lambda)? - &new_form)
}

/// `ε`-slice of the closed-form group for a single basis flow.
pub fn group_slice(i: usize, eps: &Expr) -> FiniteTransformation {
    let mut p = vec![Expr::zero(); 10];
    p[i] = eps.clone();
    FiniteTransformation::from_parameters(&p).expect("basis flows are triangular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn galilean_flow() {
        let y7 = &equivalence_fields()[6];
        let t = exponentiate(y7, &Expr::sym("eps7")).unwrap();
        assert_eq!(t.map("x"), &p("x + eps7*t"));
        assert_eq!(t.map("f"), &p("f + eps7*u"));
        assert_eq!(t.map("g"), &p("g"));
    }

    #[test]
    fn dilation_flow() {
        let y4 = &equivalence_fields()[3];
        let t = exponentiate(y4, &Expr::sym("eps4")).unwrap();
        assert_eq!(t.map("t"), &p("t*exp(eps4)"));
        assert_eq!(t.map("phi"), &p("phi*exp(-eps4)"));
    }

    #[test]
    fn zero_parameter_is_identity() {
        let y1 = &equivalence_fields()[0];
        assert_eq!(
            exponentiate(y1, &Expr::zero()).unwrap(),
            FiniteTransformation::identity()
        );
    }

    #[test]
    fn mixed_flow_solves_triangular_system() {
        // t∂t + ∂t: t(ε) = (t + 1) e^ε - 1
        let v = VectorField::from_terms(&[("t", p("t + 1"))]);
        let t = exponentiate(&v, &Expr::sym("eps")).unwrap();
        assert_eq!(t.map("t"), &p("(t + 1)*exp(eps) - 1"));
    }

    #[test]
    fn symbolic_group_matches_closed_form() {
        let t = FiniteTransformation::symbolic();
        assert_eq!(t.map("t"), &p("(t + eps1)*exp(eps4)"));
        assert_eq!(t.map("x"), &p("(x + eps7*t + eps2)*exp(eps5)"));
        assert_eq!(
            t.map("f"),
            &p("(f + eps7*u + eps9)*exp(-eps4 + eps5 + eps6)")
        );
        assert_eq!(
            t.map("phi"),
            &p("(phi - eps8*u + eps10)*exp(-eps4 + 2*eps5 + eps6)")
        );
    }

    #[test]
    fn identity_preserves_class() {
        let m = ClassMember::opaque();
        let r = verify_class_preservation(&FiniteTransformation::identity(), &m).unwrap();
        assert!(r.is_zero(), "{r}");
    }
}
