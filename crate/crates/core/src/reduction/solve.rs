//! Closed-form solutions of first-order reduced equations.

use serde::Serialize;

use super::{ReducedODE, ReductionAnsatz, ReductionError, Result};
use crate::expr::{Atom, Expr, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionKind {
    Bernoulli,
    LinearFirstOrder,
    AbelImplicit,
    ExplicitPde,
}

impl SolutionKind {
    pub fn tag(self) -> &'static str {
        match self {
            SolutionKind::Bernoulli => "bernoulli",
            SolutionKind::LinearFirstOrder => "linear-first-order",
            SolutionKind::AbelImplicit => "abel-implicit",
            SolutionKind::ExplicitPde => "explicit-pde",
        }
    }
}

/// Either `dep = explicit` or `implicit = 0`.
#[derive(Clone, Debug)]
pub struct ClosedFormSolution {
    pub kind: SolutionKind,
    pub explicit: Option<Expr>,
    pub implicit: Option<Expr>,
    pub constants: Vec<String>,
    pub dep: String,
    pub var: String,
}

impl ClosedFormSolution {
    fn explicit(kind: SolutionKind, value: Expr) -> Self {
        ClosedFormSolution {
            kind,
            explicit: Some(value),
            implicit: None,
            constants: vec!["c0".into()],
            dep: "h".into(),
            var: "z".into(),
        }
    }

    pub fn describe(&self) -> String {
        match (&self.explicit, &self.implicit) {
            (Some(e), _) => format!("{} = {e}", self.dep),
            (None, Some(r)) => format!("{r} = 0"),
            (None, None) => String::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(ClosedFormSolution),
    Unsolved(String),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&ClosedFormSolution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Unsolved(_) => None,
        }
    }
}

fn z() -> Expr {
    Expr::sym("z")
}

fn c0() -> Expr {
    Expr::sym("c0")
}

fn free_of_z(e: &Expr) -> bool {
    !e.contains_sym("z")
}

/// Antiderivative in `z` of sums of `k z^n exp(a z + b)` with `k, a, b` free
/// of `z`; `None` outside that family.
pub fn integrate_z(e: &Expr) -> Option<Expr> {
    let mut acc = Expr::zero();
    for term in e.terms() {
        acc = &acc + &integrate_term(&term)?;
    }
    Some(acc)
}

fn integrate_term(term: &Expr) -> Option<Expr> {
    let (rest, arg) = match term.split_exp() {
        Some((rest, arg)) => (rest, arg),
        None => (term.clone(), Expr::zero()),
    };
    let a = arg.diff_sym("z");
    if !free_of_z(&a) {
        return None;
    }
    let zs = Atom::sym("z");
    let n = rest.numer().degree_in(&zs) as i64 - rest.denom().degree_in(&zs) as i64;
    let k = rest.try_div(&z().pow_i(n).ok()?).ok()?;
    if !free_of_z(&k) {
        return None;
    }
    let ex = arg.exp();
    if a.is_zero() {
        if n == -1 {
            return Some(&(&k * &ex) * &z().log().ok()?);
        }
        return Some(&(&k * &ex) * &(&z().pow_i(n + 1).ok()? / &Expr::int(n + 1)));
    }
    if n < 0 {
        return None;
    }
    // ∫ z^n e^{az} = e^{az} Σ_j (-1)^j n!/(n-j)! z^{n-j} / a^{j+1}
    let mut sum = Expr::zero();
    let mut falling = Q::from_integer(1.into());
    for j in 0..=n {
        let sign = if j % 2 == 0 {
            Expr::one()
        } else {
            Expr::int(-1)
        };
        let term = &(&sign * &Expr::from_q(falling.clone())) * &z().pow_i(n - j).ok()?;
        sum = &sum + &term.try_div(&a.pow_i(j + 1).ok()?).ok()?;
        falling *= Q::from_integer((n - j).into());
    }
    Some(&(&k * &ex) * &sum)
}

/// `h = e^{∫P}(∫Q e^{-∫P} + c0)` for `h' = P h + Q`.
fn solve_linear(p: &Expr, q: &Expr) -> Option<Expr> {
    let ip = integrate_z(p)?;
    let mu = ip.exp();
    let inner = integrate_z(&(q * &(-&ip).exp()))?;
    Some(&mu * &(&inner + &c0()))
}

/// Closed form for first-order equations that are linear, Bernoulli
/// `h' = p h + q h²` or separable cubic `h' = h(a h² + b h + c)`.
pub fn solve_closed_form(r: &ReducedODE) -> Result<SolveOutcome> {
    let unsolved = |why: &str| Ok(SolveOutcome::Unsolved(why.to_string()));
    if r.dep != "h" || r.var != "z" {
        return unsolved("only equations for h(z) are handled");
    }
    if r.order() != 1 {
        return unsolved(&format!("order {} equation", r.order()));
    }
    let h1 = Atom::prime("h", 1);
    let rhs = match r.lhs.solve_for(&h1) {
        Ok(v) => v,
        Err(_) => return unsolved("not solvable for h'"),
    };
    let h = Atom::sym("h");
    let Ok(coeffs) = rhs.coefficients(std::slice::from_ref(&h)) else {
        return unsolved("right-hand side is not polynomial in h");
    };
    let c = |k: u32| coeffs.get(&vec![k]).cloned().unwrap_or_else(Expr::zero);
    if coeffs.keys().any(|k| k[0] > 3) || (0..4).any(|k| c(k).contains(&h)) {
        return unsolved("right-hand side is not a cubic in h");
    }
    let degree = coeffs.keys().map(|k| k[0]).max().unwrap_or(0);
    match degree {
        0 | 1 => match solve_linear(&c(1), &c(0)) {
            Some(s) => Ok(SolveOutcome::Solved(ClosedFormSolution::explicit(
                SolutionKind::LinearFirstOrder,
                s,
            ))),
            None => unsolved("quadrature outside the supported family"),
        },
        2 if c(0).is_zero() => {
            let (p, q) = (c(1), c(2));
            if free_of_z(&p) && free_of_z(&q) {
                let s = if p.is_zero() {
                    (-&(&(&q * &z()) + &c0()).recip()?).clone()
                } else {
                    let e = (&p * &z()).exp();
                    (&p * &e).try_div(&(&(-&(&q * &e)) - &(&c0() * &p).exp()))?
                };
                return Ok(SolveOutcome::Solved(ClosedFormSolution::explicit(
                    SolutionKind::Bernoulli,
                    s,
                )));
            }
            // v = 1/h satisfies v' = -p v - q
            match solve_linear(&-&p, &-&q) {
                Some(v) => Ok(SolveOutcome::Solved(ClosedFormSolution::explicit(
                    SolutionKind::Bernoulli,
                    v.recip()?,
                ))),
                None => unsolved("quadrature outside the supported family"),
            }
        }
        3 if c(0).is_zero() => {
            let (a, b, cc) = (c(3), c(2), c(1));
            if !(free_of_z(&a) && free_of_z(&b) && free_of_z(&cc)) || cc.is_zero() {
                return unsolved("cubic with z-dependent or vanishing linear coefficient");
            }
            Ok(SolveOutcome::Solved(abel_relation(&a, &b, &cc)?))
        }
        _ => unsolved("not linear, Bernoulli or separable cubic"),
    }
}

/// Implicit solution of `h' = h(a h² + b h + c)`:
/// `log(-Q) - 2 log h + (2b/√Δ) atan((2ah + b)/√Δ) + 2cz - c0 = 0` with
/// `Q = a h² + b h + c`, `Δ = 4ac - b²`.
fn abel_relation(a: &Expr, b: &Expr, c: &Expr) -> Result<ClosedFormSolution> {
    let h = Expr::sym("h");
    let quad = &(&(a * &(&h * &h)) + &(b * &h)) + c;
    let delta = &(&Expr::int(4) * &(a * c)) - &(b * b);
    let root = delta.sqrt()?;
    let arc = (&(&Expr::int(2) * &(a * &h)) + b).try_div(&root)?.atan();
    let relation = &(&(&(-&quad).log()? - &(&Expr::int(2) * &h.log()?))
        + &(&(&Expr::int(2) * b).try_div(&root)? * &arc))
        + &(&(&(&Expr::int(2) * c) * &z()) - &c0());
    Ok(ClosedFormSolution {
        kind: SolutionKind::AbelImplicit,
        explicit: None,
        implicit: Some(relation),
        constants: vec!["c0".into()],
        dep: "h".into(),
        var: "z".into(),
    })
}

/// Maps an explicit `h(z)` back through the ansatz to `u(t, x)`.
pub fn undo_ansatz(sol: &ClosedFormSolution, a: &ReductionAnsatz) -> Result<ClosedFormSolution> {
    let h = sol
        .explicit
        .as_ref()
        .ok_or_else(|| ReductionError::Unsupported("implicit solutions cannot be lifted".into()))?;
    let hz = h.subs_sym("z", &a.z);
    let u = a.shape.subs_sym("h", &hz);
    Ok(ClosedFormSolution {
        kind: SolutionKind::ExplicitPde,
        explicit: Some(u),
        implicit: None,
        constants: sol.constants.clone(),
        dep: "u".into(),
        var: "t, x".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn integrates_laurent_and_exponential_terms() {
        assert_eq!(
            integrate_z(&p("c2*z + 1/z")).unwrap(),
            p("c2*z^2/2 + log(z)")
        );
        let f = integrate_z(&p("z*exp(2*z)")).unwrap();
        assert_eq!(f.diff_sym("z"), p("z*exp(2*z)"));
        assert!(integrate_z(&p("exp(z^2)")).is_none());
    }

    #[test]
    fn linear_first_order() {
        let out = solve_closed_form(&ReducedODE::new(p("h' - h"))).unwrap();
        assert_eq!(out.solution().unwrap().explicit, Some(p("c0*exp(z)")));
    }

    #[test]
    fn higher_order_is_unsolved() {
        let out = solve_closed_form(&ReducedODE::new(p("h'' + h"))).unwrap();
        assert!(matches!(out, SolveOutcome::Unsolved(_)));
    }
}
