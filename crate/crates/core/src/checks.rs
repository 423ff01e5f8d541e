//! Seeded randomized property suites over the algebra and the expression
//! core.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equivalence::{equivalence_basis, projected_basis};
use crate::expr::{Expr, Q};
use crate::lie::adjoint::{adjoint_operator, apply};
use crate::lie::optimal::{normalize_element, Representative};
use crate::lie::{AlgebraBasis, VectorField};

/// Cases per suite.
pub const DEFAULT_CASES: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// First counterexample, if any.
    pub example: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn run(
    name: &'static str,
    cases: usize,
    mut check: impl FnMut(usize) -> Result<(), String>,
) -> PropertyOutcome {
    let mut failures = 0;
    let mut example = None;
    for i in 0..cases {
        if let Err(e) = check(i) {
            failures += 1;
            example.get_or_insert(e);
        }
    }
    PropertyOutcome {
        name,
        cases,
        failures,
        example,
    }
}

fn small_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(
        rng.gen_range(-4i64..=4).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

fn random_coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                small_q(rng)
            } else {
                Q::from_integer(0.into())
            }
        })
        .collect()
}

fn random_element(rng: &mut ChaCha8Rng, basis: &AlgebraBasis) -> VectorField {
    basis.combine_q(&random_coords(rng, basis.len()))
}

fn to_exprs(v: &[Q]) -> Vec<Expr> {
    v.iter().cloned().map(Expr::from_q).collect()
}

/// `[U,[V,W]] + [V,[W,U]] + [W,[U,V]] = 0` in the equivalence algebra.
pub fn jacobi(seed: u64, cases: usize) -> PropertyOutcome {
    let basis = equivalence_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run("jacobi identity", cases, |_| {
        let (u, v, w) = (
            random_element(&mut rng, &basis),
            random_element(&mut rng, &basis),
            random_element(&mut rng, &basis),
        );
        let s =
            &(&u.bracket(&v.bracket(&w)) + &v.bracket(&w.bracket(&u))) + &w.bracket(&u.bracket(&v));
        if s.is_zero() {
            Ok(())
        } else {
            Err(format!("U = {u}, V = {v}, W = {w}: {s}"))
        }
    })
}

/// `Ad(exp(εZ_i))[W1, W2] = [Ad W1, Ad W2]`, symbolically in `ε`.
pub fn ad_automorphism(seed: u64, cases: usize) -> PropertyOutcome {
    let basis = projected_basis();
    let eps = Expr::sym("eps");
    let ops: Vec<Vec<Vec<Expr>>> = (0..basis.len())
        .map(|i| {
            adjoint_operator(basis.field(i), &eps, &basis)
                .expect("projected basis closes")
                .0
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run("ad automorphism", cases, |_| {
        let i = rng.gen_range(0..basis.len());
        let w1 = to_exprs(&random_coords(&mut rng, basis.len()));
        let w2 = to_exprs(&random_coords(&mut rng, basis.len()));
        let bracket = basis.combine(&w1).bracket(&basis.combine(&w2));
        let lhs = apply(
            &ops[i],
            &basis.coordinates(&bracket).map_err(|e| e.to_string())?,
        );
        let a1 = basis.combine(&apply(&ops[i], &w1));
        let a2 = basis.combine(&apply(&ops[i], &w2));
        let rhs = basis
            .coordinates(&a1.bracket(&a2))
            .map_err(|e| e.to_string())?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("Z{} on {:?}, {:?}", i + 1, w1, w2))
        }
    })
}

/// `Ad(exp(ε1 V)) Ad(exp(ε2 V)) = Ad(exp((ε1 + ε2) V))` for random `V`.
pub fn ad_group_law(seed: u64, cases: usize) -> PropertyOutcome {
    let basis = projected_basis();
    let (e1, e2) = (Expr::sym("eps1"), Expr::sym("eps2"));
    let sum = &e1 + &e2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run("ad group law", cases, |_| {
        // single generators keep the closure exact; mixed ones add variety
        let v = if rng.gen_bool(0.5) {
            basis.field(rng.gen_range(0..basis.len())).clone()
        } else {
            let mut c = vec![Q::from_integer(0.into()); basis.len()];
            let picks: Vec<usize> = (0..basis.len()).collect();
            for &k in picks.choose_multiple(&mut rng, 2) {
                c[k] = small_q(&mut rng);
            }
            basis.combine_q(&c)
        };
        if v.is_zero() {
            return Ok(());
        }
        let w = to_exprs(&random_coords(&mut rng, basis.len()));
        let op = |e: &Expr| adjoint_operator(&v, e, &basis).map_err(|err| err.to_string());
        let (o1, c1) = op(&e1)?;
        let (o2, _) = op(&e2)?;
        let (o12, _) = op(&sum)?;
        if c1 == crate::lie::Closure::Truncated {
            return Ok(());
        }
        let lhs = apply(&o1, &apply(&o2, &w));
        let rhs = apply(&o12, &w);
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("V = {v}, W = {w:?}"))
        }
    })
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    const LEAVES: [&str; 6] = ["t", "x", "u", "u_x", "c1", "h"];
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.7) {
            crate::expr::parse(LEAVES.choose(rng).expect("nonempty")).expect("leaf parses")
        } else {
            Expr::from_q(small_q(rng))
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => &a + &random_expr(rng, depth - 1),
        1 | 2 => &a * &random_expr(rng, depth - 1),
        3 => {
            let b = random_expr(rng, depth - 1);
            a.try_div(&b).unwrap_or(a)
        }
        4 => a.exp(),
        _ => crate::expr::parse(LEAVES.choose(rng).expect("nonempty"))
            .expect("leaf parses")
            .log()
            .unwrap_or(a),
    }
}

/// `diff(a*b, v) = diff(a, v)*b + a*diff(b, v)`.
pub fn leibniz(seed: u64, cases: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ["t", "x", "u", "h"];
    run("leibniz rule", cases, |_| {
        let a = random_expr(&mut rng, 3);
        let b = random_expr(&mut rng, 3);
        let name = *vars.choose(&mut rng).expect("nonempty");
        let leaf = crate::expr::parse(name).expect("leaf parses");
        let v = leaf.as_atom().expect("leaf is an atom");
        let lhs = (&a * &b).diff(v);
        let rhs = &(&a.diff(v) * &b) + &(&a * &b.diff(v));
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("a = {a}, b = {b}, v = {name}"))
        }
    })
}

/// `normalize(normalize(e)) = normalize(e)` for random elements.
pub fn normalize_idempotence(seed: u64, cases: usize, reps: &[Representative]) -> PropertyOutcome {
    let basis = projected_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run("normalize idempotence", cases, |_| {
        let mut c = random_coords(&mut rng, basis.len());
        if c.iter().all(|q| *q == Q::from_integer(0.into())) {
            c[rng.gen_range(0..basis.len())] = Q::from_integer(1.into());
        }
        let first = normalize_element(&c, &basis, reps);
        let coords: Vec<Q> = first
            .coords
            .iter()
            .map(|s| crate::expr::parse(s).ok().and_then(|e| e.as_rational()))
            .collect::<Option<_>>()
            .ok_or("non-rational normalized coordinates")?;
        let second = normalize_element(&coords, &basis, reps);
        if first.label == second.label
            && first.coords == second.coords
            && first.params == second.params
        {
            Ok(())
        } else {
            Err(format!(
                "{:?}: {} then {}",
                c.iter().map(ToString::to_string).collect::<Vec<_>>(),
                first.label_or_unresolved(),
                second.label_or_unresolved()
            ))
        }
    })
}

/// All five suites with the same seed.
pub fn all(seed: u64, cases: usize, reps: &[Representative]) -> Vec<PropertyOutcome> {
    vec![
        jacobi(seed, cases),
        ad_automorphism(seed, cases),
        ad_group_law(seed, cases),
        leibniz(seed, cases),
        normalize_idempotence(seed, cases, reps),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_runs_pass() {
        assert!(jacobi(1, 10).passed());
        assert!(ad_automorphism(1, 10).passed());
        assert!(ad_group_law(1, 10).passed());
        assert!(leibniz(1, 20).passed());
    }

    #[test]
    fn runs_are_reproducible() {
        let a = leibniz(7, 5);
        let b = leibniz(7, 5);
        assert_eq!((a.failures, a.example), (b.failures, b.example));
    }
}
