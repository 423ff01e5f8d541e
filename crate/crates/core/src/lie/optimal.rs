//! Best-effort normalization of an algebra element towards a stored list of
//! orbit representatives.
//!
//! Unipotent adjoint maps with a symbolically solved parameter kill
//! coefficients greedily. The remaining vector is matched against each
//! representative up to an overall nonzero factor and the torus generated by
//! the diagonal ad-matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::adjoint::ad_matrix;
use super::algebra::AlgebraBasis;
use super::linalg::{self, QMatrix};
use crate::expr::{Atom, Expr, Q};

/// A stored representative: coefficients in the basis, possibly depending on
/// the parameters `a, b, c, d, m`, and expressions that must not vanish.
#[derive(Clone, Debug)]
pub struct Representative {
    pub label: String,
    pub coeffs: Vec<Expr>,
    pub nonzero: Vec<Expr>,
}

impl Representative {
    pub fn params(&self) -> BTreeSet<String> {
        self.coeffs
            .iter()
            .flat_map(|c| c.symbols())
            .map(|s| s.name().to_string())
            .collect()
    }

    /// Coefficients with the parameters replaced by values.
    pub fn instantiate(&self, values: &BTreeMap<String, Q>) -> Vec<Expr> {
        let mut b = crate::expr::Binding::new();
        for (k, v) in values {
            b.insert(Atom::sym(k), Expr::from_q(v.clone()));
        }
        self.coeffs.iter().map(|c| c.substitute(&b)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Move {
    /// `Ad(exp(ε Z_i))` with the chosen `ε`.
    Adjoint {
        generator: String,
        eps: String,
        coords: Vec<String>,
    },
    /// Overall factor and torus rescaling used to reach the representative.
    Scale {
        factor: String,
        torus: Vec<(String, String)>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Normalized {
    /// Matched representative, `None` for UNRESOLVED.
    pub label: Option<String>,
    pub params: BTreeMap<String, String>,
    /// Representative constraints that the matched parameters violate.
    pub violations: Vec<String>,
    pub coords: Vec<String>,
    pub transcript: Vec<Move>,
}

impl Normalized {
    pub fn label_or_unresolved(&self) -> &str {
        self.label.as_deref().unwrap_or("UNRESOLVED")
    }
}

fn q_str(v: &[Q]) -> Vec<String> {
    v.iter()
        .map(|q| Expr::from_q(q.clone()).to_string())
        .collect()
}

fn support(v: &[Q]) -> usize {
    v.iter().filter(|q| !q.is_zero()).count()
}

fn mat_vec(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Operator of `-ad Z_i` on coordinate columns.
fn minus_ad(basis: &AlgebraBasis, i: usize) -> QMatrix {
    let ad = ad_matrix(basis.field(i), basis).expect("basis element in span");
    linalg::mat_scale(&ad.operator(), &-Q::one())
}

fn nilpotent_powers(n: &QMatrix) -> Option<Vec<QMatrix>> {
    let mut powers = vec![linalg::identity(n.len())];
    for _ in 0..=n.len() {
        let next = linalg::mat_mul(powers.last().expect("nonempty"), n);
        if linalg::is_zero_matrix(&next) {
            return Some(powers);
        }
        powers.push(next);
    }
    None
}

/// Tries every unipotent `Ad(exp(ε Z_i))` that kills one coordinate with a
/// linear equation in `ε`; returns the move with the smallest support.
fn best_kill(
    basis: &AlgebraBasis,
    v: &[Q],
    gens: &[(usize, Vec<QMatrix>)],
) -> Option<(usize, Q, Vec<Q>)> {
    let mut best: Option<(usize, Q, Vec<Q>)> = None;
    for (i, powers) in gens {
        let terms: Vec<Vec<Q>> = powers.iter().map(|p| mat_vec(p, v)).collect();
        for k in 0..v.len() {
            if v[k].is_zero() {
                continue;
            }
            if terms.len() < 2
                || terms[1][k].is_zero()
                || terms[2..].iter().any(|t| !t[k].is_zero())
            {
                continue;
            }
            let eps = -&v[k] / &terms[1][k];
            let mut out = vec![Q::zero(); v.len()];
            let mut pow = Q::one();
            let mut fact = Q::one();
            for (j, t) in terms.iter().enumerate() {
                if j > 0 {
                    pow *= &eps;
                    fact *= Q::from_integer(j.into());
                }
                for (o, x) in out.iter_mut().zip(t) {
                    *o += x * &pow / &fact;
                }
            }
            if support(&out) >= support(v) {
                continue;
            }
            if best
                .as_ref()
                .is_none_or(|(_, _, b)| support(&out) < support(b))
            {
                best = Some((*i, eps, out));
            }
        }
    }
    let _ = basis;
    best
}

/// Prime factorization exponents of `|q|`; `None` if a factor is too large.
fn prime_exponents(q: &Q) -> Option<BTreeMap<u64, i64>> {
    let mut out = BTreeMap::new();
    for (n, sign) in [(q.numer().abs(), 1i64), (q.denom().abs(), -1i64)] {
        let mut n: BigInt = n;
        let mut p = 2u64;
        while n > BigInt::one() {
            if p > 1_000_000 {
                return None;
            }
            let bp = BigInt::from(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
                *out.entry(p).or_insert(0) += sign;
            }
            p += 1;
        }
    }
    out.retain(|_, e| *e != 0);
    Some(out)
}

struct Torus {
    gens: Vec<usize>,
    /// `weights[g][k]`: exponent rate of coordinate `k` under generator `g`.
    weights: Vec<Vec<Q>>,
}

/// `(κ, torus log-parameters, scaled vector)`.
type Scaling = (Q, Vec<BTreeMap<u64, Q>>, Vec<Q>);

/// Scaling that sends the coordinates in `fixed` to the target values.
/// Returns the factor `κ`, the torus log-parameters and the scaled vector.
fn solve_scaling(torus: &Torus, v: &[Q], targets: &[(usize, Q)]) -> Option<Scaling> {
    let sign = {
        let mut s = None;
        for (k, r) in targets {
            let this = (r / &v[*k]).is_positive();
            if s.is_some_and(|p| p != this) {
                return None;
            }
            s = Some(this);
        }
        s.unwrap_or(true)
    };
    let mut rhs: Vec<BTreeMap<u64, i64>> = Vec::new();
    let mut primes = BTreeSet::new();
    for (k, r) in targets {
        let e = prime_exponents(&(r / &v[*k]))?;
        primes.extend(e.keys().copied());
        rhs.push(e);
    }
    let ng = torus.gens.len();
    // try without the overall factor first, then with it
    for with_kappa in [false, true] {
        let cols = ng + usize::from(with_kappa);
        let a: Vec<Vec<Expr>> = targets
            .iter()
            .map(|(k, _)| {
                let mut row: Vec<Expr> = (0..ng)
                    .map(|g| Expr::from_q(torus.weights[g][*k].clone()))
                    .collect();
                if with_kappa {
                    row.push(Expr::one());
                }
                row
            })
            .collect();
        let mut sol: Vec<BTreeMap<u64, Q>> = vec![BTreeMap::new(); cols];
        let mut ok = true;
        for p in &primes {
            let b: Vec<Expr> = rhs
                .iter()
                .map(|e| Expr::int(e.get(p).copied().unwrap_or(0)))
                .collect();
            let Some(x) = linalg::solve_expr(&a, &b) else {
                ok = false;
                break;
            };
            for (c, xc) in x.iter().enumerate() {
                let q = xc.as_rational().expect("rational system");
                if !q.is_zero() {
                    sol[c].insert(*p, q);
                }
            }
        }
        if !ok {
            continue;
        }
        // kappa must be rational and the scaled vector too
        let mut kappa = if sign { Q::one() } else { -Q::one() };
        if with_kappa {
            for (p, e) in &sol[ng] {
                if !e.is_integer() {
                    ok = false;
                }
                kappa *= pow_q(*p, e.to_integer().to_i64().unwrap_or(0));
            }
        }
        let mut scaled = Vec::with_capacity(v.len());
        for (k, x) in v.iter().enumerate() {
            let mut val = x * &kappa;
            if !x.is_zero() {
                for p in &primes {
                    let e: Q = (0..ng)
                        .map(|g| {
                            sol[g].get(p).cloned().unwrap_or_else(Q::zero) * &torus.weights[g][k]
                        })
                        .sum();
                    if !e.is_integer() {
                        ok = false;
                        break;
                    }
                    val *= pow_q(*p, e.to_integer().to_i64().unwrap_or(0));
                }
            }
            scaled.push(val);
        }
        if ok {
            return Some((kappa, sol[..ng].to_vec(), scaled));
        }
    }
    None
}

fn pow_q(p: u64, e: i64) -> Q {
    let base = Q::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

fn try_match(
    rep: &Representative,
    torus: &Torus,
    v: &[Q],
) -> Option<(BTreeMap<String, Q>, Vec<String>, Move)> {
    let params: Vec<String> = rep.params().into_iter().collect();
    let mut targets = Vec::new();
    for (k, c) in rep.coeffs.iter().enumerate() {
        match c.as_rational() {
            Some(r) if r.is_zero() => {
                if !v[k].is_zero() {
                    return None;
                }
            }
            Some(r) => {
                if v[k].is_zero() {
                    return None;
                }
                targets.push((k, r));
            }
            None => {}
        }
    }
    let (kappa, logs, scaled) = solve_scaling(torus, v, &targets)?;
    // parameter coordinates: rep_k(params) = scaled_k, linear in the parameters
    let atoms: Vec<Atom> = params.iter().map(|p| Atom::sym(p)).collect();
    let zero_binding = atoms.iter().fold(crate::expr::Binding::new(), |b, a| {
        b.with(a.clone(), Expr::zero())
    });
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (k, c) in rep.coeffs.iter().enumerate() {
        if c.as_rational().is_some() {
            continue;
        }
        let row: Vec<Expr> = atoms.iter().map(|a| c.diff(a)).collect();
        if row.iter().any(|e| e.as_rational().is_none()) {
            return None;
        }
        rows.push(row);
        rhs.push(&Expr::from_q(scaled[k].clone()) - &c.substitute(&zero_binding));
    }
    let x = if rows.is_empty() {
        vec![Expr::zero(); atoms.len()]
    } else {
        linalg::solve_expr(&rows, &rhs)?
    };
    let values: BTreeMap<String, Q> = params
        .iter()
        .cloned()
        .zip(x.iter().map(|e| e.as_rational().unwrap_or_else(Q::zero)))
        .collect();
    if rep
        .instantiate(&values)
        .iter()
        .zip(&scaled)
        .any(|(a, b)| a != &Expr::from_q(b.clone()))
    {
        return None;
    }
    let mut b = crate::expr::Binding::new();
    for (k, q) in &values {
        b.insert(Atom::sym(k), Expr::from_q(q.clone()));
    }
    let violations = rep
        .nonzero
        .iter()
        .filter(|c| c.substitute(&b).is_zero())
        .map(|c| format!("{c} != 0"))
        .collect();
    let torus_desc = torus
        .gens
        .iter()
        .zip(&logs)
        .filter(|(_, l)| !l.is_empty())
        .map(|(g, l)| {
            let terms: Vec<String> = l
                .iter()
                .map(|(p, e)| format!("{}*log({p})", Expr::from_q(e.clone())))
                .collect();
            (g.to_string(), terms.join(" + "))
        })
        .collect();
    let mv = Move::Scale {
        factor: Expr::from_q(kappa).to_string(),
        torus: torus_desc,
    };
    Some((values, violations, mv))
}

/// Greedy adjoint normalization of `Σ coeffs_i Z_i` followed by matching.
pub fn normalize_element(
    coeffs: &[Q],
    basis: &AlgebraBasis,
    reps: &[Representative],
) -> Normalized {
    let n = basis.len();
    let mut gens = Vec::new();
    let mut torus = Torus {
        gens: Vec::new(),
        weights: Vec::new(),
    };
    for i in 0..n {
        let a = minus_ad(basis, i);
        if linalg::is_zero_matrix(&a) {
            continue;
        }
        if linalg::is_diagonal(&a) {
            torus
                .weights
                .push((0..n).map(|k| a[k][k].clone()).collect());
            torus.gens.push(i);
        } else if let Some(p) = nilpotent_powers(&a) {
            gens.push((i, p));
        }
    }
    let mut v = coeffs.to_vec();
    let mut transcript = Vec::new();
    for _ in 0..4 * n {
        let Some((i, eps, out)) = best_kill(basis, &v, &gens) else {
            break;
        };
        transcript.push(Move::Adjoint {
            generator: basis.labels()[i].clone(),
            eps: Expr::from_q(eps).to_string(),
            coords: q_str(&out),
        });
        v = out;
    }
    for rep in reps {
        if let Some((values, violations, mv)) = try_match(rep, &torus, &v) {
            let mut mv = mv;
            if let Move::Scale { torus: t, .. } = &mut mv {
                for entry in t.iter_mut() {
                    let idx: usize = entry.0.parse().expect("index");
                    entry.0 = basis.labels()[idx].clone();
                }
            }
            transcript.push(mv);
            return Normalized {
                label: Some(rep.label.clone()),
                params: values
                    .into_iter()
                    .map(|(k, q)| (k, Expr::from_q(q).to_string()))
                    .collect(),
                violations,
                coords: q_str(&v),
                transcript,
            };
        }
    }
    Normalized {
        label: None,
        params: BTreeMap::new(),
        violations: Vec::new(),
        coords: q_str(&v),
        transcript,
    }
}
