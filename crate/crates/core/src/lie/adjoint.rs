//! Adjoint representation: ad-matrices and the closed-form adjoint action
//! `Ad(exp(εV))W = W - ε[V,W] + ε²/2 [V,[V,W]] - …`.

use num_traits::{One, Zero};

use super::algebra::AlgebraBasis;
use super::field::VectorField;
use super::linalg::{self, QMatrix};
use super::LieError;
use crate::expr::{Expr, Q};

/// Order of the fallback truncated series.
pub const SERIES_ORDER: usize = 8;

/// Matrix of `ad V`: `m[j][i]` is the coefficient of `Z_i` in `[V, Z_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdMatrix {
    pub m: QMatrix,
}

impl AdMatrix {
    /// The linear map on coordinate columns, `w ↦ coords([V, Σ w_j Z_j])`.
    pub fn operator(&self) -> QMatrix {
        linalg::transpose(&self.m)
    }

    pub fn is_nilpotent(&self) -> bool {
        nilpotency_index(&self.m).is_some()
    }

    pub fn is_diagonal(&self) -> bool {
        linalg::is_diagonal(&self.m)
    }
}

pub fn ad_matrix(v: &VectorField, basis: &AlgebraBasis) -> Result<AdMatrix, LieError> {
    basis.coordinates(v)?;
    let m = basis
        .fields()
        .iter()
        .map(|z| basis.coordinates_q(&v.bracket(z)))
        .collect::<Result<_, _>>()?;
    Ok(AdMatrix { m })
}

/// Smallest `k` with `N^k = 0`.
fn nilpotency_index(n: &QMatrix) -> Option<usize> {
    let size = n.len();
    let mut p = linalg::identity(size);
    for k in 1..=size.max(1) {
        p = linalg::mat_mul(&p, n);
        if linalg::is_zero_matrix(&p) {
            return Some(k);
        }
    }
    None
}

/// How the exponential was summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Commuting diagonal plus nilpotent split.
    DiagonalNilpotent,
    /// Diagonalizable with rational eigenvalues (spectral projectors).
    Spectral,
    /// Truncated at [`SERIES_ORDER`]; the result is not exact.
    Truncated,
}

fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::one(), |acc, i| acc * Q::from_integer(i.into()))
}

fn q_to_expr(m: &QMatrix) -> Vec<Vec<Expr>> {
    m.iter()
        .map(|r| r.iter().cloned().map(Expr::from_q).collect())
        .collect()
}

fn add_scaled(acc: &mut [Vec<Expr>], m: &QMatrix, k: &Expr) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (a, q) in ra.iter_mut().zip(rm) {
            if !q.is_zero() {
                *a = &*a + &(&Expr::from_q(q.clone()) * k);
            }
        }
    }
}

/// `exp(ε A)` as a matrix of expressions in `ε`.
pub fn exp_matrix(a: &QMatrix, eps: &Expr) -> (Vec<Vec<Expr>>, Closure) {
    let n = a.len();
    let d: QMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { a[i][i].clone() } else { Q::zero() })
                .collect()
        })
        .collect();
    let nil = linalg::mat_sub(a, &d);
    if let Some(k) = nilpotency_index(&nil) {
        if linalg::mat_mul(&d, &nil) == linalg::mat_mul(&nil, &d) {
            // exp(εD) exp(εN)
            let mut series = vec![vec![Expr::zero(); n]; n];
            let mut p = linalg::identity(n);
            for j in 0..k {
                let coeff =
                    &eps.pow_i(j as i64).expect("nonnegative power") / &Expr::from_q(factorial(j));
                add_scaled(&mut series, &p, &coeff);
                p = linalg::mat_mul(&p, &nil);
            }
            for (i, row) in series.iter_mut().enumerate() {
                let e = (eps * &Expr::from_q(d[i][i].clone())).exp();
                for x in row.iter_mut() {
                    *x = &*x * &e;
                }
            }
            return (series, Closure::DiagonalNilpotent);
        }
    }
    if let Some(out) = spectral_exp(a, eps) {
        return (out, Closure::Spectral);
    }
    let mut series = q_to_expr(&linalg::identity(n));
    let mut p = linalg::identity(n);
    for j in 1..=SERIES_ORDER {
        p = linalg::mat_mul(&p, a);
        let coeff = &eps.pow_i(j as i64).expect("nonnegative power") / &Expr::from_q(factorial(j));
        add_scaled(&mut series, &p, &coeff);
    }
    (series, Closure::Truncated)
}

fn spectral_exp(a: &QMatrix, eps: &Expr) -> Option<Vec<Vec<Expr>>> {
    let n = a.len();
    let mut roots = linalg::rational_roots(&linalg::char_poly(a))?;
    roots.sort();
    roots.dedup();
    let shifted = |l: &Q| {
        let mut m = a.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= l;
        }
        m
    };
    // diagonalizable iff the product over distinct eigenvalues vanishes
    let mut prod = linalg::identity(n);
    for l in &roots {
        prod = linalg::mat_mul(&prod, &shifted(l));
    }
    if !linalg::is_zero_matrix(&prod) {
        return None;
    }
    let mut out = vec![vec![Expr::zero(); n]; n];
    for (k, lk) in roots.iter().enumerate() {
        let mut proj = linalg::identity(n);
        for (j, lj) in roots.iter().enumerate() {
            if j != k {
                let factor = linalg::mat_scale(&shifted(lj), &(lk - lj).recip());
                proj = linalg::mat_mul(&proj, &factor);
            }
        }
        add_scaled(&mut out, &proj, &(eps * &Expr::from_q(lk.clone())).exp());
    }
    Some(out)
}

/// Result of the adjoint action.
#[derive(Clone, Debug)]
pub struct AdjointResult {
    pub coords: Vec<Expr>,
    pub field: VectorField,
    pub closure: Closure,
}

impl AdjointResult {
    pub fn truncated(&self) -> bool {
        self.closure == Closure::Truncated
    }
}

/// Matrix of `Ad(exp(εV))` acting on coordinate columns.
pub fn adjoint_operator(
    v: &VectorField,
    eps: &Expr,
    basis: &AlgebraBasis,
) -> Result<(Vec<Vec<Expr>>, Closure), LieError> {
    let ad = ad_matrix(v, basis)?;
    let a = linalg::mat_scale(&ad.operator(), &-Q::one());
    Ok(exp_matrix(&a, eps))
}

/// `Ad(exp(εV))W`.
pub fn adjoint(
    v: &VectorField,
    w: &VectorField,
    eps: &Expr,
    basis: &AlgebraBasis,
) -> Result<AdjointResult, LieError> {
    let (op, closure) = adjoint_operator(v, eps, basis)?;
    let wc = basis.coordinates(w)?;
    let coords = apply(&op, &wc);
    Ok(AdjointResult {
        field: basis.combine(&coords),
        coords,
        closure,
    })
}

pub fn apply(op: &[Vec<Expr>], w: &[Expr]) -> Vec<Expr> {
    op.iter()
        .map(|row| {
            row.iter()
                .zip(w)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

/// `table[i][j] = Ad(exp(ε Z_i)) Z_j`.
pub fn adjoint_table(
    basis: &AlgebraBasis,
    eps: &Expr,
) -> Result<Vec<Vec<AdjointResult>>, LieError> {
    let n = basis.len();
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let (op, closure) = adjoint_operator(basis.field(i), eps, basis)?;
        let row = (0..n)
            .map(|j| {
                let coords: Vec<Expr> = op.iter().map(|r| r[j].clone()).collect();
                AdjointResult {
                    field: basis.combine(&coords),
                    coords,
                    closure,
                }
            })
            .collect();
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn nilpotent_exponential_is_finite() {
        let a = vec![vec![q(0), q(1)], vec![q(0), q(0)]];
        let eps = Expr::sym("eps");
        let (m, c) = exp_matrix(&a, &eps);
        assert_eq!(c, Closure::DiagonalNilpotent);
        assert_eq!(m[0][1], eps);
        assert!(m[1][0].is_zero());
    }

    #[test]
    fn spectral_exponential() {
        // eigenvalues 1 and 2, not diagonal
        let a = vec![vec![q(1), q(1)], vec![q(0), q(2)]];
        let eps = Expr::sym("eps");
        let (m, c) = exp_matrix(&a, &eps);
        assert_eq!(c, Closure::Spectral);
        let e1 = eps.exp();
        let e2 = (&eps * &Expr::int(2)).exp();
        assert_eq!(m[0][0], e1);
        assert_eq!(m[0][1], &e2 - &e1);
        assert_eq!(m[1][1], e2);
    }

    #[test]
    fn rotation_falls_back_to_series() {
        let a = vec![vec![q(0), q(-1)], vec![q(1), q(0)]];
        let (_, c) = exp_matrix(&a, &Expr::sym("eps"));
        assert_eq!(c, Closure::Truncated);
    }
}
