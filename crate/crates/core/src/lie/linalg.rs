//! Exact dense linear algebra over rationals and over expressions.

use num_traits::{One, Signed, Zero};

use crate::expr::{Expr, Q};

pub type QMatrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub fn zeros(n: usize) -> QMatrix {
    vec![vec![Q::zero(); n]; n]
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

pub fn mat_sub(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &QMatrix, k: &Q) -> QMatrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * k).collect())
        .collect()
}

pub fn transpose(a: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn is_zero_matrix(a: &QMatrix) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn is_diagonal(a: &QMatrix) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let k = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &k * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &k * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Solves `a x = b` over rational functions; free unknowns are set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve_expr(a: &[Vec<Expr>], b: &[Expr]) -> Option<Vec<Expr>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Expr>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| r.iter().cloned().chain([rhs.clone()]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().ok()?;
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&k * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Expr::zero(); cols];
    for (i, c) in pivots.into_iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Characteristic polynomial `det(λI - A)`, coefficients from `λ^0` up.
pub fn char_poly(a: &QMatrix) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = zeros(n);
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / Q::from_integer(k.into());
    }
    coeffs
}

fn eval_poly(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn deflate(p: &[Q], r: &Q) -> Vec<Q> {
    // synthetic division by (λ - r)
    let n = p.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &carry * r;
        out[k] = carry.clone();
    }
    out
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
        if d > BigInt::from(100_000) {
            break;
        }
    }
    out
}

/// Rational roots with multiplicity; `None` if some root is not rational.
pub fn rational_roots(p: &[Q]) -> Option<Vec<Q>> {
    use num_integer::Integer;
    let mut p: Vec<Q> = p.to_vec();
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Q::zero());
        p.remove(0);
    }
    'outer: while p.len() > 1 {
        let lcm = p
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> = p
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints.last().expect("nonempty").clone();
        let constant = ints[0].clone();
        for num in divisors(&constant) {
            for den in divisors(&lead) {
                for sign in [1, -1] {
                    let r = Q::new(&num * sign, den.clone());
                    if eval_poly(&p, &r).is_zero() {
                        roots.push(r.clone());
                        p = deflate(&p, &r);
                        continue 'outer;
                    }
                }
            }
        }
        return None;
    }
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn char_poly_and_roots() {
        let a = vec![vec![q(2), q(1)], vec![q(0), q(-3)]];
        let p = char_poly(&a);
        assert_eq!(p, vec![q(-6), q(1), q(1)]);
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![q(-3), q(2)]);
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_none());
    }

    #[test]
    fn rref_rank() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(rank(&m), 1);
    }
}
