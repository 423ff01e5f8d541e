//! Finite-dimensional Lie algebras of vector fields.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::field::{VectorField, COORDINATES};
use super::linalg::{self, QMatrix};
use super::LieError;
use crate::expr::{parse_with, Atom, Expr, Format, Q};

type Key = (usize, Vec<u32>);

/// Coefficients of a field with respect to monomials in the coordinates.
fn features(v: &VectorField) -> Result<BTreeMap<Key, Expr>, LieError> {
    let vars: Vec<Atom> = COORDINATES.iter().map(|c| Atom::sym(c)).collect();
    let mut out = BTreeMap::new();
    for (i, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (exps, k) in c.coefficients(&vars)? {
            out.insert((i, exps), k);
        }
    }
    Ok(out)
}

/// An ordered, labelled basis whose span is closed under the bracket.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    labels: Vec<String>,
    fields: Vec<VectorField>,
    /// Feature keys chosen so that the basis restricted to them is invertible.
    pivot_keys: Vec<Key>,
    pivot_inverse: QMatrix,
}

/// Structure constants: `table[i][j]` holds the coordinates of `[Z_i, Z_j]`.
pub type CommutatorTable = Vec<Vec<Vec<Q>>>;

impl AlgebraBasis {
    /// Builds the basis and checks linear independence and closure.
    pub fn new(labels: Vec<String>, fields: Vec<VectorField>) -> Result<Self, LieError> {
        let b = AlgebraBasis::unchecked(labels, fields)?;
        b.commutator_table()?;
        Ok(b)
    }

    /// Builds the basis checking linear independence only.
    pub fn unchecked(labels: Vec<String>, fields: Vec<VectorField>) -> Result<Self, LieError> {
        assert_eq!(labels.len(), fields.len(), "one label per field");
        let feats: Vec<BTreeMap<Key, Expr>> =
            fields.iter().map(features).collect::<Result<_, _>>()?;
        let mut keys: Vec<Key> = feats.iter().flat_map(|f| f.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        // rows = keys, columns = basis elements
        let mut rows: Vec<Vec<Q>> = Vec::with_capacity(keys.len());
        for k in &keys {
            let mut row = Vec::with_capacity(fields.len());
            for (i, f) in feats.iter().enumerate() {
                let v = f.get(k).cloned().unwrap_or_else(Expr::zero);
                let q = v
                    .as_rational()
                    .ok_or_else(|| LieError::NonRational(labels[i].clone()))?;
                row.push(q);
            }
            rows.push(row);
        }
        // choose independent rows through elimination on the transpose
        let mut t = linalg::transpose(&rows);
        let pivots = linalg::rref(&mut t);
        if pivots.len() < fields.len() {
            return Err(LieError::Dependent);
        }
        let sub: QMatrix = pivots.iter().map(|&r| rows[r].clone()).collect();
        let pivot_inverse = linalg::inverse(&sub).ok_or(LieError::Dependent)?;
        let pivot_keys = pivots.into_iter().map(|r| keys[r].clone()).collect();
        Ok(AlgebraBasis {
            labels,
            fields,
            pivot_keys,
            pivot_inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &VectorField {
        &self.fields[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `Σ c_i Z_i`.
    pub fn combine(&self, coeffs: &[Expr]) -> VectorField {
        let mut out = VectorField::zero();
        for (c, f) in coeffs.iter().zip(&self.fields) {
            if !c.is_zero() {
                out = &out + &f.scale(c);
            }
        }
        out
    }

    pub fn combine_q(&self, coeffs: &[Q]) -> VectorField {
        let c: Vec<Expr> = coeffs.iter().cloned().map(Expr::from_q).collect();
        self.combine(&c)
    }

    /// Coordinates of `v` in the basis (they may depend on parameters).
    pub fn coordinates(&self, v: &VectorField) -> Result<Vec<Expr>, LieError> {
        let f = features(v)?;
        let rhs: Vec<Expr> = self
            .pivot_keys
            .iter()
            .map(|k| f.get(k).cloned().unwrap_or_else(Expr::zero))
            .collect();
        let coords: Vec<Expr> = self
            .pivot_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .filter(|(q, _)| !q.is_zero())
                    .map(|(q, e)| &Expr::from_q(q.clone()) * e)
                    .sum()
            })
            .collect();
        if !(&self.combine(&coords) - v).is_zero() {
            return Err(LieError::NotInSpan(v.to_string()));
        }
        Ok(coords)
    }

    /// Rational coordinates of `v`.
    pub fn coordinates_q(&self, v: &VectorField) -> Result<Vec<Q>, LieError> {
        self.coordinates(v)?
            .into_iter()
            .map(|c| {
                c.as_rational()
                    .ok_or_else(|| LieError::NonRational(v.to_string()))
            })
            .collect()
    }

    /// All `n²` brackets expanded in the basis.
    #[allow(clippy::needless_range_loop)]
    pub fn commutator_table(&self) -> Result<CommutatorTable, LieError> {
        let n = self.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let b = self.fields[i].bracket(&self.fields[j]);
                table[i][j] = self.coordinates_q(&b).map_err(|_| LieError::NotClosed {
                    left: self.labels[i].clone(),
                    right: self.labels[j].clone(),
                })?;
            }
        }
        Ok(table)
    }

    /// Renders `Σ c_i Z_i`; `lead` puts one index first, as in the tables.
    pub fn format_combination(
        &self,
        coeffs: &[Expr],
        lead: Option<usize>,
        format: Format,
    ) -> String {
        format_combination(&self.labels, coeffs, lead, format)
    }

    /// Parses a combination such as `Z4 - eps*Z1` written with the labels.
    pub fn parse_combination(&self, text: &str) -> Result<Vec<Expr>, LieError> {
        let names: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let e = parse_with(text, &names)?;
        let atoms: Vec<Atom> = names.iter().map(|n| Atom::sym(n)).collect();
        let mut out = vec![Expr::zero(); names.len()];
        for (exps, c) in e.coefficients(&atoms)? {
            match exps.iter().position(|k| *k == 1) {
                Some(i) if exps.iter().sum::<u32>() == 1 => out[i] = c,
                _ => return Err(LieError::NotInSpan(text.to_string())),
            }
        }
        Ok(out)
    }
}

pub fn format_combination(
    labels: &[String],
    coeffs: &[Expr],
    lead: Option<usize>,
    format: Format,
) -> String {
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    if let Some(l) = lead {
        order.retain(|&i| i != l);
        order.insert(0, l);
    }
    let mut out = String::new();
    for i in order {
        let c = &coeffs[i];
        if c.is_zero() {
            continue;
        }
        let label = match format {
            Format::Latex => match labels[i].strip_prefix('Z').or(labels[i].strip_prefix('Y')) {
                Some(n) => format!("{}_{{{n}}}", &labels[i][..1]),
                None => labels[i].clone(),
            },
            _ => labels[i].clone(),
        };
        let (neg, mag) = if c.leading_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let body = if mag.is_one() {
            label
        } else {
            let s = mag.to_string_as(format);
            match (format, mag.is_sum() || !mag.is_polynomial()) {
                (Format::Latex, true) => format!("\\left({s}\\right) {label}"),
                (Format::Latex, false) => format!("{s} {label}"),
                (_, true) => format!("({s})*{label}"),
                (_, false) => format!("{s}*{label}"),
            }
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(if format == Format::Latex { "-" } else { " - " }),
            (false, false) => out.push_str(if format == Format::Latex { "+" } else { " + " }),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_translations() {
        let b = AlgebraBasis::new(
            vec!["X1".into(), "X2".into()],
            vec![VectorField::partial("t"), VectorField::partial("x")],
        )
        .unwrap();
        let t = b.commutator_table().unwrap();
        assert!(t.iter().flatten().flatten().all(Zero::is_zero));
    }

    #[test]
    fn dependent_fields_rejected() {
        let r = AlgebraBasis::unchecked(
            vec!["A".into(), "B".into()],
            vec![
                VectorField::partial("t"),
                VectorField::partial("t").scale(&Expr::int(2)),
            ],
        );
        assert!(matches!(r, Err(LieError::Dependent)));
    }

    #[test]
    fn combination_text_roundtrip() {
        let b = AlgebraBasis::unchecked(
            vec!["Z1".into(), "Z2".into()],
            vec![VectorField::partial("u"), VectorField::partial("f")],
        )
        .unwrap();
        let c = vec![crate::expr::parse("-eps").unwrap(), Expr::one()];
        let s = b.format_combination(&c, Some(1), Format::Plain);
        assert_eq!(s, "Z2 - eps*Z1");
        assert_eq!(b.parse_combination(&s).unwrap(), c);
    }
}
