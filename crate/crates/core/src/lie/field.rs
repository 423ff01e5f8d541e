//! First-order differential operators on the augmented space.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::expr::{Atom, Expr, Format};

/// Coordinates of the augmented space, in component order.
pub const COORDINATES: [&str; 9] = ["t", "x", "u", "f", "g", "alpha", "beta", "gamma", "phi"];

/// Index of the first arbitrary-element coordinate (`f`).
pub const FIBER_START: usize = 3;

pub fn coordinate_index(name: &str) -> Option<usize> {
    COORDINATES.iter().position(|c| *c == name)
}

/// `Σ coeff_i ∂/∂coord_i` over `(t, x, u, f, g, alpha, beta, gamma, phi)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    coeffs: [Expr; 9],
}

impl Default for VectorField {
    fn default() -> Self {
        VectorField::zero()
    }
}

impl VectorField {
    pub fn zero() -> Self {
        VectorField {
            coeffs: std::array::from_fn(|_| Expr::zero()),
        }
    }

    /// `∂/∂name`.
    pub fn partial(name: &str) -> Self {
        VectorField::from_terms(&[(name, Expr::one())])
    }

    /// Builds a field from `(coordinate, coefficient)` pairs; repeated
    /// coordinates add up.
    ///
    /// # Panics
    /// On a name outside [`COORDINATES`].
    pub fn from_terms(terms: &[(&str, Expr)]) -> Self {
        let mut v = VectorField::zero();
        for (name, c) in terms {
            let i = coordinate_index(name).unwrap_or_else(|| panic!("unknown coordinate {name}"));
            v.coeffs[i] = &v.coeffs[i] + c;
        }
        v
    }

    /// Parses `(coordinate, coefficient-text)` pairs.
    pub fn parse_terms(terms: &[(&str, &str)]) -> crate::expr::Result<Self> {
        let mut pairs = Vec::new();
        for (name, text) in terms {
            pairs.push((*name, crate::expr::parse(text)?));
        }
        Ok(VectorField::from_terms(&pairs))
    }

    pub fn coeff(&self, i: usize) -> &Expr {
        &self.coeffs[i]
    }

    pub fn component(&self, name: &str) -> &Expr {
        &self.coeffs[coordinate_index(name).expect("known coordinate")]
    }

    pub fn coeffs(&self) -> &[Expr; 9] {
        &self.coeffs
    }

    pub fn set(&mut self, name: &str, value: Expr) {
        self.coeffs[coordinate_index(name).expect("known coordinate")] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Expr::is_zero)
    }

    /// Applies the operator to a function of the augmented coordinates.
    pub fn apply(&self, e: &Expr) -> Expr {
        let mut acc = Expr::zero();
        for (name, c) in COORDINATES.iter().zip(&self.coeffs) {
            if !c.is_zero() {
                acc = &acc + &(c * &e.diff(&Atom::sym(name)));
            }
        }
        acc
    }

    /// Lie bracket `[self, other] = self(other) - other(self)`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: std::array::from_fn(|i| {
                &self.apply(&other.coeffs[i]) - &other.apply(&self.coeffs[i])
            }),
        }
    }

    pub fn scale(&self, k: &Expr) -> VectorField {
        VectorField {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * k),
        }
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> VectorField {
        VectorField {
            coeffs: std::array::from_fn(|i| f(&self.coeffs[i])),
        }
    }

    /// Keeps the components whose index satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> VectorField {
        VectorField {
            coeffs: std::array::from_fn(|i| {
                if keep(i) {
                    self.coeffs[i].clone()
                } else {
                    Expr::zero()
                }
            }),
        }
    }

    pub fn to_string_as(&self, format: Format) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (name, c) in COORDINATES.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let d = match format {
                Format::Latex => format!("\\partial_{{{}}}", crate::expr::latex_name(name)),
                _ => format!("D_{name}"),
            };
            let (neg, mag) = if c.leading_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let text = if mag.is_one() {
                d
            } else {
                let s = mag.to_string_as(format);
                let wrap = mag.is_sum();
                match (format, wrap) {
                    (Format::Latex, true) => format!("\\left({s}\\right) {d}"),
                    (Format::Latex, false) => format!("{s} {d}"),
                    (_, true) => format!("({s})*{d}"),
                    (_, false) => format!("{s}*{d}"),
                }
            };
            parts.push((neg, text));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, text)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&text);
        }
        out
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_as(Format::Plain))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.map(|c| -c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn bracket_of_dilation_and_translation() {
        let dt = VectorField::partial("t");
        let y4 = VectorField::from_terms(&[("t", p("t")), ("f", p("-f"))]);
        assert_eq!(dt.bracket(&y4), dt);
        assert!(dt.bracket(&dt).is_zero());
    }

    #[test]
    fn display() {
        let v = VectorField::from_terms(&[("t", p("t")), ("u", p("1")), ("f", p("-f"))]);
        assert_eq!(v.to_string(), "t*D_t + D_u - f*D_f");
        assert_eq!(VectorField::zero().to_string(), "0");
    }
}
