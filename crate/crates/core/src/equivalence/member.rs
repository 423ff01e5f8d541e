//! Concrete members of the class: six functions of `u`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse, Atom, Binding, Expr, ExprError, SymbolKind};

pub const ELEMENT_NAMES: [&str; 6] = ["f", "g", "alpha", "beta", "gamma", "phi"];

#[derive(Debug, Error)]
pub enum MemberError {
    #[error("gamma must not vanish identically")]
    GammaZero,
    #[error("{name} = {value} may depend only on u and parameters")]
    Dependence { name: String, value: String },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Values `(F, G, A, B, Γ, Φ)` of `(f, g, α, β, γ, φ)` as functions of `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassMember {
    pub f: Expr,
    pub g: Expr,
    pub alpha: Expr,
    pub beta: Expr,
    pub gamma: Expr,
    pub phi: Expr,
}

fn allowed(a: &Atom) -> bool {
    match a {
        Atom::Sym(s) => s.name() == "u" || s.kind() == SymbolKind::Parameter,
        Atom::Deriv(_) => false,
        _ => true,
    }
}

impl ClassMember {
    pub fn new(elements: [Expr; 6]) -> Result<Self, MemberError> {
        for (name, e) in ELEMENT_NAMES.iter().zip(&elements) {
            if !e.free_of(&|a| !allowed(a)) {
                return Err(MemberError::Dependence {
                    name: name.to_string(),
                    value: e.to_string(),
                });
            }
        }
        let [f, g, alpha, beta, gamma, phi] = elements;
        if gamma.is_zero() {
            return Err(MemberError::GammaZero);
        }
        Ok(ClassMember {
            f,
            g,
            alpha,
            beta,
            gamma,
            phi,
        })
    }

    /// Parses the six element strings in the order `f, g, alpha, beta, gamma, phi`.
    pub fn parse(texts: [&str; 6]) -> Result<Self, MemberError> {
        let mut out = Vec::with_capacity(6);
        for t in texts {
            out.push(parse(t)?);
        }
        ClassMember::new(out.try_into().expect("six elements"))
    }

    /// Arbitrary elements left as opaque functions `F(u), …, Phi(u)`.
    pub fn opaque() -> Self {
        let u = Expr::sym("u");
        let names = ["F", "G", "A", "B", "Gamma", "Phi"];
        let e: Vec<Expr> = names.iter().map(|n| Expr::func(n, 0, u.clone())).collect();
        ClassMember::new(e.try_into().expect("six elements")).expect("opaque gamma is nonzero")
    }

    pub fn elements(&self) -> [&Expr; 6] {
        [
            &self.f,
            &self.g,
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.phi,
        ]
    }

    pub fn get(&self, name: &str) -> Option<&Expr> {
        ELEMENT_NAMES
            .iter()
            .position(|n| *n == name)
            .map(|i| self.elements()[i])
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> [Expr; 6] {
        self.elements().map(f)
    }

    pub fn substitute(&self, b: &Binding) -> Result<Self, MemberError> {
        ClassMember::new(self.map(|e| e.substitute(b)))
    }

    /// Left-hand side of the class equation with these elements.
    pub fn class_form(&self) -> Expr {
        class_form_in(self.elements(), "u")
    }
}

/// `v_t + F'(v) v_x + A v_xx + Φ''(v) v_x² + Φ'(v) v_xx + B v_xxx + Γ v_xxxx - G`
/// for elements written as functions of the symbol `dep`.
pub fn class_form_in(el: [&Expr; 6], dep: &str) -> Expr {
    let [f, g, alpha, beta, gamma, phi] = el;
    let j = |a: u8, b: u8| Expr::atom(crate::jet::jet_of(dep, a, b));
    let fu = f.diff_sym(dep);
    let phiu = phi.diff_sym(dep);
    let phiuu = phiu.diff_sym(dep);
    let ux = j(0, 1);
    let terms = [
        j(1, 0),
        &fu * &ux,
        alpha * &j(0, 2),
        &phiuu * &(&ux * &ux),
        &phiu * &j(0, 2),
        beta * &j(0, 3),
        gamma * &j(0, 4),
        -g,
    ];
    terms.into_iter().sum()
}

#[derive(Serialize, Deserialize)]
struct MemberJson {
    f: String,
    g: String,
    alpha: String,
    beta: String,
    gamma: String,
    phi: String,
}

impl Serialize for ClassMember {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MemberJson {
            f: self.f.to_string(),
            g: self.g.to_string(),
            alpha: self.alpha.to_string(),
            beta: self.beta.to_string(),
            gamma: self.gamma.to_string(),
            phi: self.phi.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassMember {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = MemberJson::deserialize(d)?;
        ClassMember::parse([&m.f, &m.g, &m.alpha, &m.beta, &m.gamma, &m.phi])
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_one_form() {
        let m = ClassMember::parse([
            "c1*exp(-u)",
            "c2*exp(-u)",
            "c3*exp(-u)",
            "c4*exp(-u)",
            "c5*exp(-u)",
            "c6*exp(-u)",
        ])
        .unwrap();
        let printed = parse(
            "u_t + exp(-u)*(-c1*u_x + (c3 - c6)*u_xx + c6*u_x^2 + c4*u_xxx + c5*u_xxxx - c2)",
        )
        .unwrap();
        assert_eq!(m.class_form(), printed);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ClassMember::parse(["1", "1", "1", "1", "0", "1"]),
            Err(MemberError::GammaZero)
        ));
        assert!(matches!(
            ClassMember::parse(["t", "1", "1", "1", "1", "1"]),
            Err(MemberError::Dependence { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let m =
            ClassMember::parse(["u^2/2 + c1", "c2", "u + c3", "c4", "c5", "-u^2/2 + c6"]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: ClassMember = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
