//! Principal algebra and preliminary classification from projections.

use num_traits::Zero;

use super::member::{ClassMember, ELEMENT_NAMES};
use super::{equivalence_basis, project_upsi, project_xu, EquivError, Result};
use crate::expr::{Atom, Expr, Q};
use crate::lie::field::{VectorField, COORDINATES};
use crate::lie::linalg;
use crate::lie::AlgebraBasis;

/// Symmetries shared by every member, with the linear constraints on the
/// coefficients `c1 .. c10` of a general equivalence generator.
#[derive(Clone, Debug)]
pub struct PrincipalAlgebra {
    pub basis: AlgebraBasis,
    /// Each entry vanishes, e.g. `c3`.
    pub constraints: Vec<Expr>,
}

/// `pr_{(u,Ψ)}(Σ c_i Y_i) = 0` solved for the `c_i`.
pub fn principal_algebra() -> PrincipalAlgebra {
    let eq = equivalence_basis();
    let cs: Vec<Expr> = (1..=10).map(|i| Expr::sym(&format!("c{i}"))).collect();
    let z = project_upsi(&eq.combine(&cs));
    let vars: Vec<Atom> = COORDINATES.iter().map(|c| Atom::sym(c)).collect();
    let c_atoms: Vec<Atom> = (1..=10).map(|i| Atom::sym(&format!("c{i}"))).collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for comp in z.coeffs() {
        for (_, k) in comp.coefficients(&vars).expect("polynomial components") {
            rows.push(
                c_atoms
                    .iter()
                    .map(|a| k.diff(a).as_rational().expect("linear in c"))
                    .collect(),
            );
        }
    }
    let pivots = if rows.is_empty() {
        Vec::new()
    } else {
        linalg::rref(&mut rows)
    };
    let constraints: Vec<Expr> = rows
        .iter()
        .take(pivots.len())
        .map(|r| {
            r.iter()
                .zip(&cs)
                .map(|(q, c)| c * &Expr::from_q(q.clone()))
                .sum()
        })
        .collect();
    let free: Vec<usize> = (0..10).filter(|i| !pivots.contains(i)).collect();
    let mut fields = Vec::new();
    let mut labels = Vec::new();
    for (n, &f) in free.iter().enumerate() {
        let mut coeffs = vec![Expr::zero(); 10];
        coeffs[f] = Expr::one();
        for (r, &p) in pivots.iter().enumerate() {
            coeffs[p] = -Expr::from_q(rows[r][f].clone());
        }
        fields.push(project_xu(&eq.combine(&coeffs)));
        labels.push(format!("X{}", n + 1));
    }
    let basis = AlgebraBasis::new(labels, fields).expect("principal algebra is closed");
    PrincipalAlgebra { basis, constraints }
}

/// Outcome of preliminary classification for one projected generator.
#[derive(Clone, Debug)]
pub struct Classification {
    pub member: ClassMember,
    /// Extra symmetry `pr_{(t,x,u)}` of the lifted equivalence generator.
    pub x3: VectorField,
    /// The lifted equivalence generator.
    pub lift: VectorField,
}

fn coordinate_free(e: &Expr) -> bool {
    COORDINATES.iter().all(|c| !e.contains_sym(c))
}

/// Affine decomposition `e = p + q u` with coordinate-free `p, q`.
fn affine_in_u(e: &Expr) -> Option<(Expr, Expr)> {
    let u = Atom::sym("u");
    let q = e.diff(&u);
    let p = e.subs(&u, &Expr::zero());
    (coordinate_free(&p) && coordinate_free(&q) && (&(&p + &(&q * &Expr::sym("u"))) - e).is_zero())
        .then_some((p, q))
}

/// Solves `η(u) Ψ' = k Ψ + p + q u` with integration constant `c`.
fn solve_invariance(eta: (&Expr, &Expr), k: &Expr, p: &Expr, q: &Expr, c: &Expr) -> Result<Expr> {
    let u = Expr::sym("u");
    let (e0, e1) = eta;
    let unsupported = |why: &str| EquivError::ClassificationUnsupported(why.to_string());
    match (e0.is_zero(), e1.is_zero()) {
        (true, true) => {
            if !k.is_zero() {
                Ok(-(&(p + &(q * &u)) / k))
            } else {
                Err(unsupported(
                    "invariance leaves the element arbitrary or inconsistent",
                ))
            }
        }
        (false, true) => {
            let beta = k / e0;
            let (p, q) = (p / e0, q / e0);
            if beta.is_zero() {
                Ok(&(c + &(&p * &u)) + &(&(&q * &u) * &u) / &Expr::int(2))
            } else {
                let hom = c * &(&beta * &u).exp();
                let part =
                    &(-(&p / &beta)) - &(&q * &(&(&u / &beta) + &(&beta * &beta).recip()?));
                Ok(&hom + &part)
            }
        }
        (true, false) => {
            let beta = k / e1;
            let (p, q) = (p / e1, q / e1);
            let bq = beta
                .as_rational()
                .ok_or_else(|| unsupported("symbolic power of u"))?;
            let hom = c * &u
                .pow_q(&bq)
                .map_err(|_| unsupported("power of u outside the supported class"))?;
            let log_u = u.log()?;
            let constant = if bq.is_zero() {
                &p * &log_u
            } else {
                -(&p / &beta)
            };
            let linear = if bq == Q::from_integer(1.into()) {
                &(&q * &u) * &log_u
            } else {
                &(&q * &u) / &(&Expr::one() - &beta)
            };
            Ok(&(&hom + &constant) + &linear)
        }
        (false, false) => Err(unsupported(
            "coefficient of D_u is not of the form 1 or u after scaling",
        )),
    }
}

/// Classifies a projected generator `Z = η(u)∂u + Σ ω^ψ ∂ψ`.
pub fn classify(z: &VectorField) -> Result<Classification> {
    let unsupported = |why: String| EquivError::ClassificationUnsupported(why);
    if !z.component("t").is_zero() || !z.component("x").is_zero() {
        return Err(unsupported(format!("{z} has t or x components")));
    }
    let eta = z.component("u");
    let (e0, e1) = affine_in_u(eta).ok_or_else(|| unsupported(format!("D_u coefficient {eta}")))?;
    let mut values = Vec::with_capacity(6);
    for (i, name) in ELEMENT_NAMES.iter().enumerate() {
        let w = z.component(name);
        let psi = Atom::sym(name);
        let k = w.diff(&psi);
        let rest = w.subs(&psi, &Expr::zero());
        if !coordinate_free(&k) {
            return Err(unsupported(format!(
                "D_{name} coefficient {w} is not linear in {name}"
            )));
        }
        let (p, q) = affine_in_u(&rest)
            .ok_or_else(|| unsupported(format!("D_{name} coefficient {w} is not affine in u")))?;
        let c = Expr::sym(&format!("c{}", i + 1));
        values.push(solve_invariance((&e0, &e1), &k, &p, &q, &c)?);
    }
    let el: [Expr; 6] = values.try_into().expect("six elements");
    if el[4].is_zero() {
        return Err(EquivError::Degenerate);
    }
    let member = ClassMember::new(el)?;
    let lift = lift(z)?;
    Ok(Classification {
        member,
        x3: project_xu(&lift),
        lift,
    })
}

/// An equivalence generator with projection `z` and no `∂t`, `∂x` part.
pub fn lift(z: &VectorField) -> Result<VectorField> {
    let eq = equivalence_basis();
    let projected: Vec<VectorField> = eq.fields()[2..].iter().map(project_upsi).collect();
    let labels = (3..=10).map(|i| format!("Y{i}")).collect();
    let pb = AlgebraBasis::unchecked(labels, projected)?;
    let c = pb.coordinates(z)?;
    let mut full = vec![Expr::zero(), Expr::zero()];
    full.extend(c);
    Ok(eq.combine(&full))
}

/// Classifies `Σ coeffs_i Z_i` in the projected basis.
pub fn classify_element(coeffs: &[Expr]) -> Result<Classification> {
    classify(&super::projected_basis().combine(coeffs))
}

/// Residual of the invariance condition `Z(ψ - Ψ(u))|_{ψ=Ψ(u)}` for each element.
pub fn invariance_residuals(z: &VectorField, member: &ClassMember) -> Vec<Expr> {
    let mut b = crate::expr::Binding::new();
    for (name, e) in ELEMENT_NAMES.iter().zip(member.elements()) {
        b.insert(Atom::sym(name), e.clone());
    }
    ELEMENT_NAMES
        .iter()
        .zip(member.elements())
        .map(|(name, e)| {
            &z.component(name).substitute(&b) - &(z.component("u").substitute(&b) * e.diff_sym("u"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn principal_is_translations() {
        let p = principal_algebra();
        assert_eq!(
            p.basis.fields(),
            &[VectorField::partial("t"), VectorField::partial("x")]
        );
        let names: Vec<String> = p.constraints.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, (3..=10).map(|i| format!("c{i}")).collect::<Vec<_>>());
    }

    #[test]
    fn example_one_family() {
        let one = Expr::one();
        let z = Expr::zero();
        let c = classify_element(&[
            one.clone(),
            one,
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z,
        ])
        .unwrap();
        assert_eq!(c.member.f, parse("c1*exp(-u)").unwrap());
        assert_eq!(c.member.gamma, parse("c5*exp(-u)").unwrap());
        assert_eq!(c.x3.to_string(), "t*D_t + D_u");
        let zf = crate::equivalence::projected_basis().combine(&[
            Expr::one(),
            Expr::one(),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
        ]);
        assert!(invariance_residuals(&zf, &c.member)
            .iter()
            .all(Expr::is_zero));
    }

    #[test]
    fn pure_scaling_is_degenerate() {
        let mut c = vec![Expr::zero(); 8];
        c[1] = Expr::one();
        assert!(matches!(classify_element(&c), Err(EquivError::Degenerate)));
    }
}
