// Prolonging a point field and testing it against a member of the class.
//
// ```text
// cargo run --example prolongation
// ```

use lie_reduce::equivalence::ClassMember;
use lie_reduce::jet::{check_symmetry, prolong, EquationInstance};
use lie_reduce::lie::VectorField;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // scaling x and u together
    let v = VectorField::parse_terms(&[("x", "x"), ("u", "u")])?;
    let p = prolong(&v, 4)?;
    for ((a, b), z) in &p.zeta {
        println!("zeta[t^{a} x^{b}] = {z}");
    }

    let cubic = ClassMember::parse(["c1*u^2", "c2*u", "c3*u^2", "c4*u^3", "c5*u^4", "c6*u^3"])?;
    let eq = EquationInstance::from_member(&cubic);
    println!("equation: {} = 0", eq.lhs);
    let r = check_symmetry(&v, &eq)?;
    println!("{v} is a symmetry: {}", r.is_zero());
    assert!(r.is_zero());

    // the same field fails on a generic member
    let generic = EquationInstance::from_member(&ClassMember::opaque());
    let r = check_symmetry(&v, &generic)?;
    println!("on arbitrary elements the residual is {r}");
    assert!(!r.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
