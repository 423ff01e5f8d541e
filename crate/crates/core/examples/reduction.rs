// Reducing a member to an ODE through the invariant ansatz of its extra
// symmetry, then lowering the order with `w = (h')^2`.
//
// ```text
// cargo run --example reduction
// ```

use lie_reduce::equivalence::classify_element;
use lie_reduce::equivalence::projected_basis;
use lie_reduce::jet::EquationInstance;
use lie_reduce::reduction::{back_substitute_w, match_ansatz, reduce, substitute_w};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = projected_basis();
    let c = classify_element(&basis.parse_combination("Z1 + Z2")?)?;
    let eq = EquationInstance::from_member(&c.member);
    println!("equation: {} = 0", eq.lhs);

    let a = match_ansatz(&c.x3)?;
    println!("ansatz: z = {}, u = {} ({})", a.z, a.shape, a.domain);

    let ode = reduce(&eq, &a)?;
    println!("ode: {} = 0", ode.lhs);
    println!("source = ({}) * ode", ode.multiplier);
    assert!(ode.identity_residual()?.is_zero());

    let w = substitute_w(&ode)?;
    println!("order {} -> {}: {} = 0", ode.order(), w.order(), w.lhs);
    let back = back_substitute_w(&w.lhs)?;
    println!("back substitution / ode = {}", back.try_div(&ode.lhs)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
