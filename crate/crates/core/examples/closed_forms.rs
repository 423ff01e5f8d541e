// Closed-form solutions of first-order reduced ODEs, checked by substitution
// and lifted back to solutions of the PDE.
//
// ```text
// cargo run --example closed_forms
// ```

use lie_reduce::expr::{parse, Expr};
use lie_reduce::fixtures::FixtureSet;
use lie_reduce::reduction::{
    match_ansatz, reduce, solve_closed_form, undo_ansatz, verify_ode, verify_pde, ReducedODE,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // h' = h (a h^2 + b h + c) has an implicit arctan/log solution
    let abel = ReducedODE::new(parse("h' + 6*c6*h^3 + 2*c1*h^2 - c2*h")?);
    let s = solve_closed_form(&abel)?;
    let s = s.solution().ok_or("no closed form")?;
    println!("{:?}: {}", s.kind, s.describe());
    println!(
        "  implicit-differentiation residual {}",
        verify_ode(s, &abel)?
    );

    // the Bernoulli special case
    let bern = ReducedODE {
        lhs: abel.lhs.subs_sym("c6", &Expr::zero()),
        ..abel.clone()
    };
    let s = solve_closed_form(&bern)?;
    let s = s.solution().ok_or("no closed form")?;
    println!("{:?}: {}", s.kind, s.describe());

    // linear first order, then back to u(t, x)
    let fx = FixtureSet::load_default()?;
    let case = fx.case(4).ok_or("missing case 4")?;
    let eq = case.equation_instance()?;
    let a = match_ansatz(&case.x3_field()?)?;
    let ode = reduce(&eq, &a)?;
    let s = solve_closed_form(&ode)?;
    let s = s.solution().ok_or("no closed form")?;
    println!("{} = 0  =>  {}", ode.lhs, s.describe());
    let u = undo_ansatz(s, &a)?;
    println!("{}, PDE residual {}", u.describe(), verify_pde(&u, &eq)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
