// Commutator and adjoint tables of the projected eight-dimensional algebra.
//
// ```text
// cargo run --example algebra_tables
// ```

use lie_reduce::equivalence::projected_basis;
use lie_reduce::expr::{Expr, Format};
use lie_reduce::lie::adjoint::adjoint;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = projected_basis();
    for (label, field) in basis.labels().iter().zip(basis.fields()) {
        println!("{label} = {field}");
    }

    let table = basis.commutator_table()?;
    let z1_z4: Vec<Expr> = table[0][3].iter().cloned().map(Expr::from_q).collect();
    println!(
        "[Z1, Z4] = {}",
        basis.format_combination(&z1_z4, None, Format::Plain)
    );

    let eps = Expr::sym("eps");
    let ad = adjoint(basis.field(1), basis.field(4), &eps, &basis)?;
    println!(
        "Ad(exp(eps*Z2)) Z5 = {}",
        basis.format_combination(&ad.coords, Some(4), Format::Plain)
    );
    println!("closure: {:?}", ad.closure);

    let ad = adjoint(basis.field(0), basis.field(3), &eps, &basis)?;
    println!(
        "Ad(exp(eps*Z1)) Z4 = {}",
        basis.format_combination(&ad.coords, Some(3), Format::Plain)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
