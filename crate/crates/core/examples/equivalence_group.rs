// One-parameter flows of the equivalence generators, their composition,
// and a check that a transformation keeps a member inside the class.
//
// ```text
// cargo run --example equivalence_group
// ```

use lie_reduce::equivalence::{
    equivalence_fields, exponentiate, verify_class_preservation, ClassMember, FiniteTransformation,
};
use lie_reduce::expr::Expr;
use lie_reduce::lie::field::COORDINATES;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fields = equivalence_fields();
    let y7 = exponentiate(&fields[6], &Expr::sym("eps7"))?;
    println!(
        "Y7 = {}: x -> {}, u -> {}",
        fields[6],
        y7.map("x"),
        y7.map("u")
    );

    let all = FiniteTransformation::symbolic();
    for (name, m) in COORDINATES.iter().zip(all.maps()) {
        println!("{name:>5} -> {m}");
    }

    let member = ClassMember::parse(["u^2/2 + c1", "c2", "u + c3", "c4", "c5", "-u^2/2 + c6"])?;
    let eps: Vec<Expr> = [1, -2, 1, 0, 1, 2, -1, 3, 0, 1]
        .iter()
        .map(|&k| Expr::rational(k, 2))
        .collect();
    let t = FiniteTransformation::from_parameters(&eps)?;
    let r = verify_class_preservation(&t, &member)?;
    println!("class preservation residual: {r}");
    assert!(r.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
