// Principal algebra, preliminary classification of projected generators and
// normalization against the optimal system.
//
// ```text
// cargo run --example classification
// ```

use lie_reduce::equivalence::{classify_element, principal_algebra, projected_basis};
use lie_reduce::expr::Q;
use lie_reduce::fixtures::FixtureSet;
use lie_reduce::lie::normalize_element;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = principal_algebra();
    println!(
        "principal algebra: {:?}",
        p.basis
            .fields()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    let basis = projected_basis();
    for text in ["Z1 + Z2", "Z3 + Z4", "Z1 + Z5 + Z6"] {
        let c = classify_element(&basis.parse_combination(text)?)?;
        println!("{text}:");
        println!(
            "  f = {}, gamma = {}",
            c.member.get("f").unwrap(),
            c.member.get("gamma").unwrap()
        );
        println!("  extra symmetry {}", c.x3);
    }

    let reps = FixtureSet::load_default()?.representatives()?;
    let coords: Vec<Q> = [5, 0, 0, 1, 0, 0, 0, 0]
        .iter()
        .map(|&k| Q::from_integer(k.into()))
        .collect();
    let n = normalize_element(&coords, &basis, &reps);
    println!("5*Z1 + Z4 ~ {} {:?}", n.label_or_unresolved(), n.params);
    for m in &n.transcript {
        println!("  {m:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
