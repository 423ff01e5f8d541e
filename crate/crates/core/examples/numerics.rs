// Adaptive integration of a reduced ODE against its closed form, and a
// finite-difference residual of an exact PDE solution.
//
// ```text
// cargo run --example numerics
// ```

use std::collections::BTreeMap;

use lie_reduce::equivalence::ClassMember;
use lie_reduce::expr::parse;
use lie_reduce::jet::EquationInstance;
use lie_reduce::reduction::{integrate_numeric, Grid, ReducedODE, ResidualReport};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ode = ReducedODE::new(parse("z^2*h' - c2*z^2 + z*h - 1")?);
    let params = BTreeMap::from([("c2".to_string(), 1.0)]);
    let exact = |z: f64| z / 2.0 + z.ln() / z;
    let traj = integrate_numeric(&ode, &params, &[exact(1.0)], (1.0, 2.0), 1e-10)?;
    println!(
        "{} steps, max deviation {:.2e}",
        traj.points.len(),
        traj.max_deviation(exact)
    );
    let mut csv = Vec::new();
    traj.write_csv(&mut csv)?;
    println!(
        "{}",
        String::from_utf8(csv)?
            .lines()
            .take(3)
            .collect::<Vec<_>>()
            .join("\n")
    );

    let member = ClassMember::parse(["u^2/2 + c1", "c2", "u + c3", "c4", "c5", "-u^2/2 + c6"])?;
    let eq = EquationInstance::from_member(&member);
    let params: BTreeMap<String, f64> = [("c2", 1.0), ("c3", 1.0), ("c4", 1.0), ("c5", 1.0)]
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    let u = |t: f64, x: f64| t / 2.0 + (x + t.ln()) / t;
    for step in [1.0 / 64.0, 1.0 / 128.0] {
        let grid = Grid {
            t: (1.0, 2.0),
            x: (0.0, 1.0),
            step,
        };
        let r = ResidualReport::measure("traveling", &eq, &u, &params, &grid)?;
        println!("{}", serde_json::to_string(&r)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
