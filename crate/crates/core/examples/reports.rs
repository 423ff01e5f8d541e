// Running verification suites programmatically and rendering the report.
//
// ```text
// cargo run --example reports
// ```

use lie_reduce::expr::Format;
use lie_reduce::fixtures::FixtureSet;
use lie_reduce::suites::{run, Command, Options};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fx = FixtureSet::load_default()?;
    let opts = Options {
        compare: true,
        case: Some(3),
        ..Options::default()
    };

    let tables = run(Command::Tables, &fx, &opts)?;
    let latex = tables.emit(Format::Latex);
    println!("{}", latex.lines().take(12).collect::<Vec<_>>().join("\n"));

    let solve = run(Command::Solve, &fx, &opts)?;
    print!("{}", solve.emit(Format::Plain));
    println!("exit code {}", solve.exit_code());

    let json: serde_json::Value = serde_json::from_str(&solve.emit(Format::Json))?;
    println!(
        "{} cases in JSON",
        json["cases"].as_array().map_or(0, Vec::len)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
