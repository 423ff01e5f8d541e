// Parsing, canonical form, differentiation and printing.
//
// ```text
// cargo run --example expressions
// ```

use lie_reduce::expr::{parse, Format};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // equal expressions share one canonical form
    let a = parse("(u^2 - 1)/(u - 1) + exp(log(t))")?;
    let b = parse("u + 1 + t")?;
    println!("{a}  ==  {b}: {}", a == b);
    assert_eq!(a, b);

    let e = parse("c1*exp(-u)*u_x^2 + arctan(x/t)")?;
    println!("e          = {e}");
    println!("de/dx      = {}", e.diff_sym("x"));
    println!("latex      = {}", e.to_string_as(Format::Latex));

    // sqrt(w)^2 folds back to w
    let w = parse("sqrt(w)")?;
    assert_eq!(&w * &w, parse("w")?);

    // numeric evaluation binds plain symbols; jet variables stay unbound
    let f = parse("c1*exp(-u) + arctan(x/t)")?;
    let value = f
        .eval_at(&[("c1", 2.0), ("u", 0.0), ("x", 1.0), ("t", 1.0)])
        .ok_or("unbound symbol")?;
    println!("{f} at (c1, u, x, t) = (2, 0, 1, 1): {value}");
    assert!((value - (2.0 + std::f64::consts::FRAC_PI_4)).abs() < 1e-12);
    assert!(e.eval_at(&[("c1", 2.0)]).is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
