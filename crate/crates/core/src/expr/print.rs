//! Plain, LaTeX and JSON renderings of expressions.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::node::Node;
use super::{Expr, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Format::Plain),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown format `{other}` (expected plain, latex or json)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Plain => "plain",
            Format::Latex => "latex",
            Format::Json => "json",
        })
    }
}

pub fn print(e: &Expr, format: Format) -> String {
    let n = e.node();
    match format {
        Format::Plain => plain(&n),
        Format::Latex => latex(&n),
        Format::Json => json_value(&n).to_string(),
    }
}

fn negate(n: &Node) -> Node {
    match n {
        Node::Num(q) => Node::Num(-q),
        Node::Product(fs) => {
            let mut fs = fs.clone();
            if let Some(Node::Num(q)) = fs.first() {
                let q = -q;
                if q.is_one() && fs.len() > 1 {
                    fs.remove(0);
                } else {
                    fs[0] = Node::Num(q);
                }
            } else {
                fs.insert(0, Node::Num(-Q::one()));
            }
            if fs.len() == 1 {
                fs.pop().expect("one factor")
            } else {
                Node::Product(fs)
            }
        }
        other => Node::Product(vec![Node::Num(-Q::one()), other.clone()]),
    }
}

fn split_fraction(fs: &[Node]) -> (Vec<Node>, Vec<Node>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for f in fs {
        match f {
            Node::Power(b, q) if q.is_negative() => {
                let q = -q;
                den.push(if q.is_one() {
                    (**b).clone()
                } else {
                    Node::Power(b.clone(), q)
                });
            }
            other => num.push(other.clone()),
        }
    }
    (num, den)
}

fn plain(n: &Node) -> String {
    match n {
        Node::Num(q) => q.to_string(),
        Node::Var(s) => s.clone(),
        Node::Call(name, arg) => format!("{name}({})", plain(arg)),
        Node::Sum(terms) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                if i == 0 {
                    out.push_str(&plain(t));
                } else if t.is_negative() {
                    out.push_str(" - ");
                    out.push_str(&plain(&negate(t)));
                } else {
                    out.push_str(" + ");
                    out.push_str(&plain(t));
                }
            }
            out
        }
        Node::Product(fs) => {
            let (num, den) = split_fraction(fs);
            let mut out = plain_factors(&num);
            if !den.is_empty() {
                let d = plain_factors(&den);
                if matches!(den[..], [Node::Sum(_)]) {
                    out = format!("{out}/{d}");
                } else if den.len() > 1 || matches!(den[0], Node::Product(_)) || d.contains('/') {
                    out = format!("{out}/({d})");
                } else {
                    out = format!("{out}/{d}");
                }
            }
            out
        }
        Node::Power(b, q) => {
            let base = match **b {
                Node::Var(_) | Node::Call(..) => plain(b),
                Node::Num(ref v) if v.is_integer() && !v.is_negative() => plain(b),
                _ => format!("({})", plain(b)),
            };
            if q.is_integer() {
                format!("{base}^{q}")
            } else {
                format!("{base}^({q})")
            }
        }
    }
}

fn plain_factors(fs: &[Node]) -> String {
    match fs {
        [] => "1".into(),
        [Node::Sum(_)] => format!("({})", plain(&fs[0])),
        _ => {
            let mut parts = Vec::new();
            let mut prefix = "";
            for (i, f) in fs.iter().enumerate() {
                match f {
                    Node::Num(q) if i == 0 && fs.len() > 1 && (-q).is_one() => prefix = "-",
                    Node::Sum(_) => parts.push(format!("({})", plain(f))),
                    _ => parts.push(plain(f)),
                }
            }
            format!("{prefix}{}", parts.join("*"))
        }
    }
}

/// LaTeX spelling of a printed symbol name.
pub fn latex_name(name: &str) -> String {
    let (stem, primes) = match name.find('\'') {
        Some(i) => (&name[..i], &name[i..]),
        None => (name, ""),
    };
    if let Some((base, sub)) = stem.split_once('_') {
        return format!("{}_{{{sub}}}{primes}", latex_name(base));
    }
    let greek = [
        "alpha", "beta", "gamma", "phi", "sigma", "Gamma", "Phi", "epsilon",
    ];
    let body = if greek.contains(&stem) {
        format!("\\{stem}")
    } else if stem == "eps" {
        "\\epsilon".to_string()
    } else if let Some(k) = stem
        .strip_prefix("eps")
        .filter(|k| k.bytes().all(|b| b.is_ascii_digit()))
    {
        format!("\\epsilon_{{{k}}}")
    } else if let Some(i) = stem.find(|c: char| c.is_ascii_digit()).filter(|i| *i > 0) {
        let (b, k) = stem.split_at(i);
        if k.len() == 1 {
            format!("{b}_{k}")
        } else {
            format!("{b}_{{{k}}}")
        }
    } else {
        stem.to_string()
    };
    format!("{body}{primes}")
}

fn latex_num(q: &Q) -> String {
    if q.is_integer() {
        q.to_string()
    } else if q.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -q.numer(), q.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex(n: &Node) -> String {
    match n {
        Node::Num(q) => latex_num(q),
        Node::Var(s) => latex_name(s),
        Node::Call(name, arg) => match name.as_str() {
            "exp" => format!("e^{{{}}}", latex(arg)),
            "sqrt" => format!("\\sqrt{{{}}}", latex(arg)),
            "log" => format!("\\ln\\left({}\\right)", latex(arg)),
            "arctan" => format!("\\arctan\\left({}\\right)", latex(arg)),
            other => format!("{}({})", latex_name(other), latex(arg)),
        },
        Node::Sum(terms) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                if i == 0 {
                    out.push_str(&latex(t));
                } else if t.is_negative() {
                    out.push_str(" - ");
                    out.push_str(&latex(&negate(t)));
                } else {
                    out.push_str(" + ");
                    out.push_str(&latex(t));
                }
            }
            out
        }
        Node::Product(fs) => {
            let (num, den) = split_fraction(fs);
            if den.is_empty() {
                return latex_factors(&num);
            }
            let negative = num.first().is_some_and(Node::is_negative);
            let num = if negative {
                match negate(&Node::Product(num.clone())) {
                    Node::Product(v) => v,
                    other => vec![other],
                }
            } else {
                num
            };
            let sign = if negative { "-" } else { "" };
            format!(
                "{sign}\\frac{{{}}}{{{}}}",
                latex_factors(&num),
                latex_factors(&den)
            )
        }
        Node::Power(b, q) => {
            let base = match **b {
                Node::Var(_) => latex(b),
                Node::Num(ref v) if v.is_integer() && !v.is_negative() => latex(b),
                _ => format!("\\left({}\\right)", latex(b)),
            };
            let exp = if q.is_integer() {
                q.to_string()
            } else {
                latex_num(q)
            };
            format!("{base}^{{{exp}}}")
        }
    }
}

fn latex_factors(fs: &[Node]) -> String {
    match fs {
        [] => "1".into(),
        [Node::Sum(_)] => latex(&fs[0]),
        _ => {
            let mut parts = Vec::new();
            let mut prefix = "";
            for (i, f) in fs.iter().enumerate() {
                match f {
                    Node::Num(q) if i == 0 && fs.len() > 1 && (-q).is_one() => prefix = "-",
                    Node::Sum(_) => parts.push(format!("\\left({}\\right)", latex(f))),
                    _ => parts.push(latex(f)),
                }
            }
            format!("{prefix}{}", parts.join(" "))
        }
    }
}

fn json_value(n: &Node) -> Value {
    match n {
        Node::Num(q) => json!({ "num": q.to_string() }),
        Node::Var(s) => json!({ "var": s }),
        Node::Call(name, arg) => json!({ "call": name, "arg": json_value(arg) }),
        Node::Sum(ts) => json!({ "sum": ts.iter().map(json_value).collect::<Vec<_>>() }),
        Node::Product(fs) => json!({ "product": fs.iter().map(json_value).collect::<Vec<_>>() }),
        Node::Power(b, q) => json!({ "pow": { "base": json_value(b), "exp": q.to_string() } }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn plain_examples() {
        assert_eq!(p("u_t + f_u*u_x").to_string(), "u_t + f_u*u_x");
        assert_eq!(p("3/4").to_string(), "3/4");
        assert_eq!(p("c1*exp(-u)").to_string(), "c1*exp(-u)");
        assert_eq!(p("-u^2/2 + c6").to_string(), "-1/2*u^2 + c6");
        assert_eq!(p("x/t").to_string(), "x/t");
        assert_eq!(p("(x + 1)/(2*t)").to_string(), "(x + 1)/(2*t)");
        assert_eq!(p("c2/(x - 2*c1)").to_string(), "c2/(x - 2*c1)");
    }

    #[test]
    fn latex_examples() {
        assert_eq!(p("exp(-u)").to_string_as(Format::Latex), "e^{-u}");
        assert_eq!(p("c1*exp(-u)").to_string_as(Format::Latex), "c_1 e^{-u}");
        assert_eq!(p("u_xx").to_string_as(Format::Latex), "u_{xx}");
        assert_eq!(p("-x/t").to_string_as(Format::Latex), "-\\frac{x}{t}");
    }

    #[test]
    fn json_is_a_tree() {
        let v: Value = serde_json::from_str(&p("u + 1").to_string_as(Format::Json)).unwrap();
        assert!(v.get("sum").is_some());
    }
}
