//! Recursive-descent parser for the plain expression grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := base ('^' exponent)?
//! exponent := '-'? int | '(' '-'? int ('/' int)? ')'
//! base     := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! Identifiers take jet suffixes (`u_tx`, `f_uu`) and primes (`h''''`).

use num_bigint::BigInt;
use num_traits::Zero;

use super::symbol::{Symbol, CLASS_FUNCTIONS};
use super::{Expr, ExprError, Result, Q};

const MAX_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident {
        name: String,
        suffix: String,
        primes: usize,
    },
    Op(char),
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

fn syntax(column: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        column,
        message: message.into(),
    }
}

impl Lexer {
    fn tokens(src: &str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            chars: src.chars().collect(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(&c) = lx.chars.get(lx.pos) {
            let col = lx.pos + 1;
            if c.is_whitespace() {
                lx.pos += 1;
            } else if c.is_ascii_digit() || c == '.' {
                out.push((lx.number(col)?, col));
            } else if c.is_ascii_alphabetic() {
                out.push((lx.ident(), col));
            } else if "+-*/^()".contains(c) {
                lx.pos += 1;
                out.push((Tok::Op(c), col));
            } else {
                return Err(syntax(col, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| pred(*c)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self, col: usize) -> Result<Tok> {
        let int = self.take_while(|c| c.is_ascii_digit());
        let mut value = Q::from_integer(if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().expect("digits")
        });
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            let frac = self.take_while(|c| c.is_ascii_digit());
            if int.is_empty() && frac.is_empty() {
                return Err(syntax(col, "malformed number"));
            }
            if !frac.is_empty() {
                let digits: BigInt = frac.parse().expect("digits");
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                value += Q::new(digits, scale);
            }
        }
        Ok(Tok::Num(value))
    }

    fn ident(&mut self) -> Tok {
        let name = self.take_while(|c| c.is_ascii_alphanumeric());
        let mut suffix = String::new();
        if self.chars.get(self.pos) == Some(&'_')
            && self
                .chars
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
            suffix = self.take_while(|c| c.is_ascii_alphabetic());
        }
        let primes = self.take_while(|c| c == '\'').len();
        Tok::Ident {
            name,
            suffix,
            primes,
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    extra: &'a [&'a str],
}

/// Parses and normalizes an expression.
pub fn parse(text: &str) -> Result<Expr> {
    parse_with(text, &[])
}

/// Like [`parse`], additionally accepting the given bare symbol names.
pub fn parse_with(text: &str, extra: &[&str]) -> Result<Expr> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
        extra,
    };
    if p.toks.is_empty() {
        return Err(syntax(1, "empty expression"));
    }
    let e = p.expr()?;
    if let Some((t, col)) = p.toks.get(p.pos) {
        return Err(syntax(*col, format!("unexpected {}", describe(t))));
    }
    Ok(e)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(q) => format!("number {q}"),
        Tok::Ident { name, .. } => format!("identifier `{name}`"),
        Tok::Op(c) => format!("`{c}`"),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc
                    .try_div(&d)
                    .map_err(|_| syntax(col, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let q = self.exponent()?;
        base.pow_q(&q).map_err(|e| match e {
            ExprError::DivisionByZero => syntax(col, "zero to a negative power"),
            other => other,
        })
    }

    fn int(&mut self) -> Result<Q> {
        let col = self.col();
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                Ok(if neg { -q } else { q })
            }
            _ => Err(syntax(col, "expected integer exponent")),
        }
    }

    fn exponent(&mut self) -> Result<Q> {
        let open = self.col();
        if self.eat('(') {
            let mut q = self.int()?;
            if self.eat('/') {
                let d = self.int()?;
                if d.is_zero() {
                    return Err(syntax(open, "zero denominator in exponent"));
                }
                q /= d;
            }
            if !self.eat(')') {
                return Err(syntax(open, "unclosed `(`"));
            }
            return Ok(q);
        }
        self.int()
    }

    fn base(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.peek().cloned() {
            None => Err(syntax(col, "unexpected end of input")),
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Expr::from_q(q))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr().map_err(|e| match e {
                    ExprError::Syntax { column, .. } if column == self.end_col => {
                        syntax(col, "unclosed `(`")
                    }
                    other => other,
                })?;
                if !self.eat(')') {
                    return Err(syntax(col, "unclosed `(`"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(syntax(col, format!("unexpected `{c}`"))),
            Some(Tok::Ident {
                name,
                suffix,
                primes,
            }) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Op('(')) {
                    let open = self.col();
                    self.pos += 1;
                    let arg = self.expr().map_err(|e| match e {
                        ExprError::Syntax { column, .. } if column == self.end_col => {
                            syntax(open, "unclosed `(`")
                        }
                        other => other,
                    })?;
                    if !self.eat(')') {
                        return Err(syntax(open, "unclosed `(`"));
                    }
                    return apply(&name, &suffix, primes, arg);
                }
                self.ident(&name, &suffix, primes)
            }
        }
    }
}

fn apply(name: &str, suffix: &str, primes: usize, arg: Expr) -> Result<Expr> {
    if suffix.is_empty() && primes == 0 {
        match name {
            "exp" => return Ok(arg.exp()),
            "log" | "ln" => return arg.log(),
            "sqrt" => return arg.sqrt(),
            "arctan" | "atan" => return Ok(arg.atan()),
            _ => {}
        }
    }
    if let Some(order) = class_function_order(name, suffix, primes) {
        return Ok(Expr::func(name, order, arg));
    }
    Err(ExprError::UnknownSymbol(format!(
        "{name}{}",
        tail(suffix, primes)
    )))
}

impl Parser<'_> {
    fn ident(&self, name: &str, suffix: &str, primes: usize) -> Result<Expr> {
        let full = || format!("{name}{}", tail(suffix, primes));
        if !suffix.is_empty() {
            if primes == 0 && name == "u" && suffix.chars().all(|c| c == 't' || c == 'x') {
                if suffix.len() > MAX_ORDER {
                    return Err(ExprError::Unsupported(format!("jet order of {}", full())));
                }
                let t = suffix.chars().filter(|c| *c == 't').count() as u8;
                let x = suffix.len() as u8 - t;
                return Ok(Expr::jet(t, x));
            }
            if let Some(order) = class_function_order(name, suffix, primes) {
                return Ok(Expr::func(name, order, Expr::sym("u")));
            }
            return Err(ExprError::UnknownSymbol(full()));
        }
        if primes > 0 {
            if matches!(name, "h" | "w" | "y") {
                if primes > MAX_ORDER {
                    return Err(ExprError::Unsupported(format!(
                        "derivative order of {}",
                        full()
                    )));
                }
                return Ok(Expr::prime(name, primes as u8));
            }
            return Err(ExprError::UnknownSymbol(full()));
        }
        if Symbol::is_known(name) || self.extra.contains(&name) {
            return Ok(Expr::sym(name));
        }
        Err(ExprError::UnknownSymbol(name.to_string()))
    }
}

fn tail(suffix: &str, primes: usize) -> String {
    let mut s = String::new();
    if !suffix.is_empty() {
        s.push('_');
        s.push_str(suffix);
    }
    s.push_str(&"'".repeat(primes));
    s
}

fn class_function_order(name: &str, suffix: &str, primes: usize) -> Option<u8> {
    if primes != 0 || !CLASS_FUNCTIONS.contains(&name) || !suffix.chars().all(|c| c == 'u') {
        return None;
    }
    (suffix.len() <= MAX_ORDER).then_some(suffix.len() as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Atom;

    #[test]
    fn parses_class_form() {
        let e = parse("u_t + f_u*u_x").unwrap();
        let expected = &Expr::jet(1, 0) + &(&Expr::func("f", 1, Expr::sym("u")) * &Expr::jet(0, 1));
        assert_eq!(e, expected);
    }

    #[test]
    fn parses_primes() {
        let e = parse("c5*h''''+c4*h'''").unwrap();
        let expected =
            &(&Expr::sym("c5") * &Expr::prime("h", 4)) + &(&Expr::sym("c4") * &Expr::prime("h", 3));
        assert_eq!(e, expected);
    }

    #[test]
    fn open_paren_reports_column_one() {
        assert_eq!(
            parse("("),
            Err(ExprError::Syntax {
                column: 1,
                message: "unclosed `(`".into()
            })
        );
        assert!(matches!(
            parse("u +"),
            Err(ExprError::Syntax { column: 4, .. })
        ));
        assert!(matches!(
            parse("u $ 2"),
            Err(ExprError::Syntax { column: 3, .. })
        ));
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        assert_eq!(parse("q + 1"), Err(ExprError::UnknownSymbol("q".into())));
        assert_eq!(parse("v_t"), Err(ExprError::UnknownSymbol("v_t".into())));
        assert!(parse_with("Z5 + Z7", &["Z5", "Z7"]).is_ok());
    }

    #[test]
    fn exponents_and_decimals() {
        assert_eq!(parse("u^2/2").unwrap(), parse("(1/2)*u*u").unwrap());
        assert_eq!(parse("0.75").unwrap(), Expr::rational(3, 4));
        assert_eq!(parse("w^(1/2)").unwrap(), parse("sqrt(w)").unwrap());
        assert_eq!(parse("t^-1").unwrap(), parse("1/t").unwrap());
        assert!(parse("x^(1/3)").is_err());
    }

    #[test]
    fn jets_and_functions() {
        assert_eq!(parse("u_xt").unwrap(), parse("u_tx").unwrap());
        assert_eq!(parse("u").unwrap().as_atom(), Some(&Atom::sym("u")));
        assert_eq!(
            parse("phi_uu").unwrap(),
            Expr::func("phi", 2, Expr::sym("u"))
        );
    }
}
