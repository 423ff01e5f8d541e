//! Named symbols and the global symbol order.
//!
//! Every symbol has a fixed rank. The rank decides the monomial order of
//! canonical forms and therefore the printed order of terms:
//!
//! 1. independent variables `t`, `x`, `z`
//! 2. dependent variables `u`, `h`, `w`, `y`
//! 3. fiber coordinates `f`, `g`, `alpha`, `beta`, `gamma`, `phi`
//! 4. integration constants `c0`, `c1`, … (numeric order), then `c`
//! 5. optimal-system parameters `a`, `b`, `d`, `m`
//! 6. group parameters `eps`, `eps1`, … (numeric order)
//! 7. the branch sign `sigma`
//! 8. anything else, by name

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

const VARIABLES: [&str; 13] = [
    "t", "x", "z", "u", "h", "w", "y", "f", "g", "alpha", "beta", "gamma", "phi",
];
const SHAPE_PARAMETERS: [&str; 4] = ["a", "b", "d", "m"];

/// Names accepted as opaque functions of `u` (arbitrary elements of the class).
pub const CLASS_FUNCTIONS: [&str; 12] = [
    "f", "g", "alpha", "beta", "gamma", "phi", "F", "G", "A", "B", "Gamma", "Phi",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Independent,
    Dependent,
    Fiber,
    Parameter,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_sign(&self) -> bool {
        &*self.0 == "sigma"
    }

    pub fn kind(&self) -> SymbolKind {
        match self.name() {
            "t" | "x" | "z" => SymbolKind::Independent,
            "u" | "h" | "w" | "y" => SymbolKind::Dependent,
            "f" | "g" | "alpha" | "beta" | "gamma" | "phi" => SymbolKind::Fiber,
            _ => SymbolKind::Parameter,
        }
    }

    /// True for names the parser accepts as bare symbols.
    pub fn is_known(name: &str) -> bool {
        VARIABLES.contains(&name)
            || SHAPE_PARAMETERS.contains(&name)
            || name == "sigma"
            || numbered(name, "c").is_some()
            || numbered(name, "eps").is_some()
    }

    fn rank(&self) -> (u32, u32) {
        let name = self.name();
        if let Some(i) = VARIABLES.iter().position(|v| *v == name) {
            return (0, i as u32);
        }
        if let Some(n) = numbered(name, "c") {
            return (1, n.map_or(u32::MAX, |n| n));
        }
        if let Some(i) = SHAPE_PARAMETERS.iter().position(|v| *v == name) {
            return (2, i as u32);
        }
        if let Some(n) = numbered(name, "eps") {
            return (3, n.map_or(0, |n| n + 1));
        }
        if name == "sigma" {
            return (4, 0);
        }
        (5, 0)
    }
}

/// `prefix` alone gives `Some(None)`, `prefix` followed by digits gives `Some(Some(n))`.
fn numbered(name: &str, prefix: &str) -> Option<Option<u32>> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() {
        return Some(None);
    }
    if rest.bytes().all(|b| b.is_ascii_digit()) && rest.len() <= 4 {
        return rest.parse().ok().map(Some);
    }
    None
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.name().cmp(other.name()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_follows_rank_table() {
        let names = [
            "t", "x", "u", "h", "f", "phi", "c0", "c2", "c10", "c", "a", "m", "eps", "eps1",
            "eps10", "sigma",
        ];
        let syms: Vec<Symbol> = names.iter().map(|n| Symbol::new(n)).collect();
        let mut sorted = syms.clone();
        sorted.sort();
        assert_eq!(syms, sorted);
    }

    #[test]
    fn known_names() {
        assert!(Symbol::is_known("c12"));
        assert!(Symbol::is_known("eps7"));
        assert!(!Symbol::is_known("q"));
        assert!(!Symbol::is_known("cx"));
    }
}
