//! Reference data on disk: Tables 1 and 2, the optimal system, the finite
//! equivalence group and the four worked reductions.
//!
//! Every expression is parsed when the set is loaded, so a set that loads
//! is well formed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::equivalence::{parse_field, projected_basis, ClassMember};
use crate::expr::{parse, parse_with, Expr};
use crate::jet::EquationInstance;
use crate::lie::optimal::Representative;
use crate::lie::{AlgebraBasis, VectorField};

/// Environment variable that overrides the fixture directory.
pub const FIXTURES_ENV: &str = "LIE_REDUCE_FIXTURES";

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid fixture {file}: {what}")]
    Invalid { file: &'static str, what: String },
}

type Result<T> = std::result::Result<T, FixtureError>;

#[derive(Clone, Debug, Deserialize)]
pub struct TableFixture {
    pub caption: String,
    pub labels: Vec<String>,
    #[serde(default)]
    pub parameter: Option<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RepresentativeFixture {
    pub label: String,
    pub element: String,
    #[serde(default)]
    pub nonzero: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SpotCheck {
    pub input: String,
    pub expected: String,
    #[serde(default)]
    pub via: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OptimalFixture {
    pub labels: Vec<String>,
    pub representatives: Vec<RepresentativeFixture>,
    #[serde(default)]
    pub spot_checks: Vec<SpotCheck>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GroupFixture {
    pub generators: BTreeMap<String, String>,
    pub transformation: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AnsatzFixture {
    pub z: String,
    pub u: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NumericFixture {
    pub params: BTreeMap<String, f64>,
    pub span: (f64, f64),
    pub tol: f64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PdeResidualFixture {
    pub params: BTreeMap<String, f64>,
    pub t: (f64, f64),
    pub x: (f64, f64),
    pub step: f64,
    pub tol: f64,
    pub rate: f64,
    pub rate_tol: f64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SolutionFixture {
    pub kind: String,
    #[serde(default)]
    pub restrict: BTreeMap<String, String>,
    #[serde(default)]
    pub h: Option<String>,
    #[serde(default)]
    pub u: Option<String>,
    /// The relation as printed, before any correction.
    #[serde(default)]
    pub printed: Option<String>,
    #[serde(default)]
    pub relation: Option<String>,
    #[serde(default)]
    pub numeric: Option<NumericFixture>,
    #[serde(default)]
    pub pde_residual: Option<PdeResidualFixture>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CaseFixture {
    pub case: u8,
    pub generator: String,
    pub element: String,
    pub representative: String,
    pub member: ClassMember,
    pub equation: String,
    pub x3: String,
    pub ansatz: AnsatzFixture,
    pub ode: String,
    #[serde(default)]
    pub multiplier: Option<String>,
    #[serde(default)]
    pub subode: Option<String>,
    #[serde(default)]
    pub solutions: Vec<SolutionFixture>,
    #[serde(default)]
    pub unsolved: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
struct CasesFile {
    cases: Vec<CaseFixture>,
}

#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub dir: PathBuf,
    pub table1: TableFixture,
    pub table2: TableFixture,
    pub optimal: OptimalFixture,
    pub group: GroupFixture,
    pub cases: Vec<CaseFixture>,
}

/// Parses `lhs = rhs` as `lhs - rhs`; plain expressions pass through.
pub fn parse_equation(text: &str) -> crate::expr::Result<Expr> {
    match text.split_once('=') {
        Some((l, r)) => Ok(&parse(l)? - &parse(r)?),
        None => parse(text),
    }
}

fn read<T: for<'de> Deserialize<'de>>(dir: &Path, name: &str) -> Result<T> {
    let path = dir.join(name);
    let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FixtureError::Json { path, source })
}

impl FixtureSet {
    /// `$LIE_REDUCE_FIXTURES`, else the `fixtures` directory of this crate.
    pub fn default_dir() -> PathBuf {
        match std::env::var_os(FIXTURES_ENV) {
            Some(d) => PathBuf::from(d),
            None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
        }
    }

    pub fn load_default() -> Result<Self> {
        Self::load(&Self::default_dir())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let set = FixtureSet {
            dir: dir.to_path_buf(),
            table1: read(dir, "table1.json")?,
            table2: read(dir, "table2.json")?,
            optimal: read(dir, "optimal_system.json")?,
            group: read(dir, "equivalence_group.json")?,
            cases: read::<CasesFile>(dir, "cases.json")?.cases,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<()> {
        let basis = projected_basis();
        for (file, t) in [("table1.json", &self.table1), ("table2.json", &self.table2)] {
            let bad = |what: String| FixtureError::Invalid { file, what };
            if t.entries.len() != 8 || t.entries.iter().any(|r| r.len() != 8) {
                return Err(bad("expected an 8x8 table".into()));
            }
            for cell in t.entries.iter().flatten() {
                basis
                    .parse_combination(cell)
                    .map_err(|e| bad(format!("{cell}: {e}")))?;
            }
        }
        let n = self.optimal.representatives.len();
        if n != 34 {
            return Err(FixtureError::Invalid {
                file: "optimal_system.json",
                what: format!("{n} representatives, expected 34"),
            });
        }
        self.representatives()?;
        for check in &self.optimal.spot_checks {
            basis
                .parse_combination(&check.input)
                .map_err(|e| FixtureError::Invalid {
                    file: "optimal_system.json",
                    what: format!("{}: {e}", check.input),
                })?;
        }
        self.group_generators()?;
        self.group_transformation()?;
        for c in &self.cases {
            self.check_case(c).map_err(|what| FixtureError::Invalid {
                file: "cases.json",
                what,
            })?;
        }
        Ok(())
    }

    fn check_case(&self, c: &CaseFixture) -> std::result::Result<(), String> {
        let ctx = |e: &dyn std::fmt::Display| format!("case {}: {e}", c.case);
        c.equation_instance().map_err(|e| ctx(&e))?;
        c.x3_field().map_err(|e| ctx(&e))?;
        c.ansatz_exprs().map_err(|e| ctx(&e))?;
        c.ode_expr().map_err(|e| ctx(&e))?;
        c.multiplier_expr().map_err(|e| ctx(&e))?;
        c.subode_expr().map_err(|e| ctx(&e))?;
        c.element_coords().map_err(|e| ctx(&e))?;
        for s in &c.solutions {
            for text in [&s.h, &s.u, &s.relation].into_iter().flatten() {
                parse_equation(text).map_err(|e| ctx(&e))?;
            }
            for v in s.restrict.values() {
                parse(v).map_err(|e| ctx(&e))?;
            }
        }
        Ok(())
    }

    pub fn representatives(&self) -> Result<Vec<Representative>> {
        let basis = projected_basis();
        self.optimal
            .representatives
            .iter()
            .map(|r| {
                let bad = |what: String| FixtureError::Invalid {
                    file: "optimal_system.json",
                    what,
                };
                let coeffs = basis
                    .parse_combination(&r.element)
                    .map_err(|e| bad(format!("{}: {e}", r.label)))?;
                let nonzero = r
                    .nonzero
                    .iter()
                    .map(|c| parse(c).map_err(|e| bad(format!("{}: {e}", r.label))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Representative {
                    label: r.label.clone(),
                    coeffs,
                    nonzero,
                })
            })
            .collect()
    }

    /// `Y1 .. Y10` from the fixture, in order.
    pub fn group_generators(&self) -> Result<Vec<VectorField>> {
        (1..=10)
            .map(|i| {
                let bad = |what: String| FixtureError::Invalid {
                    file: "equivalence_group.json",
                    what,
                };
                let key = format!("Y{i}");
                let text = self
                    .group
                    .generators
                    .get(&key)
                    .ok_or_else(|| bad(format!("missing {key}")))?;
                parse_field(text).map_err(|e| bad(format!("{key}: {e}")))
            })
            .collect()
    }

    /// The composed transformation in the coordinate order `t, x, u, f, …`.
    pub fn group_transformation(&self) -> Result<Vec<Expr>> {
        let eps: Vec<String> = (1..=10).map(|i| format!("eps{i}")).collect();
        let names: Vec<&str> = eps.iter().map(String::as_str).collect();
        crate::lie::field::COORDINATES
            .iter()
            .map(|c| {
                let bad = |what: String| FixtureError::Invalid {
                    file: "equivalence_group.json",
                    what,
                };
                let text = self
                    .group
                    .transformation
                    .get(*c)
                    .ok_or_else(|| bad(format!("missing {c}")))?;
                parse_with(text, &names).map_err(|e| bad(format!("{c}: {e}")))
            })
            .collect()
    }

    pub fn case(&self, n: u8) -> Option<&CaseFixture> {
        self.cases.iter().find(|c| c.case == n)
    }
}

impl TableFixture {
    /// Coordinates of every cell in `basis`.
    pub fn coordinates(&self, basis: &AlgebraBasis) -> Vec<Vec<Vec<Expr>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| basis.parse_combination(c).expect("validated on load"))
                    .collect()
            })
            .collect()
    }
}

impl CaseFixture {
    pub fn equation_instance(&self) -> crate::jet::Result<EquationInstance> {
        EquationInstance::from_lhs(parse_equation(&self.equation)?, &self.member)
    }

    pub fn x3_field(&self) -> crate::equivalence::Result<VectorField> {
        parse_field(&self.x3)
    }

    pub fn ansatz_exprs(&self) -> crate::expr::Result<(Expr, Expr)> {
        Ok((parse(&self.ansatz.z)?, parse(&self.ansatz.u)?))
    }

    pub fn ode_expr(&self) -> crate::expr::Result<Expr> {
        parse_equation(&self.ode)
    }

    pub fn multiplier_expr(&self) -> crate::expr::Result<Option<Expr>> {
        self.multiplier.as_deref().map(parse).transpose()
    }

    pub fn subode_expr(&self) -> crate::expr::Result<Option<Expr>> {
        self.subode.as_deref().map(parse_equation).transpose()
    }

    pub fn element_coords(&self) -> Result<Vec<Expr>> {
        projected_basis()
            .parse_combination(&self.element)
            .map_err(|e| FixtureError::Invalid {
                file: "cases.json",
                what: format!("case {}: {e}", self.case),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_load() {
        let set =
            FixtureSet::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap();
        assert_eq!(set.representatives().unwrap().len(), 34);
        assert_eq!(set.cases.len(), 4);
    }

    #[test]
    fn missing_directory_is_an_io_error() {
        let err = FixtureSet::load(Path::new("/nonexistent/fixtures")).unwrap_err();
        assert!(matches!(err, FixtureError::Io { .. }));
    }

    #[test]
    fn equations_with_equals_sign() {
        assert_eq!(
            parse_equation("h' = 2*h").unwrap(),
            parse("h' - 2*h").unwrap()
        );
    }
}
