//! The command pipelines behind the `lie-reduce` binary. Each command turns
//! the fixtures into a [`Report`]; library errors inside a case become `fail`
//! entries, fixture and usage problems abort the whole run.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::checks;
use crate::equivalence::{
    classify_element, equivalence_basis, equivalence_fields, exponentiate, parse_element,
    principal_algebra, projected_basis, verify_class_preservation, ClassMember, EquivError,
    FiniteTransformation, ELEMENT_NAMES,
};
use crate::expr::{Atom, Expr, Format, Q};
use crate::fixtures::{CaseFixture, FixtureError, FixtureSet, SolutionFixture};
use crate::jet::{check_symmetry, EquationInstance};
use crate::lie::adjoint_table;
use crate::lie::field::COORDINATES;
use crate::lie::optimal::{normalize_element, Representative};
use crate::lie::{AlgebraBasis, VectorField};
use crate::reduction::{
    back_substitute_w, integrate_numeric, match_ansatz, reduce, solve_closed_form, substitute_w,
    undo_ansatz, verify_ode, verify_pde, ClosedFormSolution, Grid, ReducedODE, ReductionAnsatz,
    ReductionError, ResidualReport, SolutionKind, SolveOutcome,
};
use crate::report::{Case, Report, Status, Table};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tables,
    VerifyGroup,
    Principal,
    Classify,
    Reduce,
    Solve,
    Check,
    All,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Tables,
        Command::VerifyGroup,
        Command::Principal,
        Command::Classify,
        Command::Reduce,
        Command::Solve,
        Command::Check,
        Command::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Tables => "tables",
            Command::VerifyGroup => "verify-group",
            Command::Principal => "principal",
            Command::Classify => "classify",
            Command::Reduce => "reduce",
            Command::Solve => "solve",
            Command::Check => "check",
            Command::All => "all",
        }
    }
}

impl FromStr for Command {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, SuiteError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| SuiteError::Usage(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Restrict case-based suites to one example, 1..=4.
    pub case: Option<u8>,
    /// Representative label or combination for `classify`.
    pub element: Option<String>,
    /// Overrides the numeric tolerances stored with the fixtures.
    pub tol: Option<f64>,
    pub seed: u64,
    /// Compare computed tables against the fixtures.
    pub compare: bool,
    /// Run the numeric checks in `reduce`.
    pub verify_numeric: bool,
    /// Directory for trajectory CSV files.
    pub csv_dir: Option<PathBuf>,
    /// Cases per randomized property.
    pub property_cases: usize,
    /// Random draws per member for class preservation.
    pub group_draws: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            case: None,
            element: None,
            tol: None,
            seed: 0,
            compare: false,
            verify_numeric: false,
            csv_dir: None,
            property_cases: checks::DEFAULT_CASES,
            group_draws: 50,
        }
    }
}

pub fn run(cmd: Command, fx: &FixtureSet, opts: &Options) -> Result<Report, SuiteError> {
    if let Some(n) = opts.case {
        if fx.case(n).is_none() {
            return Err(SuiteError::Usage(format!("no case {n}; expected 1..=4")));
        }
    }
    match cmd {
        Command::Tables => Ok(tables(fx, opts)),
        Command::VerifyGroup => verify_group(fx, opts),
        Command::Principal => Ok(principal()),
        Command::Classify => classify(fx, opts),
        Command::Reduce => reduce_cases(fx, opts),
        Command::Solve => Ok(solve(fx, opts)),
        Command::Check => check(fx, opts),
        Command::All => {
            let full = Options {
                compare: true,
                verify_numeric: true,
                element: None,
                ..opts.clone()
            };
            let mut r = Report::default();
            for c in &Command::ALL[..7] {
                r.extend(run(*c, fx, &full)?);
            }
            Ok(r)
        }
    }
}

/// Times `f`, turning an error into a failing case.
fn attempt(suite: &str, name: &str, f: impl FnOnce() -> Result<Case, String>) -> Case {
    let start = Instant::now();
    let case = f().unwrap_or_else(|e| Case::new(suite, name, Status::Fail).detail(e));
    case.elapsed(start.elapsed())
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn selected<'a>(fx: &'a FixtureSet, opts: &Options) -> Vec<&'a CaseFixture> {
    fx.cases
        .iter()
        .filter(|c| opts.case.is_none_or(|n| c.case == n))
        .collect()
}

// ---- tables ----

fn latex_label(label: &str) -> String {
    format!("{}_{{{}}}", &label[..1], &label[1..])
}

fn render_table(
    caption: &str,
    corner: &str,
    basis: &AlgebraBasis,
    cells: &[Vec<Vec<Expr>>],
    lead_column: bool,
) -> Table {
    let fmt = |f: Format| -> Vec<Vec<String>> {
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let s = basis.format_combination(c, lead_column.then_some(j), f);
                        if s.is_empty() {
                            "0".to_string()
                        } else {
                            s
                        }
                    })
                    .collect()
            })
            .collect()
    };
    Table {
        caption: caption.to_string(),
        corner: corner.to_string(),
        labels: basis.labels().to_vec(),
        cells: fmt(Format::Plain),
        latex_labels: basis.labels().iter().map(|l| latex_label(l)).collect(),
        latex_cells: fmt(Format::Latex),
    }
}

fn compare_cells(
    suite: &str,
    name: &str,
    basis: &AlgebraBasis,
    computed: &[Vec<Vec<Expr>>],
    expected: &[Vec<Vec<Expr>>],
) -> Case {
    let labels = basis.labels();
    let mut matches = 0;
    let mut total = 0;
    let mut diffs = Vec::new();
    for (i, (row_c, row_e)) in computed.iter().zip(expected).enumerate() {
        for (j, (c, e)) in row_c.iter().zip(row_e).enumerate() {
            total += 1;
            if c == e {
                matches += 1;
            } else {
                diffs.push(format!(
                    "({}, {}): computed {}, expected {}",
                    labels[i],
                    labels[j],
                    basis.format_combination(c, Some(j), Format::Plain),
                    basis.format_combination(e, Some(j), Format::Plain)
                ));
            }
        }
    }
    let mut detail = format!("{matches}/{total} entries match");
    for d in diffs {
        detail.push('\n');
        detail.push_str(&d);
    }
    Case::new(
        suite,
        name,
        Status::from_bool(matches == total && total == 64),
    )
    .detail(detail)
    .data(json!({ "matches": matches, "total": total }))
}

pub fn tables(fx: &FixtureSet, opts: &Options) -> Report {
    const SUITE: &str = "tables";
    let basis = projected_basis();
    let mut report = Report::default();

    let start = Instant::now();
    match basis.commutator_table() {
        Ok(t) => {
            let computed: Vec<Vec<Vec<Expr>>> = t
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| c.iter().cloned().map(Expr::from_q).collect())
                        .collect()
                })
                .collect();
            report.tables.push(render_table(
                &fx.table1.caption,
                "[,]",
                &basis,
                &computed,
                false,
            ));
            if opts.compare {
                let expected = fx.table1.coordinates(&basis);
                report.push(
                    compare_cells(SUITE, "commutator table", &basis, &computed, &expected)
                        .elapsed(start.elapsed()),
                );
            }
        }
        Err(e) => {
            report.push(Case::new(SUITE, "commutator table", Status::Fail).detail(e.to_string()))
        }
    }

    let start = Instant::now();
    let eps = Expr::sym(fx.table2.parameter.as_deref().unwrap_or("eps"));
    match adjoint_table(&basis, &eps) {
        Ok(t) => {
            let computed: Vec<Vec<Vec<Expr>>> = t
                .iter()
                .map(|row| row.iter().map(|r| r.coords.clone()).collect())
                .collect();
            report.tables.push(render_table(
                &fx.table2.caption,
                "Ad",
                &basis,
                &computed,
                true,
            ));
            if opts.compare {
                let expected = fx.table2.coordinates(&basis);
                let mut case = compare_cells(SUITE, "adjoint table", &basis, &computed, &expected);
                let truncated = t.iter().flatten().filter(|r| r.truncated()).count();
                if truncated > 0 {
                    case.detail
                        .push_str(&format!("\n{truncated} entries use a truncated series"));
                }
                report.push(case.elapsed(start.elapsed()));
            }
        }
        Err(e) => {
            report.push(Case::new(SUITE, "adjoint table", Status::Fail).detail(e.to_string()))
        }
    }
    report
}

// ---- equivalence group ----

fn eps_symbols() -> Vec<Expr> {
    (1..=10).map(|i| Expr::sym(&format!("eps{i}"))).collect()
}

fn maps_diff(computed: &[Expr], expected: &[Expr]) -> Vec<String> {
    COORDINATES
        .iter()
        .zip(computed.iter().zip(expected))
        .filter(|(_, (c, e))| c != e)
        .map(|(name, (c, e))| format!("{name}: computed {c}, expected {e}"))
        .collect()
}

fn random_eps(rng: &mut ChaCha8Rng) -> Vec<Expr> {
    (0..10)
        .map(|_| {
            let n: i64 = rng.gen_range(-3..=3);
            let d: i64 = rng.gen_range(1..=3);
            Expr::rational(n, d)
        })
        .collect()
}

pub fn verify_group(fx: &FixtureSet, opts: &Options) -> Result<Report, SuiteError> {
    const SUITE: &str = "verify-group";
    let generators = fx.group_generators()?;
    let expected = fx.group_transformation()?;
    let fields = equivalence_fields();
    let eps = eps_symbols();
    let mut report = Report::default();

    report.push(attempt(SUITE, "generators Y1..Y10", || {
        let bad: Vec<String> = (0..10)
            .filter(|&i| generators[i] != fields[i])
            .map(|i| {
                format!(
                    "Y{}: computed {}, expected {}",
                    i + 1,
                    fields[i],
                    generators[i]
                )
            })
            .collect();
        Ok(Case::new(
            SUITE,
            "generators Y1..Y10",
            Status::from_bool(bad.is_empty()),
        )
        .detail(bad.join("\n")))
    }));

    for i in 0..10 {
        let name = format!("flow of Y{}", i + 1);
        report.push(attempt(SUITE, &name, || {
            let t = exponentiate(&fields[i], &eps[i]).map_err(err)?;
            let mut b = crate::expr::Binding::new();
            for (j, e) in eps.iter().enumerate() {
                if j != i {
                    b.insert(e.as_atom().expect("symbol").clone(), Expr::zero());
                }
            }
            let slice: Vec<Expr> = expected.iter().map(|e| e.substitute(&b)).collect();
            let bad = maps_diff(t.maps(), &slice);
            Ok(Case::new(SUITE, &name, Status::from_bool(bad.is_empty())).detail(bad.join("\n")))
        }));
    }

    report.push(attempt(SUITE, "composed transformation", || {
        let t = FiniteTransformation::symbolic();
        let bad = maps_diff(t.maps(), &expected);
        Ok(Case::new(
            SUITE,
            "composed transformation",
            Status::from_bool(bad.is_empty()),
        )
        .detail(bad.join("\n")))
    }));

    report.push(attempt(SUITE, "one-parameter group law", || {
        let (a, b) = (Expr::sym("s"), Expr::sym("r"));
        let mut bad = Vec::new();
        for (i, y) in fields.iter().enumerate() {
            let two = exponentiate(y, &a)
                .map_err(err)?
                .then(&exponentiate(y, &b).map_err(err)?);
            let one = exponentiate(y, &(&a + &b)).map_err(err)?;
            if two.maps() != one.maps() {
                bad.push(format!("Y{}", i + 1));
            }
        }
        Ok(Case::new(
            SUITE,
            "one-parameter group law",
            Status::from_bool(bad.is_empty()),
        )
        .detail(if bad.is_empty() {
            String::new()
        } else {
            format!("fails for {}", bad.join(", "))
        }))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let draws: Vec<Vec<Expr>> = (0..opts.group_draws)
        .map(|_| random_eps(&mut rng))
        .collect();
    for c in selected(fx, opts) {
        let name = format!("class preservation, case {}", c.case);
        report.push(attempt(SUITE, &name, || {
            let mut failures = Vec::new();
            for eps in &draws {
                let t = FiniteTransformation::from_parameters(eps).map_err(err)?;
                let r = verify_class_preservation(&t, &c.member).map_err(err)?;
                if !r.is_zero() {
                    let shown: Vec<String> = eps.iter().map(ToString::to_string).collect();
                    failures.push(format!("eps = ({}): residual {r}", shown.join(", ")));
                }
            }
            Ok(
                Case::new(SUITE, &name, Status::from_bool(failures.is_empty())).detail(format!(
                    "{}/{} draws preserve the class",
                    draws.len() - failures.len(),
                    draws.len()
                )),
            )
        }));
    }
    Ok(report)
}

// ---- principal algebra ----

pub fn principal() -> Report {
    const SUITE: &str = "principal";
    let mut report = Report::default();
    let start = Instant::now();
    let p = principal_algebra();
    let expected = [VectorField::partial("t"), VectorField::partial("x")];
    let shown: Vec<String> = p.basis.fields().iter().map(ToString::to_string).collect();
    report.push(
        Case::new(
            SUITE,
            "basis",
            Status::from_bool(p.basis.fields() == expected),
        )
        .detail(format!("span{{{}}}", shown.join(", ")))
        .elapsed(start.elapsed()),
    );
    let constraints: Vec<String> = p.constraints.iter().map(ToString::to_string).collect();
    let want: Vec<String> = (3..=10).map(|i| format!("c{i}")).collect();
    report.push(
        Case::new(SUITE, "constraints", Status::from_bool(constraints == want))
            .detail(format!("{} = 0", constraints.join(" = "))),
    );
    let eq = EquationInstance::from_member(&ClassMember::opaque());
    for v in p.basis.fields() {
        let name = format!("symmetry {v} with arbitrary elements");
        report.push(attempt(SUITE, &name, || {
            let r = check_symmetry(v, &eq).map_err(err)?;
            Ok(Case::new(SUITE, &name, Status::from_bool(r.is_zero())).residual(&r))
        }));
    }
    report
}

// ---- classification ----

/// Resolves `Z3`, `Z^(3)` or `Z^(8):a=1,b=0` to a representative, and
/// anything else as a combination of the projected basis.
pub fn resolve_element(
    text: &str,
    basis: &AlgebraBasis,
    reps: &[Representative],
) -> Result<(String, Vec<Expr>), SuiteError> {
    let (head, params) = match text.split_once(':') {
        Some((h, p)) => (h.trim(), Some(p)),
        None => (text.trim(), None),
    };
    let number = head
        .strip_prefix("Z^(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| head.strip_prefix('Z'))
        .filter(|n| !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()));
    if let Some(n) = number {
        let label = format!("Z^({n})");
        let rep = reps
            .iter()
            .find(|r| r.label == label)
            .ok_or_else(|| SuiteError::Usage(format!("no representative {label}")))?;
        let mut values = BTreeMap::new();
        for kv in params.into_iter().flat_map(|p| p.split(',')) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| SuiteError::Usage(format!("parameter `{kv}` is not name=value")))?;
            let q = crate::expr::parse(v.trim())
                .ok()
                .and_then(|e| e.as_rational())
                .ok_or_else(|| {
                    SuiteError::Usage(format!("parameter value `{v}` is not rational"))
                })?;
            values.insert(k.trim().to_string(), q);
        }
        let unknown: Vec<&String> = values
            .keys()
            .filter(|k| !rep.params().contains(*k))
            .collect();
        if !unknown.is_empty() {
            return Err(SuiteError::Usage(format!(
                "{label} has no parameter {}",
                unknown[0]
            )));
        }
        let shown = if values.is_empty() {
            label
        } else {
            let kv: Vec<String> = values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            format!("{label} with {}", kv.join(", "))
        };
        return Ok((shown, rep.instantiate(&values)));
    }
    if params.is_some() {
        return Err(SuiteError::Usage(format!(
            "parameters need a representative label, got `{head}`"
        )));
    }
    let coeffs = basis
        .parse_combination(text)
        .map_err(|e| SuiteError::Usage(e.to_string()))?;
    if coeffs.iter().all(Expr::is_zero) {
        return Err(SuiteError::Usage(
            "the zero element cannot be classified".into(),
        ));
    }
    Ok((
        basis.format_combination(&coeffs, None, Format::Plain),
        coeffs,
    ))
}

fn member_json(m: &ClassMember) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = ELEMENT_NAMES
        .iter()
        .zip(m.elements())
        .map(|(n, e)| (n.to_string(), json!(e.to_string())))
        .collect();
    serde_json::Value::Object(map)
}

fn member_lines(m: &ClassMember) -> String {
    ELEMENT_NAMES
        .iter()
        .zip(m.elements())
        .map(|(n, e)| format!("{n} = {e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn compare_classification(c: &CaseFixture, coeffs: &[Expr]) -> Result<(Vec<String>, Case), String> {
    const SUITE: &str = "classify";
    let name = format!("case {}: {}", c.case, c.element);
    let got = classify_element(coeffs).map_err(err)?;
    let mut bad = Vec::new();
    for (n, (g, e)) in ELEMENT_NAMES
        .iter()
        .zip(got.member.elements().into_iter().zip(c.member.elements()))
    {
        if g != e {
            bad.push(format!("{n}: computed {g}, expected {e}"));
        }
    }
    let x3 = c.x3_field().map_err(err)?;
    if got.x3 != x3 {
        bad.push(format!("X3: computed {}, expected {x3}", got.x3));
    }
    let lift = parse_element(&equivalence_basis(), &c.generator).map_err(err)?;
    if got.lift != lift {
        bad.push(format!(
            "generator: computed {}, expected {}",
            got.lift, c.generator
        ));
    }
    let mut detail = format!("{}\nX3 = {}", member_lines(&got.member), got.x3);
    for b in &bad {
        detail.push('\n');
        detail.push_str(b);
    }
    let case = Case::new(SUITE, name, Status::from_bool(bad.is_empty()))
        .detail(detail)
        .data(json!({ "member": member_json(&got.member), "x3": got.x3.to_string(), "generator": got.lift.to_string() }));
    Ok((bad, case))
}

pub fn classify(fx: &FixtureSet, opts: &Options) -> Result<Report, SuiteError> {
    const SUITE: &str = "classify";
    let basis = projected_basis();
    let mut report = Report::default();
    if let Some(text) = &opts.element {
        let reps = fx.representatives()?;
        let (label, coeffs) = resolve_element(text, &basis, &reps)?;
        let start = Instant::now();
        let fixture = fx
            .cases
            .iter()
            .find(|c| c.element_coords().ok().as_deref() == Some(&coeffs[..]));
        let case = match (fixture, classify_element(&coeffs)) {
            (Some(c), Ok(_)) => match compare_classification(c, &coeffs) {
                Ok((_, case)) => {
                    let detail = format!(
                        "{label} = {}\nmatches case {}\n{}",
                        c.element, c.case, case.detail
                    );
                    Case {
                        name: label.clone(),
                        detail,
                        ..case
                    }
                }
                Err(e) => Case::new(SUITE, &label, Status::Fail).detail(e),
            },
            (None, Ok(got)) => {
                let combo = basis.format_combination(&coeffs, None, Format::Plain);
                Case::new(SUITE, &label, Status::Pass)
                    .detail(format!("{label} = {combo}\n{}\nX3 = {}", member_lines(&got.member), got.x3))
                    .data(json!({ "member": member_json(&got.member), "x3": got.x3.to_string(), "generator": got.lift.to_string() }))
            }
            (_, Err(e @ (EquivError::ClassificationUnsupported(_) | EquivError::Degenerate))) => {
                Case::new(SUITE, &label, Status::Unsupported).detail(e.to_string())
            }
            (_, Err(e)) => Case::new(SUITE, &label, Status::Fail).detail(e.to_string()),
        };
        report.push(case.elapsed(start.elapsed()));
        return Ok(report);
    }
    for c in selected(fx, opts) {
        let name = format!("case {}: {}", c.case, c.element);
        let coeffs = c.element_coords()?;
        report.push(attempt(SUITE, &name, || {
            compare_classification(c, &coeffs).map(|(_, case)| case)
        }));
    }
    Ok(report)
}

// ---- reductions ----

/// `e` divided by the coefficient of its highest `dep` derivative.
fn monic(e: &Expr, dep: &str, order: u8) -> Result<Expr, String> {
    let top = Expr::prime(dep, order);
    let atom = top.as_atom().ok_or("derivative is not an atom")?;
    let k = e.degree_in(atom);
    let lead = e.coeff(atom, k).map_err(err)?;
    e.try_div(&lead).map_err(err)
}

struct Reduction {
    eq: EquationInstance,
    ansatz: ReductionAnsatz,
    ode: ReducedODE,
}

fn reduce_fixture(c: &CaseFixture) -> Result<Reduction, String> {
    let coeffs = c.element_coords().map_err(err)?;
    let x3 = classify_element(&coeffs).map_err(err)?.x3;
    let ansatz = match_ansatz(&x3).map_err(err)?;
    let eq = c.equation_instance().map_err(err)?;
    let ode = reduce(&eq, &ansatz).map_err(err)?;
    Ok(Reduction { eq, ansatz, ode })
}

fn restriction(s: &SolutionFixture) -> Result<crate::expr::Binding, String> {
    let mut b = crate::expr::Binding::new();
    for (k, v) in &s.restrict {
        b.insert(Atom::sym(k), crate::expr::parse(v).map_err(err)?);
    }
    Ok(b)
}

fn restricted(ode: &ReducedODE, b: &crate::expr::Binding) -> ReducedODE {
    ReducedODE {
        lhs: ode.lhs.substitute(b),
        ..ode.clone()
    }
}

fn env(params: &BTreeMap<String, f64>) -> impl Fn(&Atom) -> Option<f64> + '_ {
    move |a| match a {
        Atom::Sym(s) => params.get(s.name()).copied(),
        _ => None,
    }
}

fn reduce_case(c: &CaseFixture, opts: &Options, report: &mut Report) {
    const SUITE: &str = "reduce";
    let tag = format!("case {}", c.case);
    let red = match reduce_fixture(c) {
        Ok(r) => r,
        Err(e) => {
            report.push(Case::new(SUITE, format!("{tag}: reduction"), Status::Fail).detail(e));
            return;
        }
    };
    let Reduction { eq, ansatz, ode } = &red;

    report.push(attempt(SUITE, &format!("{tag}: ansatz"), || {
        let (z, u) = c.ansatz_exprs().map_err(err)?;
        let ok = ansatz.z == z && ansatz.shape == u;
        Ok(
            Case::new(SUITE, format!("{tag}: ansatz"), Status::from_bool(ok)).detail(format!(
                "z = {}, u = {} ({}, {})",
                ansatz.z, ansatz.shape, ansatz.pattern, ansatz.domain
            )),
        )
    }));

    report.push(attempt(SUITE, &format!("{tag}: reduced ode"), || {
        let fixture = c.ode_expr().map_err(err)?;
        let order = ReducedODE::new(fixture.clone()).order();
        let diff = &monic(&ode.lhs, &ode.dep, ode.order())? - &monic(&fixture, "h", order)?;
        let identity = ode.identity_residual().map_err(err)?;
        let mut detail = format!("{} = 0\nmultiplier {}", ode.lhs, ode.multiplier);
        let mut ok = diff.is_zero() && order == ode.order() && identity.is_zero();
        if !identity.is_zero() {
            detail.push_str(&format!("\nsource - multiplier*ode = {identity}"));
        }
        if let Some(m) = c.multiplier_expr().map_err(err)? {
            if m != ode.multiplier {
                ok = false;
                detail.push_str(&format!("\nexpected multiplier {m}"));
            }
        }
        Ok(
            Case::new(SUITE, format!("{tag}: reduced ode"), Status::from_bool(ok))
                .residual(&diff)
                .detail(detail)
                .data(
                    json!({ "ode": ode.lhs.to_string(), "multiplier": ode.multiplier.to_string() }),
                ),
        )
    }));

    let name = format!("{tag}: w-substitution");
    report.push(attempt(SUITE, &name, || {
        let expected = c.subode_expr().map_err(err)?;
        match (substitute_w(ode), expected) {
            (Ok(w), Some(fixture)) => {
                let mut bad = Vec::new();
                for sigma in [1, -1] {
                    let s = |e: &Expr| e.subs_sym("sigma", &Expr::int(sigma));
                    let d = &monic(&s(&w.lhs), &w.dep, w.order())?
                        - &monic(&s(&fixture), "w", w.order())?;
                    if !d.is_zero() {
                        bad.push(format!("sigma = {sigma}: difference {d}"));
                    }
                }
                let back = back_substitute_w(&w.lhs).map_err(err)?;
                let ratio = back.try_div(&ode.lhs).map_err(err)?;
                if ratio.as_rational().is_none() {
                    bad.push(format!(
                        "back substitution is not a constant multiple: ratio {ratio}"
                    ));
                }
                let mut detail = format!("{} = 0\nback substitution = {ratio} * ode", w.lhs);
                for b in &bad {
                    detail.push('\n');
                    detail.push_str(b);
                }
                Ok(Case::new(SUITE, &name, Status::from_bool(bad.is_empty())).detail(detail))
            }
            (Ok(w), None) => Ok(Case::new(SUITE, &name, Status::Fail)
                .detail(format!("no reference equation, computed {} = 0", w.lhs))),
            (Err(ReductionError::SubstitutionInvalid(why)), None) => {
                Ok(Case::new(SUITE, &name, Status::Pass).detail(format!("not applicable: {why}")))
            }
            (Err(e), _) => Err(e.to_string()),
        }
    }));

    if !opts.verify_numeric {
        return;
    }
    for s in &c.solutions {
        if let (Some(h), Some(n)) = (&s.h, &s.numeric) {
            let name = format!("{tag}: numeric {}", s.kind);
            report.push(attempt(SUITE, &name, || {
                let b = restriction(s)?;
                let target = restricted(ode, &b);
                let h = crate::expr::parse(h).map_err(err)?.substitute(&b);
                let order = target.order();
                let mut initial = Vec::with_capacity(order as usize);
                let mut d = h.clone();
                let mut at = n.params.clone();
                at.insert("z".into(), n.span.0);
                for _ in 0..order {
                    initial.push(d.eval(&env(&at)).ok_or("closed form does not evaluate")?);
                    d = d.diff_sym("z");
                }
                let tol = opts.tol.unwrap_or(n.tol);
                let traj =
                    integrate_numeric(&target, &n.params, &initial, n.span, tol).map_err(err)?;
                let dev = traj.max_deviation(|z| {
                    let mut at = n.params.clone();
                    at.insert("z".into(), z);
                    let v = h.eval(&env(&at));
                    v.unwrap_or(f64::NAN)
                });
                if let Some(dir) = &opts.csv_dir {
                    let path = dir.join(format!("case{}_{}.csv", c.case, s.kind));
                    let file = std::fs::File::create(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    traj.write_csv(file).map_err(err)?;
                }
                Ok(Case::new(SUITE, &name, Status::from_bool(dev <= tol))
                    .residual(format!("{dev:.3e}"))
                    .detail(format!(
                        "max |h_numeric - h| = {dev:.3e} on [{}, {}], tol {tol:.0e}",
                        n.span.0, n.span.1
                    ))
                    .data(json!({ "max_deviation": dev, "steps": traj.points.len() })))
            }));
        }
        if let (Some(u), Some(p)) = (&s.u, &s.pde_residual) {
            let base = format!("{tag}: pde residual");
            let start = Instant::now();
            let measured = (|| -> Result<ResidualReport, String> {
                let u = crate::expr::parse(u).map_err(err)?;
                let f = |t: f64, x: f64| {
                    let mut at = p.params.clone();
                    at.insert("t".into(), t);
                    at.insert("x".into(), x);
                    let v = u.eval(&env(&at));
                    v.unwrap_or(f64::NAN)
                };
                let grid = Grid {
                    t: p.t,
                    x: p.x,
                    step: p.step,
                };
                ResidualReport::measure(&tag, eq, &f, &p.params, &grid).map_err(err)
            })();
            match measured {
                Ok(r) => {
                    let tol = opts.tol.unwrap_or(p.tol);
                    let data = serde_json::to_value(&r).expect("report serializes");
                    report.push(
                        Case::new(
                            SUITE,
                            format!("{base} at step {}", p.step),
                            Status::from_bool(r.max_residual <= tol),
                        )
                        .residual(format!("{:.3e}", r.max_residual))
                        .detail(format!(
                            "max residual {:.3e}, tol {tol:.0e}",
                            r.max_residual
                        ))
                        .data(data.clone())
                        .elapsed(start.elapsed()),
                    );
                    let ok = (r.rate - p.rate).abs() <= p.rate_tol;
                    report.push(
                        Case::new(
                            SUITE,
                            format!("{base} convergence order"),
                            Status::from_bool(ok),
                        )
                        .detail(format!(
                            "measured order {:.3}, expected {} ± {}",
                            r.rate, p.rate, p.rate_tol
                        ))
                        .data(data),
                    );
                }
                Err(e) => report.push(Case::new(SUITE, base, Status::Fail).detail(e)),
            }
        }
    }
}

pub fn reduce_cases(fx: &FixtureSet, opts: &Options) -> Result<Report, SuiteError> {
    if let Some(dir) = &opts.csv_dir {
        std::fs::create_dir_all(dir).map_err(|source| SuiteError::Output {
            path: dir.clone(),
            source,
        })?;
    }
    let mut report = Report::default();
    for c in selected(fx, opts) {
        reduce_case(c, opts, &mut report);
    }
    Ok(report)
}

// ---- closed-form solutions ----

fn solve_fixture(c: &CaseFixture, s: &SolutionFixture, red: &Reduction) -> Result<Case, String> {
    const SUITE: &str = "solve";
    let name = format!("case {}: {}", c.case, s.kind);
    let b = restriction(s)?;
    let ode = restricted(&red.ode, &b);
    let outcome = solve_closed_form(&ode).map_err(err)?;
    let Some(sol) = outcome.solution() else {
        return Ok(Case::new(SUITE, &name, Status::Fail).detail("no closed form found"));
    };
    let restrict_note = if s.restrict.is_empty() {
        String::new()
    } else {
        let kv: Vec<String> = s
            .restrict
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        format!(" with {}", kv.join(", "))
    };
    match s.kind.as_str() {
        "bernoulli" | "linear-first-order" => {
            let want = if s.kind == "bernoulli" {
                SolutionKind::Bernoulli
            } else {
                SolutionKind::LinearFirstOrder
            };
            let h = crate::expr::parse(s.h.as_deref().ok_or("fixture lacks h")?).map_err(err)?;
            let residual = verify_ode(sol, &ode).map_err(err)?;
            let fixture_residual = verify_ode(
                &ClosedFormSolution {
                    explicit: Some(h.clone()),
                    ..sol.clone()
                },
                &ode,
            )
            .map_err(err)?;
            let same = sol.explicit.as_ref() == Some(&h);
            let ok = sol.kind == want && residual.is_zero() && fixture_residual.is_zero() && same;
            let mut detail = format!("{}{restrict_note}", sol.describe());
            if !same {
                detail.push_str(&format!("\nexpected h = {h}"));
            }
            if !fixture_residual.is_zero() {
                detail.push_str(&format!("\nreference solution leaves {fixture_residual}"));
            }
            Ok(Case::new(SUITE, &name, Status::from_bool(ok))
                .residual(&residual)
                .detail(detail))
        }
        "abel-implicit" => {
            let rel = crate::fixtures::parse_equation(
                s.relation.as_deref().ok_or("fixture lacks relation")?,
            )
            .map_err(err)?;
            let check = ClosedFormSolution {
                implicit: Some(rel.clone()),
                explicit: None,
                ..sol.clone()
            };
            let residual = verify_ode(&check, &ode).map_err(err)?;
            let derived = verify_ode(sol, &ode).map_err(err)?;
            let mut detail = format!(
                "{} (y read as h)",
                s.relation.as_deref().unwrap_or_default()
            );
            detail.push_str(&format!(
                "\nderived relation {} leaves {derived}",
                sol.describe()
            ));
            if let Some(printed) = &s.printed {
                let lit = crate::fixtures::parse_equation(printed).map_err(err)?;
                let lit_res = verify_ode(
                    &ClosedFormSolution {
                        implicit: Some(lit),
                        ..check.clone()
                    },
                    &ode,
                );
                let verdict = match lit_res {
                    Ok(r) if r.is_zero() => "holds".to_string(),
                    Ok(_) => "does not hold (y is an undefined symbol)".to_string(),
                    Err(e) => format!("cannot be checked: {e}"),
                };
                detail.push_str(&format!("\nliteral printed relation {verdict}"));
            }
            Ok(Case::new(
                SUITE,
                &name,
                Status::from_bool(residual.is_zero() && derived.is_zero()),
            )
            .residual(&residual)
            .detail(detail))
        }
        "explicit-pde" => {
            let want = crate::expr::parse(s.u.as_deref().ok_or("fixture lacks u")?).map_err(err)?;
            let u = undo_ansatz(sol, &red.ansatz).map_err(err)?;
            let residual = verify_pde(&u, &red.eq).map_err(err)?;
            let same = u.explicit.as_ref() == Some(&want);
            let mut detail = u.describe();
            if !same {
                detail.push_str(&format!("\nexpected u = {want}"));
            }
            Ok(
                Case::new(SUITE, &name, Status::from_bool(same && residual.is_zero()))
                    .residual(&residual)
                    .detail(detail),
            )
        }
        other => Ok(Case::new(SUITE, &name, Status::Unsupported)
            .detail(format!("unknown solution kind {other}"))),
    }
}

pub fn solve(fx: &FixtureSet, opts: &Options) -> Report {
    const SUITE: &str = "solve";
    let mut report = Report::default();
    for c in selected(fx, opts) {
        let red = match reduce_fixture(c) {
            Ok(r) => r,
            Err(e) => {
                report.push(
                    Case::new(SUITE, format!("case {}: reduction", c.case), Status::Fail).detail(e),
                );
                continue;
            }
        };
        if c.solutions.is_empty() {
            let name = format!("case {}: closed form", c.case);
            report.push(attempt(SUITE, &name, || {
                let note = c
                    .unsolved
                    .as_deref()
                    .map(|n| format!("\nreference note: {n}"))
                    .unwrap_or_default();
                Ok(match solve_closed_form(&red.ode).map_err(err)? {
                    SolveOutcome::Unsolved(why) => {
                        Case::new(SUITE, &name, Status::Unsupported).detail(format!("{why}{note}"))
                    }
                    SolveOutcome::Solved(s) => {
                        let r = verify_ode(&s, &red.ode).map_err(err)?;
                        Case::new(SUITE, &name, Status::from_bool(r.is_zero()))
                            .residual(&r)
                            .detail(s.describe())
                    }
                })
            }));
        }
        for s in &c.solutions {
            let name = format!("case {}: {}", c.case, s.kind);
            report.push(attempt(SUITE, &name, || solve_fixture(c, s, &red)));
        }
    }
    report
}

// ---- properties ----

pub fn check(fx: &FixtureSet, opts: &Options) -> Result<Report, SuiteError> {
    const SUITE: &str = "check";
    let reps = fx.representatives()?;
    let basis = projected_basis();
    let mut report = Report::default();
    for (i, f) in [
        checks::jacobi as fn(u64, usize) -> checks::PropertyOutcome,
        checks::ad_automorphism,
        checks::ad_group_law,
        checks::leibniz,
    ]
    .into_iter()
    .enumerate()
    {
        let start = Instant::now();
        let o = f(opts.seed.wrapping_add(i as u64), opts.property_cases);
        report.push(property_case(SUITE, o).elapsed(start.elapsed()));
    }
    let start = Instant::now();
    let o = checks::normalize_idempotence(opts.seed.wrapping_add(4), opts.property_cases, &reps);
    report.push(property_case(SUITE, o).elapsed(start.elapsed()));

    for sc in &fx.optimal.spot_checks {
        let name = format!("normalize {}", sc.input);
        report.push(attempt(SUITE, &name, || {
            let coeffs = basis.parse_combination(&sc.input).map_err(err)?;
            let q: Vec<Q> = coeffs
                .iter()
                .map(|c| {
                    c.as_rational()
                        .ok_or_else(|| format!("{c} is not rational"))
                })
                .collect::<Result<_, _>>()?;
            let n = normalize_element(&q, &basis, &reps);
            let mut detail = format!("-> {}", n.label_or_unresolved());
            if !n.params.is_empty() {
                let kv: Vec<String> = n.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                detail.push_str(&format!(" with {}", kv.join(", ")));
            }
            for v in &n.violations {
                detail.push_str(&format!("\nconstraint violated: {v}"));
            }
            Ok(Case::new(
                SUITE,
                &name,
                Status::from_bool(n.label.as_deref() == Some(sc.expected.as_str())),
            )
            .detail(detail))
        }));
    }
    Ok(report)
}

fn property_case(suite: &str, o: checks::PropertyOutcome) -> Case {
    let detail = match &o.example {
        Some(e) => format!("{}/{} cases fail; first: {e}", o.failures, o.cases),
        None => format!("{} cases", o.cases),
    };
    Case::new(suite, o.name, Status::from_bool(o.passed()))
        .detail(detail)
        .data(json!({ "cases": o.cases, "failures": o.failures }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commands_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!(matches!(
            "bogus".parse::<Command>(),
            Err(SuiteError::Usage(_))
        ));
    }

    #[test]
    fn element_labels_resolve() {
        let fx = FixtureSet::load_default().unwrap();
        let reps = fx.representatives().unwrap();
        let basis = projected_basis();
        let (_, a) = resolve_element("Z3", &basis, &reps).unwrap();
        let (_, b) = resolve_element("Z^(3)", &basis, &reps).unwrap();
        let (_, c) = resolve_element("Z1 + Z2", &basis, &reps).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(resolve_element("Z^(99)", &basis, &reps).is_err());
        assert!(resolve_element("Z3:q=1", &basis, &reps).is_err());
    }

    #[test]
    fn principal_suite_passes() {
        let r = principal();
        assert!(!r.has_failures(), "{}", r.emit(Format::Plain));
    }
}
