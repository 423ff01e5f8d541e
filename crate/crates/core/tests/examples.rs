macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(expressions, "expressions.rs");
example!(prolongation, "prolongation.rs");
example!(algebra_tables, "algebra_tables.rs");
example!(equivalence_group, "equivalence_group.rs");
example!(classification, "classification.rs");
example!(reduction, "reduction.rs");
example!(closed_forms, "closed_forms.rs");
example!(numerics, "numerics.rs");
example!(reports, "reports.rs");

#[test]
fn expressions_example_runs() {
    expressions::run_example().expect("expressions example");
}

#[test]
fn prolongation_example_runs() {
    prolongation::run_example().expect("prolongation example");
}

#[test]
fn algebra_tables_example_runs() {
    algebra_tables::run_example().expect("algebra tables example");
}

#[test]
fn equivalence_group_example_runs() {
    equivalence_group::run_example().expect("equivalence group example");
}

#[test]
fn classification_example_runs() {
    classification::run_example().expect("classification example");
}

#[test]
fn reduction_example_runs() {
    reduction::run_example().expect("reduction example");
}

#[test]
fn closed_forms_example_runs() {
    closed_forms::run_example().expect("closed forms example");
}

#[test]
fn numerics_example_runs() {
    numerics::run_example().expect("numerics example");
}

#[test]
fn reports_example_runs() {
    reports::run_example().expect("reports example");
}
