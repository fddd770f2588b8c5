use std::collections::BTreeSet;

use super::*;
use crate::analyzer::{parse, Cfg};
use crate::bases::{Interval, IntervalBasis};
use crate::scalar::{Scalar, ScalarMode};
use crate::weakrel::WeakRel;

const Z: ScalarMode = ScalarMode::Int;

fn ints(v: &[i64]) -> BTreeSet<Scalar> {
    v.iter().map(|&k| Scalar::int(k)).collect()
}

fn values_at(run: &ConcreteRun, node: usize, var: usize) -> BTreeSet<Scalar> {
    run.states[node].iter().map(|p| p[var].clone()).collect()
}

#[test]
fn random_walk_reaches_odd_values() {
    let src = std::fs::read_to_string(format!(
        "{}/../../programs/randomwalk",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let cfg = Cfg::build(&parse(&src).unwrap(), Z);
    let run = concrete_run(&cfg, 100, &[], 1_000_000).unwrap();
    assert!(!run.truncated);
    assert_eq!(
        values_at(&run, cfg.labels["bullet"], 2),
        ints(&[-5, -3, -1, 1, 3, 5])
    );
}

#[test]
fn straight_line_program() {
    let cfg = Cfg::build(&parse("x = 1; y = x + 1;").unwrap(), Z);
    let run = concrete_run(&cfg, 0, &[], 100).unwrap();
    let exit: Vec<_> = run.states[cfg.exit].iter().cloned().collect();
    assert_eq!(
        exit,
        vec![vec![Scalar::zero(), Scalar::int(1), Scalar::int(2)]]
    );
}

#[test]
fn budget_truncates_unbounded_loops() {
    let cfg = Cfg::build(&parse("x = 0; while (?) { x = x + 2; }").unwrap(), Z);
    let run = concrete_run(&cfg, 5, &[], 1000).unwrap();
    assert!(run.truncated);
    assert_eq!(values_at(&run, cfg.exit, 1), ints(&[0, 2, 4, 6, 8, 10]));
    assert_eq!(
        concrete_run(&cfg, 5000, &[], 100).unwrap_err(),
        ConcreteError::BudgetExhausted(100)
    );
}

#[test]
fn havoc_ranges_over_the_given_values() {
    let cfg = Cfg::build(&parse("x = ?; if (x >= 1) { @pos: skip; }").unwrap(), Z);
    let run = concrete_run(&cfg, 0, &havoc_values(Z), 100).unwrap();
    assert_eq!(values_at(&run, cfg.labels["pos"], 1), ints(&[1, 2]));
}

#[test]
fn gamma_enumeration_and_paths() {
    let d = WeakRel::new(IntervalBasis::new(Z), 3).unwrap();
    let m = d.from_upper(|i, j| match (i, j) {
        (0, 1) => Interval::finite(0, 2),
        (1, 2) => Interval::finite(1, 1),
        _ => Interval::top(),
    });
    let w = Window::integers(-5, 5);
    let pts = gamma_enum(&d, &m, &w);
    assert_eq!(pts.len(), 3);
    assert!(pts.iter().all(|p| p[2] == &p[1] + &Scalar::one()));
    let p = closure_by_paths(&d, &m).unwrap();
    assert_eq!(p[0][2], Interval::finite(1, 3));
    assert_eq!(p[2][0], Interval::finite(-3, -1));
    let bad = d.from_upper(|i, j| match (i, j) {
        (0, 1) => Interval::finite(0, 0),
        (1, 2) => Interval::finite(1, 1),
        _ => Interval::finite(5, 5),
    });
    assert!(closure_by_paths(&d, &bad).is_none());
    assert!(gamma_enum(&d, &bad, &w).is_empty());
}

#[test]
fn windows() {
    assert_eq!(Window::integers(-2, 2).len(), 5);
    let w = Window::grid(-1, 1, 2);
    assert_eq!(w.len(), 5);
    assert_eq!(Window::default_for(ScalarMode::Rat).len(), 33);
    assert!(w.contains(&Scalar::ratio(-1, 2)));
    assert!(!w.contains(&Scalar::ratio(1, 3)));
}

#[test]
fn selftest_smoke() {
    let reports = selftest(20, 7);
    assert!(reports
        .iter()
        .all(|r| r.cases > 0 || r.law == "pairwise-emptiness"));
}
