use super::*;
use crate::bases::{CongruenceBasis, IntervalBasis};
use crate::basis::Basis;
use crate::nonrel::{Expr, NonRel};
use crate::scalar::{Scalar, ScalarMode};
use crate::weakrel::WeakRel;

const Z: ScalarMode = ScalarMode::Int;

fn program(file: &str) -> Program {
    let path = format!("{}/../../programs/{file}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn config(domain: DomainKind, widen_delay: usize) -> RunConfig {
    RunConfig {
        domain,
        mode: Z,
        analysis: AnalysisConfig {
            widen_delay,
            ..Default::default()
        },
    }
}

fn point<'a>(reports: &'a [PointReport], name: &str) -> &'a PointReport {
    reports.iter().find(|r| r.point == name).unwrap()
}

#[test]
fn random_walk_parses_into_two_nested_loops() {
    let p = program("randomwalk");
    assert_eq!(p.names, vec!["v0", "k", "x", "i"]);
    assert_eq!(p.labels(), vec!["star", "bullet"]);
    let cfg = Cfg::build(&p, Z);
    assert_eq!(cfg.heads.iter().filter(|h| **h).count(), 2);
    assert_eq!(cfg.edges.iter().filter(|e| e.back).count(), 2);
}

#[test]
fn empty_program() {
    let p = parse("  # nothing\n").unwrap();
    let cfg = Cfg::build(&p, Z);
    assert_eq!(cfg.entry, cfg.exit);
    assert!(cfg.edges.is_empty());
}

#[test]
fn syntax_errors_carry_positions() {
    let e = parse("x = ;").unwrap_err();
    assert_eq!((e.line, e.col), (1, 5));
    let e = parse("x = 1;\ny = z + 1;").unwrap_err();
    assert_eq!((e.line, e.col), (2, 5));
    assert!(e.message.contains("`z`"));
    assert!(parse("v0 = 1;").unwrap_err().message.contains("reserved"));
    assert!(parse("@a: x = 1; @a: x = 2;")
        .unwrap_err()
        .message
        .contains("duplicate"));
    assert!(parse("x = 1; while (x <= 3) { x = x + 1;").is_err());
    assert!(parse("x = 1; if (x in [1;2]) { skip; }").is_err());
}

#[test]
fn conditions_and_literals() {
    let p = parse(
        "x = ?; y = 1/2;
         if (x - y in [-oo, 3/2]) { skip; }
         if (x % 4 == 1) { skip; }
         if (x - y % 2 == 0) { skip; }
         if (x in 3Z-1) { skip; }
         if (x != -2) { skip; }",
    )
    .unwrap();
    let guards: Vec<GuardAtom> = p
        .body
        .iter()
        .filter_map(|s| match s {
            Stmt::If(g, _, _) => Some(g.clone()),
            _ => None,
        })
        .collect();
    assert_eq!(
        guards,
        vec![
            GuardAtom::DiffInSet(1, 2, "[-oo,3/2]".parse().unwrap()),
            GuardAtom::Mod(1, None, Scalar::int(4), Scalar::one()),
            GuardAtom::Mod(1, Some(2), Scalar::int(2), Scalar::zero()),
            GuardAtom::VarInSet(1, "3Z-1".parse().unwrap()),
            GuardAtom::Cmp(1, CmpOp::Ne, Scalar::int(-2)),
        ]
    );
    assert_eq!(
        p.rational_constants(),
        vec![Scalar::ratio(1, 2), Scalar::ratio(3, 2)]
    );
}

#[test]
fn expressions() {
    let p = parse("y = 1; x = 2*y + 3 - -y; z = 2*(x - y);").unwrap();
    let Stmt::Assign(2, e) = &p.body[1] else {
        panic!()
    };
    let pt = [Scalar::zero(), Scalar::int(4), Scalar::int(5)];
    assert_eq!(e.eval(&pt), Some(Scalar::int(2 * 4 + 3 + 4)));
    let Stmt::Assign(3, e) = &p.body[2] else {
        panic!()
    };
    assert_eq!(e.eval(&pt), Some(Scalar::int(2)));
}

#[test]
fn for_loops_desugar() {
    let p = parse("for i = 1 to 5 { skip; }").unwrap();
    assert_eq!(p.body[0], Stmt::Assign(1, Expr::int(1)));
    let Stmt::While(g, body) = &p.body[1] else {
        panic!()
    };
    assert_eq!(*g, GuardAtom::Cmp(1, CmpOp::Le, Scalar::int(5)));
    assert_eq!(
        body.last(),
        Some(&Stmt::Assign(1, Expr::add(Expr::var(1), Expr::int(1))))
    );
}

#[test]
fn branch_and_loop_edges() {
    let p = parse("x = 0; if (?) { x = 1; } else { x = 2; }").unwrap();
    let cfg = Cfg::build(&p, Z);
    let guards: Vec<&Action> = cfg
        .edges
        .iter()
        .map(|e| &e.action)
        .filter(|a| matches!(a, Action::Guard(_)))
        .collect();
    assert_eq!(guards, vec![&Action::Guard(GuardAtom::NonDet); 2]);

    let p = parse("i = 0; while (i <= 5) { i = i + 1; }").unwrap();
    let cfg = Cfg::build(&p, Z);
    let exit = cfg.edges.iter().find(|e| e.to == cfg.exit).unwrap();
    assert_eq!(
        exit.action,
        Action::Guard(GuardAtom::Cmp(1, CmpOp::Ge, Scalar::int(6)))
    );

    let p = parse("x = 1; y = x + 1;").unwrap();
    let cfg = Cfg::build(&p, Z);
    assert_eq!(cfg.nodes, 3);
    assert!(cfg
        .edges
        .iter()
        .enumerate()
        .all(|(k, e)| e.from == k && e.to == k + 1));
}

#[test]
fn interval_run_bounds_the_inner_counter() {
    let r = run(
        &program("randomwalk"),
        &config(DomainKind::Interval, DEFAULT_WIDEN_DELAY),
    )
    .unwrap();
    let star = point(&r, "star");
    assert!(star.lines.contains(&"i in [1,5]".to_string()));
    assert!(!point(&r, "bullet")
        .lines
        .iter()
        .any(|l| l.starts_with("x ")));
}

#[test]
fn product_run_finds_bound_and_parity() {
    let r = run(
        &program("randomwalk"),
        &config(DomainKind::ZoneProduct, DEFAULT_WIDEN_DELAY),
    )
    .unwrap();
    assert!(point(&r, "bullet")
        .lines
        .contains(&"x - 0 in ([-oo,5], 2Z+1)".to_string()));
    let r = run(
        &program("randomwalk_symbolic"),
        &config(DomainKind::ZoneProduct, DEFAULT_WIDEN_DELAY),
    )
    .unwrap();
    assert!(point(&r, "bullet")
        .lines
        .contains(&"x - m in ([-oo,0], 2Z+0)".to_string()));
}

#[test]
fn immediate_widening_loses_the_bound() {
    let r = run(&program("randomwalk"), &config(DomainKind::ZoneProduct, 0)).unwrap();
    let bullet = point(&r, "bullet");
    assert!(!bullet.lines.iter().any(|l| l.starts_with("x - 0")));
    assert!(bullet
        .lines
        .contains(&"i - x in ([1,+oo], 2Z+1)".to_string()));
}

#[test]
fn results_are_post_fixpoints_and_deterministic() {
    for file in ["randomwalk", "randomwalk_symbolic"] {
        let p = program(file);
        let cfg = Cfg::build(&p, Z);
        for delay in [0, DEFAULT_WIDEN_DELAY] {
            let c = AnalysisConfig {
                widen_delay: delay,
                ..Default::default()
            };
            let zone = WeakRel::new(IntervalBasis::new(Z), p.n()).unwrap();
            let a = analyze(&cfg, &zone, &c).unwrap();
            assert!(post_fixpoint_violations(&cfg, &zone, &a.states).is_empty());
            let iv = NonRel::new(IntervalBasis::new(Z), p.n());
            let a = analyze(&cfg, &iv, &c).unwrap();
            assert!(post_fixpoint_violations(&cfg, &iv, &a.states).is_empty());
            let zp = WeakRel::new(interval_congruence(Z), p.n()).unwrap();
            let a = analyze(&cfg, &zp, &c).unwrap();
            assert!(post_fixpoint_violations(&cfg, &zp, &a.states).is_empty());
        }
        for kind in DomainKind::ALL {
            let a = render_reports(&run(&p, &config(kind, DEFAULT_WIDEN_DELAY)).unwrap());
            let b = render_reports(&run(&p, &config(kind, DEFAULT_WIDEN_DELAY)).unwrap());
            assert_eq!(a, b);
        }
    }
}

#[test]
fn transfer_dispatch() {
    let p = parse("y = ?; z = ?; x = y + z; x = x + 1; x = 2*y + 3;").unwrap();
    let cfg = Cfg::build(&p, Z);
    let d = WeakRel::new(IntervalBasis::new(Z), p.n()).unwrap();
    let m = d.guard(&d.top(), 0, 1, &"[1,2]".parse().unwrap()).unwrap();
    let m = d.guard(&m, 0, 2, &"[10,20]".parse().unwrap()).unwrap();
    let acts: Vec<&Action> = cfg.edges.iter().map(|e| &e.action).collect();
    let Action::Assign(x, sum) = acts[2] else {
        panic!()
    };
    assert_eq!(
        transfer(&d, acts[2], &m),
        d.assign_sum(&m, *x, 1, 2).unwrap()
    );
    assert_eq!(sum.linear().unwrap().0.len(), 2);
    assert_eq!(
        transfer(&d, acts[3], &m),
        d.assign_translate(&m, 3, &Scalar::one()).unwrap()
    );
    let Action::Assign(_, affine) = acts[4] else {
        panic!()
    };
    assert_eq!(
        transfer(&d, acts[4], &m),
        d.assign_generic(&m, 3, affine).unwrap()
    );
}

#[test]
fn rational_mode_analysis() {
    let p = parse("x = 1/2; while (x <= 3) { x = x + 1/2; } @end: skip;").unwrap();
    let r = run(
        &p,
        &RunConfig {
            domain: DomainKind::ZoneCongruence,
            mode: ScalarMode::Rat,
            analysis: AnalysisConfig::default(),
        },
    )
    .unwrap();
    assert_eq!(point(&r, "end").lines, vec!["x - 0 in 1/2Z+0"]);
    assert!(matches!(
        run(&p, &config(DomainKind::Zone, 0)),
        Err(RunError::RationalConstant(_))
    ));
    let b = CongruenceBasis::new(ScalarMode::Rat);
    assert!(b.member(
        &"1/2Z+0"
            .parse::<crate::basis::SetLiteral>()
            .map(|l| b.approx(&l))
            .unwrap(),
        &Scalar::ratio(7, 2)
    ));
}

#[test]
fn unreachable_points_render_bottom() {
    let p = parse("x = 1; if (x >= 2) { @dead: skip; }").unwrap();
    let r = run(&p, &config(DomainKind::Interval, 0)).unwrap();
    assert!(!point(&r, "dead").reachable);
    assert!(render_reports(&r).contains("@dead\n  _|_\n"));
}
