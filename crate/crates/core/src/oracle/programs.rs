use rand::Rng as _;

use super::concrete::{concrete_run, ConcreteRun};
use super::gen::{random_expr, random_nonempty_cells, random_program, small, Generate, Rng};
use super::report::{check, expect, LawReport, Outcome};
use crate::analyzer::{
    analyze, interval_congruence, AbstractDomain, AnalysisConfig, Cfg, DomainKind,
};
use crate::bases::{CongruenceBasis, ConstantBasis, IntervalBasis};
use crate::basis::Basis;
use crate::nonrel::{Expr, NonRel};
use crate::scalar::{Scalar, ScalarMode};
use crate::weakrel::{ConstraintMatrix, WeakRel};

#[derive(Debug, Clone)]
enum Op<E> {
    Translate(usize, Scalar),
    Assign(usize, Expr),
    Guard(usize, usize, E),
    Forget(usize),
}

fn apply<B: Basis>(
    d: &WeakRel<B>,
    m: &ConstraintMatrix<B::Elem>,
    op: &Op<B::Elem>,
) -> ConstraintMatrix<B::Elem> {
    match op {
        Op::Translate(v, c) => d.assign_translate(&d.close(m), *v, c),
        Op::Assign(v, e) => d.assign(m, *v, e),
        Op::Guard(i, j, e) => d.guard_elem(m, *i, *j, e),
        Op::Forget(v) => d.forget(m, *v),
    }
    .expect("indices in range")
}

/// Iterates `X ▽ (init ⊔ body(X★))` on random loop bodies and expects a
/// post-fixpoint within `max_steps` widenings.
pub fn widening_terminates<B: Generate>(
    b: &B,
    cases: usize,
    max_steps: usize,
    rng: &mut Rng,
) -> LawReport {
    let mode = b.mode();
    check("widening-terminates", &b.label(), cases, rng, |rng| {
        let d = WeakRel::new(b.clone(), rng.gen_range(3..=4)).expect("n >= 3");
        let init = d.close(&random_nonempty_cells(&d, rng, 0.5));
        if init.is_empty_state() {
            return Outcome::Skip;
        }
        let vars: Vec<usize> = (1..d.n()).collect();
        let len = rng.gen_range(1..=4);
        let body: Vec<Op<B::Elem>> = (0..len)
            .map(|_| {
                let v = vars[rng.gen_range(0..vars.len())];
                match rng.gen_range(0..5) {
                    0 | 1 => {
                        let mut c = small(rng, mode);
                        if c.is_zero() {
                            c = Scalar::one();
                        }
                        Op::Translate(v, c)
                    }
                    2 => Op::Assign(v, random_expr(rng, mode, &vars)),
                    3 => Op::Guard(rng.gen_range(0..d.n()), v, b.random_elem(rng)),
                    _ => Op::Forget(v),
                }
            })
            .collect();
        let f = |x: &ConstraintMatrix<B::Elem>| {
            let post = body.iter().fold(d.close(x), |m, op| apply(&d, &m, op));
            d.join(&init, &post)
        };
        let mut x = init.clone();
        for _ in 0..max_steps {
            let y = f(&x);
            if d.leq(&y, &x) {
                return Outcome::Pass;
            }
            x = d.widen(&x, &y);
        }
        Outcome::Fail(format!(
            "no post-fixpoint after {max_steps} widenings for body {body:?}"
        ))
    })
}

fn check_domain<D: AbstractDomain>(cfg: &Cfg, dom: &D, conc: &ConcreteRun) -> Result<(), String> {
    let a = analyze(cfg, dom, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    for (node, pts) in conc.states.iter().enumerate() {
        if let Some(p) = pts.iter().find(|p| !dom.gamma_contains(&a.states[node], p)) {
            return Err(format!("node n{node} misses {p:?}"));
        }
    }
    Ok(())
}

/// Runs the analysis of `cfg` in domain `kind` and checks that every
/// concretely reachable state is covered.
pub fn sound_in(kind: DomainKind, cfg: &Cfg, conc: &ConcreteRun) -> Result<(), String> {
    let (mode, n) = (cfg.mode, cfg.n());
    match kind {
        DomainKind::Const => check_domain(cfg, &NonRel::new(ConstantBasis::new(mode), n), conc),
        DomainKind::Interval => check_domain(cfg, &NonRel::new(IntervalBasis::new(mode), n), conc),
        DomainKind::Congruence => {
            check_domain(cfg, &NonRel::new(CongruenceBasis::new(mode), n), conc)
        }
        DomainKind::Zone => check_domain(
            cfg,
            &WeakRel::new(IntervalBasis::new(mode), n).unwrap(),
            conc,
        ),
        DomainKind::ZoneCongruence => check_domain(
            cfg,
            &WeakRel::new(CongruenceBasis::new(mode), n).unwrap(),
            conc,
        ),
        DomainKind::ZoneProduct => check_domain(
            cfg,
            &WeakRel::new(interval_congruence(mode), n).unwrap(),
            conc,
        ),
        DomainKind::TranslatedEq => check_domain(
            cfg,
            &WeakRel::new(ConstantBasis::new(mode), n).unwrap(),
            conc,
        ),
    }
}

pub fn havoc_values(mode: ScalarMode) -> Vec<Scalar> {
    match mode {
        ScalarMode::Int => (-2..=2).map(Scalar::int).collect(),
        ScalarMode::Rat => (-2..=2).map(|k| Scalar::ratio(k, 2)).collect(),
    }
}

/// Random terminating programs analyzed in every domain; each result must
/// cover the concrete run.
pub fn end_to_end(mode: ScalarMode, cases: usize, rng: &mut Rng) -> LawReport {
    let havoc = havoc_values(mode);
    let subject = format!(
        "programs/{}",
        if mode == ScalarMode::Int { "Z" } else { "Q" }
    );
    check("analysis-sound", &subject, cases, rng, |rng| {
        let p = random_program(rng, mode);
        let cfg = Cfg::build(&p, mode);
        let Ok(conc) = concrete_run(&cfg, 64, &havoc, 200_000) else {
            return Outcome::Skip;
        };
        if conc.truncated {
            return Outcome::Skip;
        }
        let bad: Vec<String> = DomainKind::ALL
            .into_iter()
            .filter_map(|k| sound_in(k, &cfg, &conc).err().map(|e| format!("{k}: {e}")))
            .collect();
        expect(bad.is_empty(), || {
            format!("{}\n{:?}", bad.join("; "), p.body)
        })
    })
}
