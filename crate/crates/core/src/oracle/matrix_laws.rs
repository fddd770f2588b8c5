use std::collections::BTreeSet;

use rand::Rng as _;

use super::gamma::{closure_by_paths, gamma_numers, DiffTable};
use super::gen::{random_expr, random_matrix, random_nonempty_cells, small, Generate, Rng};
use super::report::{check, expect, LawReport, Outcome};
use super::window::Window;
use crate::basis::Basis;
use crate::nonrel::Expr;
use crate::scalar::{Scalar, ScalarMode};
use crate::weakrel::{ConstraintMatrix, WeakRel};

type Points = BTreeSet<Vec<i64>>;

fn dom<B: Generate>(b: &B, rng: &mut Rng, max_n: usize) -> WeakRel<B> {
    WeakRel::new(b.clone(), rng.gen_range(2..=max_n)).expect("n >= 2")
}

fn show<B: Basis>(d: &WeakRel<B>, m: &ConstraintMatrix<B::Elem>) -> String {
    if m.is_empty_state() {
        return "_|_".to_string();
    }
    let mut s = Vec::new();
    for i in 0..d.n() {
        for j in i + 1..d.n() {
            s.push(format!("({i},{j}):{}", d.cell(m, i, j)));
        }
    }
    format!("[{}]", s.join(" "))
}

fn points<B: Basis>(d: &WeakRel<B>, m: &ConstraintMatrix<B::Elem>, w: &Window) -> Points {
    gamma_numers(d, m, w).into_iter().collect()
}

/// Numerator of `e(p)` over the window's denominator, for integral affine
/// expressions.
fn eval_numer(e: &Expr, p: &[i64], w: &Window) -> Option<i64> {
    let (coeffs, c) = e.linear()?;
    let mut acc = w.numer(&c)?;
    for (v, k) in coeffs {
        acc += k.to_i64().filter(|_| k.is_integer())? * p[v];
    }
    Some(acc)
}

/// A copy that has forgotten it was closed.
fn unclosed<B: Basis>(d: &WeakRel<B>, m: &ConstraintMatrix<B::Elem>) -> ConstraintMatrix<B::Elem> {
    if m.is_empty_state() {
        return d.bottom();
    }
    d.from_upper(|i, j| d.cell(m, i, j))
}

fn cells_leq<B: Basis>(
    d: &WeakRel<B>,
    a: &ConstraintMatrix<B::Elem>,
    c: &ConstraintMatrix<B::Elem>,
) -> bool {
    (0..d.n()).all(|i| (0..d.n()).all(|j| d.basis().leq(&d.cell(a, i, j), &d.cell(c, i, j))))
}

/// A closed, non-empty matrix.
fn closed_nonempty<B: Generate>(
    d: &WeakRel<B>,
    rng: &mut Rng,
) -> Option<ConstraintMatrix<B::Elem>> {
    let m = d.close(&random_nonempty_cells(d, rng, 0.4));
    (!m.is_empty_state()).then_some(m)
}

fn inner(mode: ScalarMode) -> Window {
    match mode {
        ScalarMode::Int => Window::integers(-3, 3),
        ScalarMode::Rat => Window::grid(-1, 1, 4),
    }
}

/// Closure, emptiness and the matrix operators checked against `Γ`
/// enumeration; matrices have up to `max_n` rows including the anchor.
pub fn matrix_laws<B: Generate>(
    b: &B,
    cases: usize,
    max_n: usize,
    rng: &mut Rng,
) -> Vec<LawReport> {
    matrix_laws_only(b, cases, max_n, rng, &[])
}

/// The laws of [`matrix_laws`] whose names are in `only` (all when empty).
pub fn matrix_laws_only<B: Generate>(
    b: &B,
    cases: usize,
    max_n: usize,
    rng: &mut Rng,
    only: &[&str],
) -> Vec<LawReport> {
    let name = b.label();
    let w = b.matrix_window();
    let mode = b.mode();
    let inner = inner(mode);
    let mut out = Vec::new();

    let want = |law: &str| only.is_empty() || only.contains(&law);
    if want("closure-equals-path-closure") {
        out.push(closure_matches_paths(b, cases, max_n, rng));
    }
    if want("emptiness-iff-no-point") {
        out.push(emptiness_matches_gamma(b, cases, max_n, rng));
    }

    if want("closure-preserves-gamma") {
        out.push(check("closure-preserves-gamma", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.4);
            let c = d.close(&m);
            expect(points(&d, &m, &w) == points(&d, &c, &w), || show(&d, &m))
        }));
    }

    if want("closure-idempotent-coherent") {
        out.push(check(
            "closure-idempotent-coherent",
            &name,
            cases,
            rng,
            |rng| {
                let d = dom(b, rng, max_n);
                let m = random_nonempty_cells(&d, rng, 0.4);
                let c = d.close(&m);
                if c.is_empty_state() {
                    return Outcome::Skip;
                }
                let again = d.close(&unclosed(&d, &c));
                let bb = d.basis();
                let coherent = (0..d.n()).all(|i| {
                    (0..d.n()).all(|j| d.cell(&c, j, i) == bb.neg(&d.cell(&c, i, j)))
                        && d.cell(&c, i, i) == bb.singleton(&Scalar::zero())
                });
                expect(again == c && coherent, || show(&d, &m))
            },
        ));
    }

    if want("closure-saturated") {
        out.push(check("closure-saturated", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let Some(c) = closed_nonempty(&d, rng) else {
                return Outcome::Skip;
            };
            let pts = points(&d, &c, &w);
            for i in 0..d.n() {
                for j in 0..d.n() {
                    let diffs: BTreeSet<i64> = pts.iter().map(|p| p[j] - p[i]).collect();
                    let cell = d.cell(&c, i, j);
                    let missing = d
                        .basis()
                        .sample(&cell, inner.values())
                        .into_iter()
                        .find(|v| !diffs.contains(&w.numer(v).unwrap()));
                    if let Some(v) = missing {
                        return Outcome::Fail(format!(
                            "{}: cell ({i},{j}) = {cell} but {v} is not realized",
                            show(&d, &c)
                        ));
                    }
                }
            }
            Outcome::Pass
        }));
    }

    if want("closure-normal-form") {
        out.push(check("closure-normal-form", &name, cases, rng, |rng| {
            // Any matrix with the same concretization has cells at least as
            // large as the closed form.
            let d = dom(b, rng, max_n);
            let Some(c) = closed_nonempty(&d, rng) else {
                return Outcome::Skip;
            };
            let (i, j) = pick_pair(&d, rng);
            let cell = d.cell(&c, i, j);
            let e = b.random_elem(rng);
            let e = match rng.gen_range(0..3) {
                0 => b.meet(&cell, &e),
                1 => b.join(&cell, &e),
                _ => e,
            };
            let other = d.with_cell(&c, i, j, e).expect("distinct indices");
            if points(&d, &other, &w) != points(&d, &c, &w) {
                return Outcome::Skip;
            }
            expect(cells_leq(&d, &c, &other), || {
                format!("{} vs {}", show(&d, &c), show(&d, &other))
            })
        }));
    }

    if want("incremental-closure") {
        out.push(check("incremental-closure", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let Some(c) = closed_nonempty(&d, rng) else {
                return Outcome::Skip;
            };
            let (i, j) = pick_pair(&d, rng);
            let e = b.random_elem(rng);
            let g = d.guard_elem(&c, i, j, &e).expect("in range");
            let full = d.close(&unclosed(&d, &g));
            let inc = d.close_incremental(&unclosed(&d, &g), &[i, j]);
            expect(full == inc, || {
                format!("{} guard ({i},{j}) {e}", show(&d, &c))
            })
        }));
    }

    if want("order-matches-gamma") {
        out.push(check("order-matches-gamma", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let x = random_nonempty_cells(&d, rng, 0.5);
            let y = if rng.gen_bool(0.5) {
                d.join(&x, &random_nonempty_cells(&d, rng, 0.5))
            } else {
                random_nonempty_cells(&d, rng, 0.5)
            };
            let (px, py) = (points(&d, &x, &w), points(&d, &y, &w));
            let ok = d.leq(&x, &y) == px.is_subset(&py) && d.eq(&x, &y) == (px == py);
            expect(ok, || format!("{} vs {}", show(&d, &x), show(&d, &y)))
        }));
    }

    if want("meet-exact") {
        out.push(check("meet-exact", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let (x, y) = (
                random_nonempty_cells(&d, rng, 0.5),
                random_nonempty_cells(&d, rng, 0.5),
            );
            let m = d.meet(&x, &y);
            let both: Points = points(&d, &x, &w)
                .intersection(&points(&d, &y, &w))
                .cloned()
                .collect();
            expect(points(&d, &m, &w) == both, || {
                format!("{} meet {}", show(&d, &x), show(&d, &y))
            })
        }));
    }

    if want("join-widen-bounds") {
        out.push(check("join-widen-bounds", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let (x, y) = (
                random_nonempty_cells(&d, rng, 0.5),
                random_nonempty_cells(&d, rng, 0.5),
            );
            let j = d.join(&x, &y);
            let wd = d.widen(&x, &y);
            let ok = d.close(&unclosed(&d, &j)) == j
                && d.leq(&x, &j)
                && d.leq(&y, &j)
                && d.leq(&x, &wd)
                && d.leq(&y, &wd);
            expect(ok, || format!("{} and {}", show(&d, &x), show(&d, &y)))
        }));
    }

    if want("join-optimal") {
        out.push(check("join-optimal", &name, cases, rng, |rng| {
            // No coherent matrix obtained by tightening the join still covers
            // both arguments while dropping a point the join keeps.
            let d = dom(b, rng, max_n.min(3));
            let (x, y) = (
                random_nonempty_cells(&d, rng, 0.5),
                random_nonempty_cells(&d, rng, 0.5),
            );
            let j = d.join(&x, &y);
            if j.is_empty_state() {
                return Outcome::Skip;
            }
            let (i, k) = pick_pair(&d, rng);
            let cand = d
                .guard_elem(&j, i, k, &b.random_elem(rng))
                .expect("in range");
            let (pj, pc) = (points(&d, &j, &w), points(&d, &cand, &w));
            if !(points(&d, &x, &w).is_subset(&pc) && points(&d, &y, &w).is_subset(&pc)) {
                return Outcome::Skip;
            }
            expect(pj.is_subset(&pc), || {
                format!(
                    "{} join {}: {} is tighter",
                    show(&d, &x),
                    show(&d, &y),
                    show(&d, &cand)
                )
            })
        }));
    }

    if want("cellwise-monotone") {
        out.push(check("cellwise-monotone", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let x = random_matrix(&d, rng, 0.5);
            if x.is_empty_state() {
                return Outcome::Skip;
            }
            let extra = random_matrix(&d, rng, 0.5);
            let y = d.from_upper(|i, j| b.join(&d.cell(&x, i, j), &d.cell(&extra, i, j)));
            expect(points(&d, &x, &w).is_subset(&points(&d, &y, &w)), || {
                format!("{} below {}", show(&d, &x), show(&d, &y))
            })
        }));
    }

    if want("forget-exact") {
        out.push(check("forget-exact", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let Some(c) = closed_nonempty(&d, rng) else {
                return Outcome::Skip;
            };
            let v = rng.gen_range(1..d.n());
            let f = d.forget(&c, v).expect("not the anchor");
            let (pc, pf) = (points(&d, &c, &w), points(&d, &f, &w));
            let (lo, hi) = inner.numer_range();
            for p in &pc {
                for x in lo..=hi {
                    let mut q = p.clone();
                    q[v] = x;
                    if !pf.contains(&q) {
                        return Outcome::Fail(format!(
                            "forget {v} of {} drops {:?}",
                            show(&d, &c),
                            w.point(&q)
                        ));
                    }
                }
            }
            let (wlo, whi) = w.numer_range();
            for q in pf
                .iter()
                .filter(|q| q.iter().all(|&x| inner.contains_numer(x)))
            {
                let found = (wlo..=whi).any(|x| {
                    let mut p = q.clone();
                    p[v] = x;
                    pc.contains(&p)
                });
                if !found {
                    return Outcome::Fail(format!(
                        "forget {v} of {} adds {:?}",
                        show(&d, &c),
                        w.point(q)
                    ));
                }
            }
            Outcome::Pass
        }));
    }

    if want("project-exact") {
        out.push(check("project-exact", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.4);
            let v = rng.gen_range(1..d.n());
            let proj = d.project(&m, v).expect("in range");
            let vals: BTreeSet<i64> = points(&d, &m, &w).into_iter().map(|p| p[v]).collect();
            let bad = inner
                .values()
                .iter()
                .find(|x| b.member(&proj, x) != vals.contains(&w.numer(x).unwrap()));
            expect(bad.is_none(), || {
                format!(
                    "project {v} of {} = {proj} at {}",
                    show(&d, &m),
                    bad.unwrap()
                )
            })
        }));
    }

    if want("guard-exact") {
        out.push(check("guard-exact", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.4);
            let (i, j) = (rng.gen_range(0..d.n()), rng.gen_range(0..d.n()));
            let e = b.random_elem(rng);
            let g = d.guard_elem(&m, i, j, &e).expect("in range");
            let t = DiffTable::new(b, &e, &w);
            let want: Points = points(&d, &m, &w)
                .into_iter()
                .filter(|p| t.get(p[j] - p[i]))
                .collect();
            expect(points(&d, &g, &w) == want, || {
                format!("{} guard ({i},{j}) {e}", show(&d, &m))
            })
        }));
    }

    if want("translate-exact") {
        out.push(check("translate-exact", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.4);
            let v = rng.gen_range(1..d.n());
            let k = small(rng, mode);
            let t = d.assign_translate(&m, v, &k).expect("not the anchor");
            let kn = w.numer(&k).expect("constants lie on the grid");
            let (pm, pt) = (points(&d, &m, &w), points(&d, &t, &w));
            let moved = |p: &Vec<i64>, by: i64| {
                let mut q = p.clone();
                q[v] += by;
                q
            };
            let sound = pm
                .iter()
                .map(|p| moved(p, kn))
                .filter(|q| w.contains_numer(q[v]))
                .all(|q| pt.contains(&q));
            let exact = pt
                .iter()
                .map(|q| moved(q, -kn))
                .filter(|p| w.contains_numer(p[v]))
                .all(|p| pm.contains(&p));
            expect(sound && exact, || format!("{} v{v} += {k}", show(&d, &m)))
        }));
    }

    if want("assign-sound") {
        out.push(check("assign-sound", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.4);
            let vars: Vec<usize> = (1..d.n()).collect();
            let v = vars[rng.gen_range(0..vars.len())];
            let e = random_expr(rng, mode, &vars);
            let a = d.assign(&m, v, &e).expect("in range");
            let pa = points(&d, &a, &w);
            let (lo, hi) = inner.numer_range();
            for p in points(&d, &m, &w) {
                let posts: Vec<i64> = match eval_numer(&e, &p, &w) {
                    Some(x) => vec![x],
                    None if e.has_random() => (lo..=hi).collect(),
                    None => {
                        let x = e.eval(&w.point(&p)).expect("no havoc");
                        let mut q = w.point(&p);
                        q[v] = x;
                        if !d.gamma_contains(&a, &q) {
                            return Outcome::Fail(format!(
                                "{} v{v} = {e:?} drops {q:?}",
                                show(&d, &m)
                            ));
                        }
                        continue;
                    }
                };
                for x in posts {
                    let mut q = p.clone();
                    q[v] = x;
                    let ok = if w.contains_numer(x) {
                        pa.contains(&q)
                    } else {
                        d.gamma_contains(&a, &w.point(&q))
                    };
                    if !ok {
                        return Outcome::Fail(format!(
                            "{} v{v} = {e:?} drops {:?}",
                            show(&d, &m),
                            w.point(&q)
                        ));
                    }
                }
            }
            Outcome::Pass
        }));
    }

    if want("copy-exact") {
        out.push(check("copy-exact", &name, cases, rng, |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.4);
            let v = rng.gen_range(1..d.n());
            let j = rng.gen_range(0..d.n());
            let k = small(rng, mode);
            let e = Expr::add(Expr::var(j), Expr::Const(k));
            let a = d.assign(&m, v, &e).expect("in range");
            let image: Points = points(&d, &m, &w)
                .into_iter()
                .map(|mut p| {
                    p[v] = eval_numer(&e, &p, &w).expect("integral copy");
                    p
                })
                .collect();
            match points(&d, &a, &inner)
                .into_iter()
                .find(|q| !image.contains(q))
            {
                Some(q) => Outcome::Fail(format!(
                    "{} v{v} = {e:?} adds {:?}",
                    show(&d, &m),
                    w.point(&q)
                )),
                None => Outcome::Pass,
            }
        }));
    }

    out
}

fn pick_pair<B: Basis>(d: &WeakRel<B>, rng: &mut Rng) -> (usize, usize) {
    let i = rng.gen_range(0..d.n() - 1);
    let j = rng.gen_range(i + 1..d.n());
    if rng.gen_bool(0.5) {
        (i, j)
    } else {
        (j, i)
    }
}

/// Closed forms agree with the meet over all simple paths.
pub fn closure_matches_paths<B: Generate>(
    b: &B,
    cases: usize,
    max_n: usize,
    rng: &mut Rng,
) -> LawReport {
    check(
        "closure-equals-path-closure",
        &b.label(),
        cases,
        rng,
        |rng| {
            let d = dom(b, rng, max_n);
            let m = random_nonempty_cells(&d, rng, 0.3);
            let c = d.close(&m);
            if c.is_empty_state() {
                return Outcome::Skip;
            }
            let Some(p) = closure_by_paths(&d, &m) else {
                return Outcome::Fail(format!(
                    "{}: path closure is empty, closure is {}",
                    show(&d, &m),
                    show(&d, &c)
                ));
            };
            for i in 0..d.n() {
                for j in 0..d.n() {
                    if d.cell(&c, i, j) != p[i][j] {
                        return Outcome::Fail(format!(
                            "{}: cell ({i},{j}) closes to {} but paths give {}",
                            show(&d, &m),
                            d.cell(&c, i, j),
                            p[i][j]
                        ));
                    }
                }
            }
            Outcome::Pass
        },
    )
}

/// The closure is empty exactly when `Γ` has no point in the window.
pub fn emptiness_matches_gamma<B: Generate>(
    b: &B,
    cases: usize,
    max_n: usize,
    rng: &mut Rng,
) -> LawReport {
    let w = b.matrix_window();
    check("emptiness-iff-no-point", &b.label(), cases, rng, |rng| {
        let d = dom(b, rng, max_n);
        let m = random_nonempty_cells(&d, rng, 0.3);
        let empty = d.close(&m).is_empty_state();
        let none = gamma_numers(&d, &m, &w).is_empty();
        expect(empty == none, || {
            format!(
                "{}: closure empty {empty}, points found {}",
                show(&d, &m),
                !none
            )
        })
    })
}
