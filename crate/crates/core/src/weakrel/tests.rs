use super::*;
use crate::bases::{Congruence, CongruenceBasis, Interval, IntervalBasis};
use crate::scalar::{ExtScalar, ScalarMode};

fn zone(n: usize) -> WeakRel<IntervalBasis> {
    WeakRel::new(IntervalBasis::new(ScalarMode::Int), n).unwrap()
}

fn lit(s: &str) -> SetLiteral {
    s.parse().unwrap()
}

fn iv(lo: i64, hi: i64) -> Interval {
    Interval::finite(lo, hi)
}

/// v1 - v0 ∈ [1,1], v2 - v1 ∈ [2,2].
fn chain(d: &WeakRel<IntervalBasis>) -> ConstraintMatrix<Interval> {
    let m = d.guard(&d.top(), 0, 1, &lit("[1,1]")).unwrap();
    d.guard(&m, 1, 2, &lit("[2,2]")).unwrap()
}

/// Points of Γ(m) with coordinates in [-10, 10].
fn enumerate(d: &WeakRel<IntervalBasis>, m: &ConstraintMatrix<Interval>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let n = d.n();
    let mut idx = vec![-10i64; n - 1];
    loop {
        let mut p = vec![0i64];
        p.extend(&idx);
        let point: Vec<Scalar> = p.iter().map(|v| Scalar::int(*v)).collect();
        if d.gamma_contains(m, &point) {
            out.push(p);
        }
        let mut k = 0;
        while k < idx.len() && idx[k] == 10 {
            idx[k] = -10;
            k += 1;
        }
        if k == idx.len() {
            return out;
        }
        idx[k] += 1;
    }
}

fn tightest(points: &[Vec<i64>], i: usize, j: usize) -> Interval {
    let diffs = points.iter().map(|p| p[j] - p[i]);
    iv(diffs.clone().min().unwrap(), diffs.max().unwrap())
}

#[test]
fn top_and_bottom() {
    let d = zone(2);
    let t = d.top();
    assert_eq!(d.cell(&t, 0, 0), iv(0, 0));
    assert_eq!(d.cell(&t, 0, 1), Interval::top());
    assert!(d.gamma_contains(&t, &[Scalar::zero(), Scalar::int(7)]));
    assert!(!d.gamma_contains(&t, &[Scalar::one(), Scalar::int(7)]));
    assert!(!d.gamma_contains(&d.bottom(), &[Scalar::zero(), Scalar::zero()]));
    let one = zone(1);
    assert!(one.gamma_contains(&one.top(), &[Scalar::zero()]));
    assert!(WeakRel::new(IntervalBasis::new(ScalarMode::Int), 0).is_err());
}

#[test]
fn closure_adds_the_transitive_constraint() {
    let d = zone(3);
    let m = chain(&d);
    let points = enumerate(&d, &m);
    assert_eq!(points, vec![vec![0, 1, 3]]);
    let c = d.close(&m);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(d.cell(&c, i, j), tightest(&points, i, j));
        }
    }
    assert!(d.gamma_contains(&m, &[Scalar::zero(), Scalar::int(1), Scalar::int(3)]));
    assert_eq!(d.project(&m, 2).unwrap(), iv(3, 3));
    assert!(d.eq(&m, &c));
    assert_eq!(d.close(&c), c);
}

#[test]
fn contradictory_cycle_is_empty() {
    let d = zone(2);
    let m = d.guard(&d.top(), 0, 1, &lit("[1,1]")).unwrap();
    let m = d.guard(&m, 1, 0, &lit("[1,1]")).unwrap();
    assert!(enumerate(&d, &m).is_empty());
    assert!(d.is_empty(&m));
    assert!(d.close(&m).is_empty_state());
    assert!(!d.is_empty(&d.top()));
    assert_eq!(d.close(&d.top()), d.top());
}

#[test]
fn incremental_matches_full_closure() {
    let d = zone(4);
    let m = d.close(&chain(&d));
    let g = d.guard(&m, 2, 3, &lit("[-1,4]")).unwrap();
    assert!(matches!(g.status(), Some(Status::Dirty(_))));
    let full = {
        let order: Vec<usize> = (0..4).collect();
        let Body::Cells { cells, .. } = &g.body else {
            unreachable!()
        };
        d.finish(close_cells(d.basis(), 4, cells.clone(), &order, None))
    };
    assert_eq!(d.close(&g), full);
    assert_eq!(d.close_incremental(&m, &[]), m);
    assert_eq!(d.close_incremental(&g, &[0, 1, 2, 3]), full);
}

#[test]
fn inclusion_and_meet() {
    let d = zone(3);
    let m = chain(&d);
    assert!(d.leq(&m, &d.top()));
    assert!(d.leq(&d.bottom(), &m));
    let a = d.close(&d.guard(&d.top(), 0, 1, &lit("[0,2]")).unwrap());
    let b = d.close(&d.guard(&d.top(), 0, 1, &lit("[5,6]")).unwrap());
    assert!(!d.leq(&a, &b));
    let a5 = d.guard(&d.top(), 0, 1, &lit("[0,5]")).unwrap();
    let a9 = d.guard(&d.top(), 0, 1, &lit("[3,9]")).unwrap();
    assert_eq!(d.cell(&d.meet(&a5, &a9), 0, 1), iv(3, 5));
    assert_eq!(d.meet(&m, &d.top()), m);

    let c = WeakRel::new(CongruenceBasis::new(ScalarMode::Int), 2).unwrap();
    let even = c.guard(&c.top(), 0, 1, &lit("2Z+0")).unwrap();
    let odd = c.guard(&c.top(), 0, 1, &lit("2Z+1")).unwrap();
    assert!(c.is_empty(&c.meet(&even, &odd)));
}

#[test]
fn join_closes_its_arguments() {
    let d = zone(2);
    let one = d.guard(&d.top(), 0, 1, &lit("[1,1]")).unwrap();
    let three = d.guard(&d.top(), 0, 1, &lit("[3,3]")).unwrap();
    let j = d.join(&one, &three);
    assert_eq!(d.cell(&j, 0, 1), iv(1, 3));
    assert!(j.is_closed());
    assert_eq!(d.join(&d.bottom(), &one), d.close(&one));

    // Without closing, the implicit v2 - v0 cell of each chain would be ⊤.
    let z = zone(3);
    let a = chain(&z);
    let b = z
        .guard(
            &z.guard(&z.top(), 0, 1, &lit("[2,2]")).unwrap(),
            1,
            2,
            &lit("[2,2]"),
        )
        .unwrap();
    let mut points = enumerate(&z, &a);
    points.extend(enumerate(&z, &b));
    assert_eq!(z.cell(&z.join(&a, &b), 0, 2), tightest(&points, 0, 2));
    assert_eq!(z.cell(&z.join(&a, &b), 0, 2), iv(3, 4));
}

#[test]
fn widening_is_cellwise_and_keeps_the_left_argument() {
    let d = zone(2);
    let a = d.guard(&d.top(), 0, 1, &lit("[0,1]")).unwrap();
    let b = d.guard(&d.top(), 0, 1, &lit("[0,2]")).unwrap();
    let w = d.widen(&a, &b);
    assert_eq!(
        d.cell(&w, 0, 1),
        Interval::new(Scalar::zero().into(), ExtScalar::PosInf)
    );
    assert_eq!(w.status(), Some(&Status::Unknown));
    assert_eq!(d.widen(&a, &a), a);

    // The loose v2 - v0 cell of the left argument survives unclosed.
    let z = zone(3);
    let loose = z.with_cell(&chain(&z), 0, 2, iv(0, 10)).unwrap();
    let w = z.widen(&loose, &z.close(&chain(&z)));
    assert_eq!(z.cell(&w, 0, 2), iv(0, 10));
}

#[test]
fn guards_write_coherent_pairs() {
    let d = zone(2);
    let g = d.guard(&d.top(), 0, 1, &lit("[0,10]")).unwrap();
    assert_eq!(d.cell(&g, 0, 1), iv(0, 10));
    assert_eq!(d.cell(&g, 1, 0), iv(-10, 0));
    let c = WeakRel::new(CongruenceBasis::new(ScalarMode::Int), 2).unwrap();
    let odd = c.guard(&c.top(), 0, 1, &lit("2Z+1")).unwrap();
    assert_eq!(c.cell(&odd, 0, 1), Congruence::ints(2, 1));
    let z = zone(3);
    let cyc = z.guard(&chain(&z), 2, 0, &lit("[0,+oo]")).unwrap();
    assert!(enumerate(&z, &cyc).is_empty());
    assert!(z.is_empty(&cyc));
}

#[test]
fn projection_and_forget() {
    let d = zone(3);
    let m = chain(&d);
    assert_eq!(d.project(&d.top(), 1).unwrap(), Interval::top());
    assert_eq!(d.project(&m, 0).unwrap(), iv(0, 0));
    let f = d.forget(&m, 1).unwrap();
    assert_eq!(d.cell(&f, 0, 2), iv(3, 3));
    assert_eq!(d.project(&f, 1).unwrap(), Interval::top());
    assert_eq!(d.forget(&d.top(), 2).unwrap(), d.top());
    assert_eq!(d.forget(&m, 0), Err(WeakRelError::Anchor("forgotten")));
}

#[test]
fn translation() {
    let d = zone(3);
    let m = d.guard(&d.top(), 0, 1, &lit("[0,5]")).unwrap();
    let t = d.assign_translate(&m, 1, &Scalar::int(2)).unwrap();
    assert_eq!(d.cell(&t, 0, 1), iv(2, 7));
    let r = d.guard(&d.top(), 1, 2, &lit("[0,0]")).unwrap();
    let t = d.assign_translate(&r, 1, &Scalar::int(2)).unwrap();
    // Concrete image: x2 - (x1 + 2) = -2.
    assert_eq!(d.cell(&t, 1, 2), iv(-2, -2));
    assert_eq!(d.assign_translate(&r, 1, &Scalar::zero()).unwrap(), r);
}

#[test]
fn copy_with_offset() {
    let d = zone(3);
    let m = d.guard(&d.top(), 0, 2, &lit("[0,3]")).unwrap();
    let a = d.assign_copy_offset(&m, 1, 2, &Scalar::one()).unwrap();
    assert_eq!(d.project(&a, 1).unwrap(), iv(1, 4));
    assert_eq!(d.cell(&d.close(&a), 2, 1), iv(1, 1));
    let z = d
        .assign_copy_offset(&d.top(), 1, 2, &Scalar::zero())
        .unwrap();
    assert_eq!(d.cell(&z, 2, 1), iv(0, 0));
    let c = d
        .assign_copy_offset(&d.top(), 1, 2, &Scalar::int(5))
        .unwrap();
    assert_eq!(d.cell(&c, 2, 1), iv(5, 5));
    assert_eq!(d.project(&c, 1).unwrap(), Interval::top());
}

#[test]
fn sums() {
    let d = zone(4);
    let m = d.guard(&d.top(), 0, 2, &lit("[1,2]")).unwrap();
    let m = d.guard(&m, 0, 3, &lit("[10,20]")).unwrap();
    let s = d.close(&d.assign_sum(&m, 1, 2, 3).unwrap());
    assert_eq!(d.cell(&s, 0, 1), iv(11, 22));
    assert_eq!(d.cell(&s, 2, 1), iv(10, 20));
    assert_eq!(d.cell(&s, 3, 1), iv(1, 2));

    let half = d.guard(&d.top(), 0, 3, &lit("[10,20]")).unwrap();
    let s = d.close(&d.assign_sum(&half, 1, 2, 3).unwrap());
    assert_eq!(d.cell(&s, 0, 1), Interval::top());
    assert_eq!(d.cell(&s, 2, 1), iv(10, 20));

    let pts = d
        .guard(
            &d.guard(&d.top(), 0, 2, &lit("[1,1]")).unwrap(),
            0,
            3,
            &lit("[4,4]"),
        )
        .unwrap();
    assert_eq!(
        d.project(&d.assign_sum(&pts, 1, 2, 3).unwrap(), 1).unwrap(),
        iv(5, 5)
    );
}

#[test]
fn generic_assignments() {
    let c = WeakRel::new(CongruenceBasis::new(ScalarMode::Int), 3).unwrap();
    let m = c.guard(&c.top(), 0, 2, &lit("2Z+1")).unwrap();
    let m = c.guard(&m, 1, 2, &lit("[4,4]")).unwrap();
    let a = c
        .assign_generic(&m, 1, &Expr::mul(Scalar::int(3), Expr::var(2)))
        .unwrap();
    assert_eq!(c.project(&a, 1).unwrap(), Congruence::ints(6, 3));
    // Only the unary facts survive: odd minus an odd multiple of 3 is even.
    assert_eq!(c.cell(&c.close(&a), 1, 2), Congruence::ints(2, 0));

    let d = zone(3);
    let m = chain(&d);
    assert_eq!(
        d.assign(&m, 1, &Expr::Random).unwrap(),
        d.forget(&m, 1).unwrap()
    );
    assert_eq!(
        d.project(&d.assign(&m, 1, &Expr::int(5)).unwrap(), 1)
            .unwrap(),
        iv(5, 5)
    );
}

#[test]
fn dispatch_picks_the_exact_transfer() {
    let d = zone(4);
    let m = d.close(&chain(&d));
    let inc = Expr::add(Expr::var(1), Expr::int(1));
    assert_eq!(
        d.assign(&m, 1, &inc).unwrap(),
        d.assign_translate(&m, 1, &Scalar::one()).unwrap()
    );
    let sum = Expr::add(Expr::var(2), Expr::var(3));
    assert_eq!(
        d.assign(&m, 1, &sum).unwrap(),
        d.assign_sum(&m, 1, 2, 3).unwrap()
    );
    let affine = Expr::add(Expr::mul(Scalar::int(2), Expr::var(2)), Expr::int(3));
    assert_eq!(
        d.assign(&m, 1, &affine).unwrap(),
        d.assign_generic(&m, 1, &affine).unwrap()
    );
}

#[test]
fn rendering() {
    let d = zone(3);
    let names: Vec<String> = ["", "x", "y"].iter().map(|s| s.to_string()).collect();
    assert_eq!(
        d.render(&chain(&d), &names),
        vec!["x - 0 in [1,1]", "y - 0 in [3,3]", "y - x in [2,2]"]
    );
    assert!(d.render(&d.top(), &names).is_empty());
    assert_eq!(d.render(&d.bottom(), &names), vec!["_|_"]);
}
