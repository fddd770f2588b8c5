use rand::Rng as _;

use super::gen::{random_literal, small, Generate, Rng};
use super::report::{check, expect, LawReport, Outcome};
use crate::bases::{CongruenceBasis, IntervalBasis, IntervalCongruence};
use crate::basis::{Basis, Reduction};
use crate::scalar::Scalar;

fn nonbottom<B: Generate>(b: &B, rng: &mut Rng) -> B::Elem {
    loop {
        let x = b.random_elem(rng);
        if !b.is_bottom(&x) {
            return x;
        }
    }
}

fn same<B: Basis>(b: &B, x: &B::Elem, y: &B::Elem) -> bool {
    b.leq(x, y) && b.leq(y, x)
}

/// Order, lattice operators, arithmetic and approximation laws for one
/// basis, `cases` draws each.
pub fn basis_laws<B: Generate>(b: &B, cases: usize, rng: &mut Rng) -> Vec<LawReport> {
    let name = b.label();
    let sample = b.sample_window();
    let witness = b.witness_window();
    let mode = b.mode();
    let mut out = Vec::new();

    out.push(check("top-bottom", &name, cases, rng, |rng| {
        let c = small(rng, mode);
        expect(
            b.member(&b.top(), &c) && !b.member(&b.bottom(), &c) && b.is_bottom(&b.bottom()),
            || format!("top/bottom membership of {c}"),
        )
    }));

    out.push(check("order-matches-inclusion", &name, cases, rng, |rng| {
        let (x, y) = (b.random_elem(rng), b.random_elem(rng));
        let (sx, sy) = (b.sample(&x, sample.values()), b.sample(&y, sample.values()));
        let incl = sx.iter().all(|c| sy.contains(c));
        expect(b.leq(&x, &y) == incl && ((sx == sy) == (x == y)), || {
            format!("{x} vs {y}")
        })
    }));

    out.push(check("meet-exact", &name, cases, rng, |rng| {
        let (x, y) = (b.random_elem(rng), b.random_elem(rng));
        let m = b.meet(&x, &y);
        let bad = sample
            .values()
            .iter()
            .find(|c| b.member(&m, c) != (b.member(&x, c) && b.member(&y, c)));
        expect(bad.is_none(), || {
            format!("{x} meet {y} = {m} at {}", bad.unwrap())
        })
    }));

    out.push(check("neg-exact", &name, cases, rng, |rng| {
        let x = b.random_elem(rng);
        let nx = b.neg(&x);
        let bad = sample
            .values()
            .iter()
            .find(|c| b.member(&nx, c) != b.member(&x, &-*c));
        expect(bad.is_none() && b.neg(&nx) == x, || {
            format!("neg {x} = {nx}")
        })
    }));

    out.push(check("add-exact", &name, cases, rng, |rng| {
        let (x, y) = (b.random_elem(rng), b.random_elem(rng));
        let s = b.add(&x, &y);
        let wx = b.sample(&x, witness.values());
        let bad = sample.values().iter().find(|c| {
            let realized = wx.iter().any(|a| b.member(&y, &(*c - a)));
            b.member(&s, c) != realized
        });
        expect(bad.is_none(), || {
            format!("{x} + {y} = {s} at {}", bad.unwrap())
        })
    }));

    out.push(check("singleton-exact", &name, cases, rng, |rng| {
        let c = small(rng, mode);
        let s = b.singleton(&c);
        expect(b.sample(&s, sample.values()) == vec![c.clone()], || {
            format!("singleton {c} = {s}")
        })
    }));

    out.push(check("scale-sound", &name, cases, rng, |rng| {
        let x = b.random_elem(rng);
        let k = Scalar::int(rng.gen_range(-3..=3));
        let s = b.scale(&k, &x);
        let bad = b
            .sample(&x, sample.values())
            .into_iter()
            .find(|c| !b.member(&s, &(&k * c)));
        expect(bad.is_none(), || {
            format!("{k} * {x} = {s} misses {k}*{}", bad.unwrap())
        })
    }));

    out.push(check("join-least-upper-bound", &name, cases, rng, |rng| {
        let (x, y, z) = (b.random_elem(rng), b.random_elem(rng), b.random_elem(rng));
        let j = b.join(&x, &y);
        if !(b.leq(&x, &j) && b.leq(&y, &j)) {
            return Outcome::Fail(format!("{x} join {y} = {j} is not an upper bound"));
        }
        if b.leq(&x, &z) && b.leq(&y, &z) {
            expect(b.leq(&j, &z), || {
                format!("{x} join {y} = {j} above bound {z}")
            })
        } else {
            Outcome::Pass
        }
    }));

    out.push(check("widen-upper-bound", &name, cases, rng, |rng| {
        let (x, y) = (b.random_elem(rng), b.random_elem(rng));
        let w = b.widen(&x, &y);
        expect(b.leq(&x, &w) && b.leq(&y, &w), || {
            format!("{x} widen {y} = {w}")
        })
    }));

    out.push(check("widen-stabilizes", &name, cases, rng, |rng| {
        // The sequence feeding the widening keeps growing with drifting
        // constants; the widened sequence may only grow a bounded number of
        // times.
        let mut y = b.random_elem(rng);
        let mut x = y.clone();
        let mut grew = 0;
        for k in 1..60i64 {
            let shift = b.singleton(&Scalar::int(rng.gen_range(-k..=k)));
            y = b.join(&y, &b.add(&b.random_elem(rng), &shift));
            let next = b.widen(&x, &y);
            if next != x {
                grew += 1;
            }
            x = next;
        }
        expect(grew <= 12, || {
            format!("widening grew {grew} times, ending at {x}")
        })
    }));

    out.push(check("pairwise-emptiness", &name, cases, rng, |rng| {
        let xs: Vec<B::Elem> = (0..3).map(|_| nonbottom(b, rng)).collect();
        let all = b.meet(&b.meet(&xs[0], &xs[1]), &xs[2]);
        if !b.is_bottom(&all) {
            return Outcome::Skip;
        }
        let pair = (0..3).any(|i| (i + 1..3).any(|j| b.is_bottom(&b.meet(&xs[i], &xs[j]))));
        expect(pair, || {
            format!(
                "{} meet {} meet {} is empty, no pair is",
                xs[0], xs[1], xs[2]
            )
        })
    }));

    out.push(check(
        "restricted-distributivity",
        &name,
        cases,
        rng,
        |rng| {
            let x = b.random_elem(rng);
            let k = rng.gen_range(2..=3);
            let xs: Vec<B::Elem> = (0..k).map(|_| b.random_elem(rng)).collect();
            let meet = xs.iter().skip(1).fold(xs[0].clone(), |a, e| b.meet(&a, e));
            if b.is_bottom(&meet) {
                return Outcome::Skip;
            }
            let lhs = xs
                .iter()
                .map(|e| b.add(&x, e))
                .reduce(|a, e| b.meet(&a, &e))
                .unwrap();
            let rhs = b.add(&x, &meet);
            expect(same(b, &lhs, &rhs), || {
                let fam: Vec<String> = xs.iter().map(|e| e.to_string()).collect();
                format!("x = {x}, family [{}]: {lhs} vs {rhs}", fam.join(", "))
            })
        },
    ));

    out.push(check("neg-morphism", &name, cases, rng, |rng| {
        let (x, y) = (b.random_elem(rng), b.random_elem(rng));
        let add = same(b, &b.neg(&b.add(&x, &y)), &b.add(&b.neg(&x), &b.neg(&y)));
        let meet = same(b, &b.neg(&b.meet(&x, &y)), &b.meet(&b.neg(&x), &b.neg(&y)));
        expect(add && meet, || format!("{x}, {y}"))
    }));

    out.push(check("add-meet-algebra", &name, cases, rng, |rng| {
        let (x, y, z) = (b.random_elem(rng), b.random_elem(rng), b.random_elem(rng));
        let ok = same(b, &b.add(&x, &y), &b.add(&y, &x))
            && same(b, &b.add(&b.add(&x, &y), &z), &b.add(&x, &b.add(&y, &z)))
            && same(b, &b.meet(&x, &y), &b.meet(&y, &x))
            && same(
                b,
                &b.meet(&b.meet(&x, &y), &z),
                &b.meet(&x, &b.meet(&y, &z)),
            )
            && same(b, &b.meet(&x, &x), &x)
            && same(b, &b.add(&x, &b.singleton(&Scalar::zero())), &x);
        expect(ok, || format!("{x}, {y}, {z}"))
    }));

    out.push(check("approx-least", &name, cases, rng, |rng| {
        let lit = random_literal(rng, mode);
        let a = b.approx(&lit);
        let pts: Vec<&Scalar> = witness
            .values()
            .iter()
            .filter(|c| lit.contains(c, mode))
            .collect();
        if let Some(c) = pts.iter().find(|c| !b.member(&a, c)) {
            return Outcome::Fail(format!("approx {lit} = {a} misses {c}"));
        }
        let z = b.random_elem(rng);
        if pts.iter().all(|c| b.member(&z, c)) && !b.leq(&a, &z) {
            return Outcome::Fail(format!("approx {lit} = {a} is above {z}"));
        }
        Outcome::Pass
    }));

    out
}

/// Laws of the interval/congruence reduction.
pub fn reduction_laws(
    ib: &IntervalBasis,
    cb: &CongruenceBasis,
    cases: usize,
    rng: &mut Rng,
) -> Vec<LawReport> {
    let r = IntervalCongruence;
    let name = format!("{}+{}", ib.label(), cb.label());
    let sample = ib.sample_window();
    let mut out = Vec::new();
    out.push(check("reduction-shrinks", &name, cases, rng, |rng| {
        let (x, y) = (ib.random_elem(rng), cb.random_elem(rng));
        let (rx, ry) = (r.reduce_left(ib, &x, &y), r.reduce_right(cb, &x, &y));
        expect(ib.leq(&rx, &x) && cb.leq(&ry, &y), || {
            format!("({x}, {y}) -> ({rx}, {ry})")
        })
    }));
    out.push(check(
        "reduction-preserves-intersection",
        &name,
        cases,
        rng,
        |rng| {
            let (x, y) = (ib.random_elem(rng), cb.random_elem(rng));
            let (rx, ry) = (r.reduce_left(ib, &x, &y), r.reduce_right(cb, &x, &y));
            let bad = sample.values().iter().find(|c| {
                (ib.member(&x, c) && cb.member(&y, c)) != (ib.member(&rx, c) && cb.member(&ry, c))
            });
            expect(bad.is_none(), || {
                format!("({x}, {y}) -> ({rx}, {ry}) at {}", bad.unwrap())
            })
        },
    ));
    out
}
