use std::fmt;

use crate::basis::{Basis, SetLiteral};
use crate::scalar::{
    bezout_combine, congruent, divides, gcd_ext, lcm_ext, ExtModulus, ExtScalar, Scalar, ScalarMode,
};

/// A congruence class `aℤ + b`, or bottom.
///
/// A finite modulus keeps its residue in `[0, a)`; an infinite modulus denotes
/// the singleton `{b}`. Over ℚ no class covers the whole line, so a dedicated
/// `Top` exists there; over ℤ the top element is `1ℤ+0` and `Top` is never
/// produced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Congruence {
    Bottom,
    Class {
        modulus: ExtModulus,
        residue: Scalar,
    },
    Top,
}

impl Congruence {
    /// Canonicalizing constructor.
    pub fn class(modulus: ExtModulus, residue: Scalar) -> Congruence {
        let residue = match &modulus {
            ExtModulus::Finite(a) => residue.rem_euclid(a),
            ExtModulus::Inf => residue,
        };
        Congruence::Class { modulus, residue }
    }

    /// `aℤ + b` for an integer modulus `a > 0`.
    pub fn ints(a: i64, b: i64) -> Congruence {
        Congruence::class(
            ExtModulus::finite(Scalar::int(a)).expect("positive modulus"),
            Scalar::int(b),
        )
    }

    pub fn point(c: Scalar) -> Congruence {
        Congruence::Class {
            modulus: ExtModulus::Inf,
            residue: c,
        }
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Congruence::Bottom => f.write_str("_|_"),
            Congruence::Top => f.write_str("T"),
            Congruence::Class {
                modulus: ExtModulus::Inf,
                residue,
            } => write!(f, "{{{residue}}}"),
            Congruence::Class {
                modulus: ExtModulus::Finite(a),
                residue,
            } => write!(f, "{a}Z+{residue}"),
        }
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer congruences over ℤ, rational congruences over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceBasis {
    mode: ScalarMode,
}

impl CongruenceBasis {
    pub fn new(mode: ScalarMode) -> Self {
        CongruenceBasis { mode }
    }

    /// Restricts an arbitrary class to the mode's value set.
    fn in_mode(&self, c: Congruence) -> Congruence {
        match self.mode {
            ScalarMode::Rat => c,
            ScalarMode::Int => self.meet(&c, &Congruence::ints(1, 0)),
        }
    }
}

impl Basis for CongruenceBasis {
    type Elem = Congruence;

    fn mode(&self) -> ScalarMode {
        self.mode
    }

    fn bottom(&self) -> Congruence {
        Congruence::Bottom
    }

    fn top(&self) -> Congruence {
        match self.mode {
            ScalarMode::Int => Congruence::ints(1, 0),
            ScalarMode::Rat => Congruence::Top,
        }
    }

    fn is_bottom(&self, x: &Congruence) -> bool {
        matches!(x, Congruence::Bottom)
    }

    fn leq(&self, x: &Congruence, y: &Congruence) -> bool {
        use Congruence::*;
        match (x, y) {
            (Bottom, _) | (_, Top) => true,
            (_, Bottom) | (Top, _) => false,
            (
                Class {
                    modulus: a,
                    residue: b,
                },
                Class {
                    modulus: a2,
                    residue: b2,
                },
            ) => divides(a2, a) && congruent(b, b2, a2),
        }
    }

    fn meet(&self, x: &Congruence, y: &Congruence) -> Congruence {
        use Congruence::*;
        match (x, y) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Top, o) | (o, Top) => o.clone(),
            (
                Class {
                    modulus: a,
                    residue: b,
                },
                Class {
                    modulus: a2,
                    residue: b2,
                },
            ) => match bezout_combine(b, a, b2, a2) {
                Some(r) => Congruence::class(lcm_ext(a, a2), r),
                None => Bottom,
            },
        }
    }

    fn join(&self, x: &Congruence, y: &Congruence) -> Congruence {
        use Congruence::*;
        match (x, y) {
            (Bottom, o) | (o, Bottom) => o.clone(),
            (Top, _) | (_, Top) => Top,
            (
                Class {
                    modulus: a,
                    residue: b,
                },
                Class {
                    modulus: a2,
                    residue: b2,
                },
            ) => {
                // gcd(a, a', |b - b'|), reading a zero distance as ∞.
                let m = gcd_ext(&gcd_ext(a, a2), &ExtModulus::of_distance(&(b - b2)));
                Congruence::class(m, b.min(b2).clone())
            }
        }
    }

    /// Over ℤ the join already stabilizes. Over ℚ a modulus may shrink forever
    /// (1, 1/2, 1/4, ...), so the join is kept only while the new modulus stays
    /// on the grid of the old one; otherwise the result jumps to top.
    fn widen(&self, x: &Congruence, y: &Congruence) -> Congruence {
        let j = self.join(x, y);
        match (x, &j) {
            (
                Congruence::Class {
                    modulus: ExtModulus::Finite(a),
                    ..
                },
                Congruence::Class {
                    modulus: ExtModulus::Finite(a2),
                    ..
                },
            ) => {
                let grid = Scalar::from_bigint(a.denom().clone());
                if (a2 * &grid).is_integer() {
                    j
                } else {
                    self.top()
                }
            }
            _ => j,
        }
    }

    fn neg(&self, x: &Congruence) -> Congruence {
        match x {
            Congruence::Class { modulus, residue } => Congruence::class(modulus.clone(), -residue),
            other => other.clone(),
        }
    }

    fn add(&self, x: &Congruence, y: &Congruence) -> Congruence {
        use Congruence::*;
        match (x, y) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Top, _) | (_, Top) => Top,
            (
                Class {
                    modulus: a,
                    residue: b,
                },
                Class {
                    modulus: a2,
                    residue: b2,
                },
            ) => Congruence::class(gcd_ext(a, a2), b + b2),
        }
    }

    fn scale(&self, k: &Scalar, x: &Congruence) -> Congruence {
        match x {
            Congruence::Bottom => Congruence::Bottom,
            _ if k.is_zero() => Congruence::point(Scalar::zero()),
            Congruence::Top => Congruence::Top,
            Congruence::Class { modulus, residue } => {
                Congruence::class(modulus.scale(k), k * residue)
            }
        }
    }

    fn singleton(&self, c: &Scalar) -> Congruence {
        Congruence::point(c.clone())
    }

    fn approx(&self, lit: &SetLiteral) -> Congruence {
        match lit {
            SetLiteral::Stride { modulus, residue } => {
                let class = if modulus.is_zero() {
                    Congruence::point(residue.clone())
                } else {
                    Congruence::class(ExtModulus::Finite(modulus.abs()), residue.clone())
                };
                self.in_mode(class)
            }
            SetLiteral::Range { lo, hi } => {
                let (lo, hi) = match self.mode {
                    ScalarMode::Rat => (lo.clone(), hi.clone()),
                    ScalarMode::Int => (
                        match lo {
                            ExtScalar::Finite(v) => ExtScalar::Finite(v.ceil()),
                            other => other.clone(),
                        },
                        match hi {
                            ExtScalar::Finite(v) => ExtScalar::Finite(v.floor()),
                            other => other.clone(),
                        },
                    ),
                };
                if lo > hi || lo == ExtScalar::PosInf || hi == ExtScalar::NegInf {
                    Congruence::Bottom
                } else if lo == hi {
                    Congruence::point(lo.finite().cloned().expect("finite equal bounds"))
                } else {
                    // Over ℤ, two consecutive integers force modulus 1; over ℚ
                    // a continuum is in no class.
                    self.top()
                }
            }
        }
    }

    fn member(&self, x: &Congruence, c: &Scalar) -> bool {
        match x {
            Congruence::Bottom => false,
            Congruence::Top => c.belongs_to(self.mode),
            Congruence::Class { modulus, residue } => {
                c.belongs_to(self.mode) && congruent(c, residue, modulus)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zb() -> CongruenceBasis {
        CongruenceBasis::new(ScalarMode::Int)
    }

    fn c(a: i64, b: i64) -> Congruence {
        Congruence::ints(a, b)
    }

    fn pt(v: i64) -> Congruence {
        Congruence::point(Scalar::int(v))
    }

    /// Smallest congruence containing every listed member of a window.
    fn fit(members: &[i64]) -> Congruence {
        match members {
            [] => Congruence::Bottom,
            [v] => pt(*v),
            [first, rest @ ..] => {
                let g = rest
                    .iter()
                    .fold(0i64, |g, v| num_integer::gcd(g, (v - first).abs()));
                c(g, *first)
            }
        }
    }

    fn window_members(b: &CongruenceBasis, x: &Congruence) -> Vec<i64> {
        (-100..=100)
            .filter(|v| b.member(x, &Scalar::int(*v)))
            .collect()
    }

    #[test]
    fn meet_examples_match_enumeration() {
        let b = zb();
        let both: Vec<i64> = (-100..=100)
            .filter(|v: &i64| v.rem_euclid(4) == 1 && v.rem_euclid(6) == 3)
            .collect();
        assert_eq!(fit(&both), c(12, 9));
        assert_eq!(b.meet(&c(4, 1), &c(6, 3)), c(12, 9));
        assert_eq!(b.meet(&c(4, 1), &c(4, 2)), Congruence::Bottom);
        assert_eq!(b.meet(&pt(5), &c(2, 1)), pt(5));
        assert_eq!(b.meet(&pt(4), &c(2, 1)), Congruence::Bottom);
        assert_eq!(b.meet(&c(3, 0), &Congruence::Bottom), Congruence::Bottom);
    }

    #[test]
    fn join_and_add_follow_the_class_formulas() {
        let b = zb();
        assert_eq!(b.join(&c(4, 1), &c(6, 3)), c(2, 1));
        assert_eq!(b.join(&Congruence::Bottom, &c(6, 3)), c(6, 3));
        assert_eq!(b.join(&pt(3), &pt(7)), c(4, 3));
        assert_eq!(b.join(&pt(3), &pt(3)), pt(3));
        // Equal residues: gcd(a, a', 0) = gcd(a, a').
        assert_eq!(b.join(&c(4, 1), &c(6, 1)), c(2, 1));
        assert_eq!(b.add(&c(4, 1), &c(6, 3)), c(2, 0));
        assert_eq!(b.add(&Congruence::Bottom, &b.top()), Congruence::Bottom);
    }

    #[test]
    fn neg_and_scale_match_enumeration() {
        let b = zb();
        let negated: Vec<i64> = window_members(&b, &c(4, 1)).iter().map(|v| -v).collect();
        assert_eq!(fit(&negated), c(4, 3));
        assert_eq!(b.neg(&c(4, 1)), c(4, 3));
        let scaled: Vec<i64> = window_members(&b, &c(2, 1))
            .iter()
            .map(|v| -3 * v)
            .collect();
        assert_eq!(fit(&scaled), c(6, 3));
        assert_eq!(b.scale(&Scalar::int(-3), &c(2, 1)), c(6, 3));
        assert_eq!(b.scale(&Scalar::zero(), &c(2, 1)), pt(0));
    }

    #[test]
    fn order_matches_enumeration() {
        let b = zb();
        let sub = window_members(&b, &c(12, 9));
        assert!(sub.iter().all(|v| b.member(&c(6, 3), &Scalar::int(*v))));
        assert!(b.leq(&c(12, 9), &c(6, 3)));
        assert!(b.member(&c(6, 3), &Scalar::int(3)) && !b.member(&c(12, 9), &Scalar::int(3)));
        assert!(!b.leq(&c(6, 3), &c(12, 9)));
        assert!(b.leq(&Congruence::Bottom, &c(5, 2)));
        assert!(b.leq(&pt(9), &c(6, 3)));
        assert!(!b.leq(&c(6, 3), &pt(9)));
    }

    #[test]
    fn canonical_residues() {
        assert_eq!(c(4, -3), c(4, 1));
        assert_eq!(c(4, 9), c(4, 1));
        let q = Congruence::class(
            ExtModulus::finite(Scalar::ratio(3, 2)).unwrap(),
            Scalar::ratio(-1, 4),
        );
        assert_eq!(
            q,
            Congruence::Class {
                modulus: ExtModulus::finite(Scalar::ratio(3, 2)).unwrap(),
                residue: Scalar::ratio(5, 4)
            }
        );
    }

    #[test]
    fn approx_literals() {
        let b = zb();
        assert_eq!(b.approx(&"[3,3]".parse().unwrap()), pt(3));
        assert_eq!(b.approx(&"[3,4]".parse().unwrap()), b.top());
        assert_eq!(b.approx(&"[3,1]".parse().unwrap()), Congruence::Bottom);
        assert_eq!(b.approx(&"6Z+15".parse().unwrap()), c(6, 3));
        assert_eq!(b.approx(&"1/2Z+1/4".parse().unwrap()), Congruence::Bottom);
        assert_eq!(b.approx(&"3/2Z+0".parse().unwrap()), c(3, 0));
        let q = CongruenceBasis::new(ScalarMode::Rat);
        assert_eq!(q.approx(&"[0,1]".parse().unwrap()), Congruence::Top);
    }

    #[test]
    fn rational_widening_stabilizes() {
        let q = CongruenceBasis::new(ScalarMode::Rat);
        let half =
            |k: i64| Congruence::class(ExtModulus::Finite(Scalar::ratio(1, k)), Scalar::zero());
        let mut x = half(1);
        let mut changes = 0;
        for k in 1..20 {
            let next = q.widen(&x, &half(1 << k));
            if next != x {
                changes += 1;
            }
            x = next;
        }
        assert_eq!(x, Congruence::Top);
        assert!(changes <= 2);
        // Over ℤ the widening is the join.
        let b = zb();
        assert_eq!(b.widen(&c(12, 0), &c(8, 0)), c(4, 0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cong() -> impl Strategy<Value = Congruence> {
            prop_oneof![
                (1i64..30, -60i64..60).prop_map(|(a, b)| c(a, b)),
                (-60i64..60).prop_map(pt),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10_000))]
            #[test]
            fn equal_concretizations_imply_equal_representations(x in cong(), y in cong()) {
                let b = zb();
                let same = (-200..=200).all(|v| {
                    let s = Scalar::int(v);
                    b.member(&x, &s) == b.member(&y, &s)
                });
                prop_assert_eq!(same, x == y);
                if let Congruence::Class { modulus: ExtModulus::Finite(a), residue } = &x {
                    prop_assert!(!residue.is_negative() && residue < a);
                }
            }
        }
    }
}
