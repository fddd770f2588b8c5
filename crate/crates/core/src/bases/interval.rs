use std::fmt;

use super::stride_meets_integers;
use crate::basis::{Basis, SetLiteral};
use crate::scalar::{ExtScalar, Scalar, ScalarMode};

/// A closed interval with possibly infinite bounds, or bottom.
///
/// Infinite bounds are never members. Constructed through [`Interval::new`],
/// which maps every empty range to `Bottom`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Interval {
    Bottom,
    Range(ExtScalar, ExtScalar),
}

impl Interval {
    pub fn new(lo: ExtScalar, hi: ExtScalar) -> Interval {
        if lo > hi || lo == ExtScalar::PosInf || hi == ExtScalar::NegInf {
            Interval::Bottom
        } else {
            Interval::Range(lo, hi)
        }
    }

    pub fn finite(lo: i64, hi: i64) -> Interval {
        Interval::new(Scalar::int(lo).into(), Scalar::int(hi).into())
    }

    pub fn top() -> Interval {
        Interval::Range(ExtScalar::NegInf, ExtScalar::PosInf)
    }

    pub fn point(c: Scalar) -> Interval {
        Interval::Range(ExtScalar::Finite(c.clone()), ExtScalar::Finite(c))
    }

    pub fn bounds(&self) -> Option<(&ExtScalar, &ExtScalar)> {
        match self {
            Interval::Bottom => None,
            Interval::Range(lo, hi) => Some((lo, hi)),
        }
    }

    /// `Some(c)` when the interval is `[c,c]`.
    pub fn as_point(&self) -> Option<&Scalar> {
        match self {
            Interval::Range(ExtScalar::Finite(a), ExtScalar::Finite(b)) if a == b => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Bottom => f.write_str("_|_"),
            Interval::Range(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Intervals over ℤ or ℚ; one implementation serves both modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalBasis {
    mode: ScalarMode,
}

impl IntervalBasis {
    pub fn new(mode: ScalarMode) -> Self {
        IntervalBasis { mode }
    }
}

impl Basis for IntervalBasis {
    type Elem = Interval;

    fn mode(&self) -> ScalarMode {
        self.mode
    }

    fn bottom(&self) -> Interval {
        Interval::Bottom
    }

    fn top(&self) -> Interval {
        Interval::top()
    }

    fn is_bottom(&self, x: &Interval) -> bool {
        matches!(x, Interval::Bottom)
    }

    fn leq(&self, x: &Interval, y: &Interval) -> bool {
        match (x, y) {
            (Interval::Bottom, _) => true,
            (_, Interval::Bottom) => false,
            (Interval::Range(a, b), Interval::Range(c, d)) => c <= a && b <= d,
        }
    }

    fn meet(&self, x: &Interval, y: &Interval) -> Interval {
        match (x, y) {
            (Interval::Range(a, b), Interval::Range(c, d)) => {
                Interval::new(a.max(c).clone(), b.min(d).clone())
            }
            _ => Interval::Bottom,
        }
    }

    fn join(&self, x: &Interval, y: &Interval) -> Interval {
        match (x, y) {
            (Interval::Bottom, o) | (o, Interval::Bottom) => o.clone(),
            (Interval::Range(a, b), Interval::Range(c, d)) => {
                Interval::Range(a.min(c).clone(), b.max(d).clone())
            }
        }
    }

    fn widen(&self, x: &Interval, y: &Interval) -> Interval {
        match (x, y) {
            (Interval::Bottom, o) | (o, Interval::Bottom) => o.clone(),
            (Interval::Range(a1, b1), Interval::Range(a2, b2)) => Interval::Range(
                if a1 <= a2 {
                    a1.clone()
                } else {
                    ExtScalar::NegInf
                },
                if b1 >= b2 {
                    b1.clone()
                } else {
                    ExtScalar::PosInf
                },
            ),
        }
    }

    fn neg(&self, x: &Interval) -> Interval {
        match x {
            Interval::Bottom => Interval::Bottom,
            Interval::Range(a, b) => Interval::Range(b.neg(), a.neg()),
        }
    }

    fn add(&self, x: &Interval, y: &Interval) -> Interval {
        match (x, y) {
            (Interval::Range(a, b), Interval::Range(c, d)) => Interval::Range(a.add(c), b.add(d)),
            _ => Interval::Bottom,
        }
    }

    fn scale(&self, k: &Scalar, x: &Interval) -> Interval {
        match x {
            Interval::Bottom => Interval::Bottom,
            _ if k.is_zero() => Interval::point(Scalar::zero()),
            Interval::Range(a, b) if k.is_positive() => Interval::Range(a.scale(k), b.scale(k)),
            Interval::Range(a, b) => Interval::Range(b.scale(k), a.scale(k)),
        }
    }

    fn singleton(&self, c: &Scalar) -> Interval {
        Interval::point(c.clone())
    }

    fn approx(&self, lit: &SetLiteral) -> Interval {
        match lit {
            SetLiteral::Range { lo, hi } => match self.mode {
                ScalarMode::Rat => Interval::new(lo.clone(), hi.clone()),
                ScalarMode::Int => {
                    let lo = match lo {
                        ExtScalar::Finite(v) => ExtScalar::Finite(v.ceil()),
                        other => other.clone(),
                    };
                    let hi = match hi {
                        ExtScalar::Finite(v) => ExtScalar::Finite(v.floor()),
                        other => other.clone(),
                    };
                    Interval::new(lo, hi)
                }
            },
            SetLiteral::Stride { modulus, residue } if modulus.is_zero() => {
                if residue.belongs_to(self.mode) {
                    Interval::point(residue.clone())
                } else {
                    Interval::Bottom
                }
            }
            SetLiteral::Stride { modulus, residue } => {
                if self.mode == ScalarMode::Int && !stride_meets_integers(modulus, residue) {
                    Interval::Bottom
                } else {
                    Interval::top()
                }
            }
        }
    }

    fn member(&self, x: &Interval, c: &Scalar) -> bool {
        match x {
            Interval::Bottom => false,
            Interval::Range(lo, hi) => {
                let v = ExtScalar::Finite(c.clone());
                c.belongs_to(self.mode) && *lo <= v && v <= *hi
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zb() -> IntervalBasis {
        IntervalBasis::new(ScalarMode::Int)
    }

    fn up(lo: i64) -> Interval {
        Interval::new(Scalar::int(lo).into(), ExtScalar::PosInf)
    }

    fn down(hi: i64) -> Interval {
        Interval::new(ExtScalar::NegInf, Scalar::int(hi).into())
    }

    #[test]
    fn meet_join_add_neg() {
        let b = zb();
        assert_eq!(
            b.meet(&Interval::finite(0, 5), &Interval::finite(3, 9)),
            Interval::finite(3, 5)
        );
        assert_eq!(
            b.meet(&Interval::finite(0, 1), &Interval::finite(3, 9)),
            Interval::Bottom
        );
        assert_eq!(
            b.join(&Interval::finite(0, 1), &Interval::finite(5, 6)),
            Interval::finite(0, 6)
        );
        assert_eq!(
            b.add(&Interval::finite(1, 2), &Interval::finite(3, 4)),
            Interval::finite(4, 6)
        );
        assert_eq!(b.add(&Interval::Bottom, &Interval::top()), Interval::Bottom);
        assert_eq!(b.neg(&Interval::finite(1, 3)), Interval::finite(-3, -1));
        assert_eq!(b.neg(&up(2)), down(-2));
    }

    #[test]
    fn widening_formula() {
        let b = zb();
        assert_eq!(
            b.widen(&Interval::finite(0, 1), &Interval::finite(0, 2)),
            up(0)
        );
        assert_eq!(
            b.widen(&Interval::finite(0, 10), &Interval::finite(0, 12)),
            up(0)
        );
        assert_eq!(
            b.widen(&Interval::finite(0, 10), &Interval::finite(-1, 10)),
            down(10)
        );
        assert_eq!(
            b.widen(&Interval::finite(0, 10), &Interval::finite(0, 10)),
            Interval::finite(0, 10)
        );
        assert_eq!(
            b.widen(&Interval::Bottom, &Interval::finite(2, 3)),
            Interval::finite(2, 3)
        );
    }

    #[test]
    fn scaling() {
        let b = zb();
        assert_eq!(
            b.scale(&Scalar::int(2), &Interval::finite(1, 3)),
            Interval::finite(2, 6)
        );
        assert_eq!(b.scale(&Scalar::int(-1), &up(1)), down(-1));
        assert_eq!(
            b.scale(&Scalar::zero(), &Interval::finite(1, 3)),
            Interval::finite(0, 0)
        );
        assert_eq!(
            b.scale(&Scalar::zero(), &Interval::Bottom),
            Interval::Bottom
        );
    }

    #[test]
    fn approx_rounds_in_integer_mode() {
        let b = zb();
        assert_eq!(
            b.approx(&"[1/2,7/2]".parse().unwrap()),
            Interval::finite(1, 3)
        );
        assert_eq!(b.approx(&"[3,1]".parse().unwrap()), Interval::Bottom);
        assert_eq!(b.approx(&"2Z+1".parse().unwrap()), Interval::top());
        let q = IntervalBasis::new(ScalarMode::Rat);
        assert_eq!(
            q.approx(&"[1/2,7/2]".parse().unwrap()),
            Interval::new(Scalar::ratio(1, 2).into(), Scalar::ratio(7, 2).into())
        );
    }

    #[test]
    fn infinite_bounds_are_not_members() {
        let b = zb();
        assert!(b.member(&up(0), &Scalar::int(1_000_000)));
        assert!(!b.member(&up(0), &Scalar::int(-1)));
        assert!(!b.member(&Interval::Bottom, &Scalar::zero()));
    }
}
