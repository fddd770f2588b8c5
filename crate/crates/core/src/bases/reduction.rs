use super::{Congruence, CongruenceBasis, Interval, IntervalBasis};
use crate::basis::{Basis, Reduction};
use crate::scalar::{ExtModulus, ExtScalar, Scalar};

/// Interval × congruence reduction.
///
/// The interval bounds move inward to the nearest members of the congruence.
/// A point interval `[c,c]` turns the congruence into `{c}` (or bottom), which
/// keeps product elements with equal concretizations equal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntervalCongruence;

fn round_up(lo: &Scalar, a: &Scalar, b: &Scalar) -> Scalar {
    b + &(a * &(lo - b).div(a).ceil())
}

fn round_down(hi: &Scalar, a: &Scalar, b: &Scalar) -> Scalar {
    b + &(a * &(hi - b).div(a).floor())
}

impl Reduction<IntervalBasis, CongruenceBasis> for IntervalCongruence {
    fn reduce_left(&self, _: &IntervalBasis, x: &Interval, y: &Congruence) -> Interval {
        let Some((lo, hi)) = x.bounds() else {
            return Interval::Bottom;
        };
        match y {
            Congruence::Bottom => Interval::Bottom,
            Congruence::Top => x.clone(),
            Congruence::Class {
                modulus: ExtModulus::Inf,
                residue,
            } => {
                let v = ExtScalar::Finite(residue.clone());
                if *lo <= v && v <= *hi {
                    Interval::point(residue.clone())
                } else {
                    Interval::Bottom
                }
            }
            Congruence::Class {
                modulus: ExtModulus::Finite(a),
                residue,
            } => {
                let lo = match lo {
                    ExtScalar::Finite(l) => ExtScalar::Finite(round_up(l, a, residue)),
                    other => other.clone(),
                };
                let hi = match hi {
                    ExtScalar::Finite(h) => ExtScalar::Finite(round_down(h, a, residue)),
                    other => other.clone(),
                };
                Interval::new(lo, hi)
            }
        }
    }

    fn reduce_right(&self, right: &CongruenceBasis, x: &Interval, y: &Congruence) -> Congruence {
        match x {
            Interval::Bottom => Congruence::Bottom,
            _ => match x.as_point() {
                Some(c) => right.meet(y, &Congruence::point(c.clone())),
                None => y.clone(),
            },
        }
    }
}
