use std::fmt;

use super::stride_meets_integers;
use crate::basis::{Basis, SetLiteral};
use crate::scalar::{ExtScalar, Scalar, ScalarMode};

/// Flat lattice of constants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Constant {
    Bottom,
    Const(Scalar),
    Top,
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Bottom => f.write_str("_|_"),
            Constant::Const(c) => write!(f, "{c}"),
            Constant::Top => f.write_str("T"),
        }
    }
}

impl fmt::Debug for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstantBasis {
    mode: ScalarMode,
}

impl ConstantBasis {
    pub fn new(mode: ScalarMode) -> Self {
        ConstantBasis { mode }
    }
}

impl Basis for ConstantBasis {
    type Elem = Constant;

    fn mode(&self) -> ScalarMode {
        self.mode
    }

    fn bottom(&self) -> Constant {
        Constant::Bottom
    }

    fn top(&self) -> Constant {
        Constant::Top
    }

    fn is_bottom(&self, x: &Constant) -> bool {
        matches!(x, Constant::Bottom)
    }

    fn leq(&self, x: &Constant, y: &Constant) -> bool {
        match (x, y) {
            (Constant::Bottom, _) | (_, Constant::Top) => true,
            (Constant::Const(a), Constant::Const(b)) => a == b,
            _ => false,
        }
    }

    fn meet(&self, x: &Constant, y: &Constant) -> Constant {
        match (x, y) {
            (Constant::Top, o) | (o, Constant::Top) => o.clone(),
            (Constant::Const(a), Constant::Const(b)) if a == b => x.clone(),
            _ => Constant::Bottom,
        }
    }

    fn join(&self, x: &Constant, y: &Constant) -> Constant {
        match (x, y) {
            (Constant::Bottom, o) | (o, Constant::Bottom) => o.clone(),
            (Constant::Const(a), Constant::Const(b)) if a == b => x.clone(),
            _ => Constant::Top,
        }
    }

    // No infinite ascending chains: widening is the join.
    fn widen(&self, x: &Constant, y: &Constant) -> Constant {
        self.join(x, y)
    }

    fn neg(&self, x: &Constant) -> Constant {
        match x {
            Constant::Const(c) => Constant::Const(-c),
            other => other.clone(),
        }
    }

    fn add(&self, x: &Constant, y: &Constant) -> Constant {
        match (x, y) {
            (Constant::Bottom, _) | (_, Constant::Bottom) => Constant::Bottom,
            (Constant::Const(a), Constant::Const(b)) => Constant::Const(a + b),
            _ => Constant::Top,
        }
    }

    fn scale(&self, k: &Scalar, x: &Constant) -> Constant {
        match x {
            Constant::Bottom => Constant::Bottom,
            _ if k.is_zero() => Constant::Const(Scalar::zero()),
            Constant::Const(c) => Constant::Const(k * c),
            Constant::Top => Constant::Top,
        }
    }

    fn singleton(&self, c: &Scalar) -> Constant {
        Constant::Const(c.clone())
    }

    fn approx(&self, lit: &SetLiteral) -> Constant {
        match lit {
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
                    Constant::Bottom
                } else if lo == hi {
                    Constant::Const(lo.finite().cloned().expect("finite equal bounds"))
                } else {
                    Constant::Top
                }
            }
            SetLiteral::Stride { modulus, residue } => {
                if modulus.is_zero() {
                    if residue.belongs_to(self.mode) {
                        Constant::Const(residue.clone())
                    } else {
                        Constant::Bottom
                    }
                } else if self.mode == ScalarMode::Int && !stride_meets_integers(modulus, residue) {
                    Constant::Bottom
                } else {
                    Constant::Top
                }
            }
        }
    }

    fn member(&self, x: &Constant, c: &Scalar) -> bool {
        match x {
            Constant::Bottom => false,
            Constant::Const(v) => v == c,
            Constant::Top => c.belongs_to(self.mode),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: i64) -> Constant {
        Constant::Const(Scalar::int(v))
    }

    #[test]
    fn flat_order() {
        let b = ConstantBasis::new(ScalarMode::Int);
        assert!(b.leq(&Constant::Bottom, &k(3)));
        assert!(b.leq(&k(3), &Constant::Top));
        assert!(!b.leq(&k(3), &k(4)));
        assert_eq!(b.join(&k(3), &k(4)), Constant::Top);
        assert_eq!(b.meet(&k(3), &k(4)), Constant::Bottom);
        assert_eq!(b.widen(&k(3), &k(3)), k(3));
    }

    #[test]
    fn arithmetic() {
        let b = ConstantBasis::new(ScalarMode::Int);
        assert_eq!(b.add(&k(3), &k(4)), k(7));
        assert_eq!(b.add(&Constant::Top, &Constant::Bottom), Constant::Bottom);
        assert_eq!(b.scale(&Scalar::zero(), &Constant::Top), k(0));
        assert_eq!(
            b.scale(&Scalar::zero(), &Constant::Bottom),
            Constant::Bottom
        );
        assert_eq!(b.neg(&k(2)), k(-2));
    }

    #[test]
    fn approx_literals() {
        let zb = ConstantBasis::new(ScalarMode::Int);
        assert_eq!(zb.approx(&"[3,3]".parse().unwrap()), k(3));
        assert_eq!(zb.approx(&"[1/2,3/2]".parse().unwrap()), k(1));
        assert_eq!(zb.approx(&"[3,1]".parse().unwrap()), Constant::Bottom);
        assert_eq!(zb.approx(&"2Z+1".parse().unwrap()), Constant::Top);
        assert_eq!(zb.approx(&"2Z+1/2".parse().unwrap()), Constant::Bottom);
        let qb = ConstantBasis::new(ScalarMode::Rat);
        assert_eq!(qb.approx(&"[1/2,3/2]".parse().unwrap()), Constant::Top);
    }
}
