use std::fmt;

use crate::basis::SetLiteral;
use crate::scalar::{ExtScalar, Scalar, ScalarMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Le => "<=",
            CmpOp::Lt => "<",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        }
    }

    fn holds(self, a: &Scalar, b: &Scalar) -> bool {
        match self {
            CmpOp::Le => a <= b,
            CmpOp::Lt => a < b,
            CmpOp::Ge => a >= b,
            CmpOp::Gt => a > b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
        }
    }
}

/// A branch condition. Variables are ids; `DiffInSet(i, j, s)` and
/// `DiffCmp(i, j, ..)` are about `v_i - v_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GuardAtom {
    VarInSet(usize, SetLiteral),
    DiffInSet(usize, usize, SetLiteral),
    Cmp(usize, CmpOp, Scalar),
    DiffCmp(usize, usize, CmpOp, Scalar),
    /// `(v_i - v_j) % k == r`, with `v_j` absent for a unary test.
    Mod(usize, Option<usize>, Scalar, Scalar),
    NonDet,
}

/// The closed set covering `{ x | x op c }`, if any.
fn cmp_literal(op: CmpOp, c: &Scalar, mode: ScalarMode) -> Option<SetLiteral> {
    let int = mode == ScalarMode::Int;
    Some(match op {
        CmpOp::Le => SetLiteral::at_most(c.clone()),
        CmpOp::Ge => SetLiteral::at_least(c.clone()),
        CmpOp::Lt if int => SetLiteral::at_most((c - &Scalar::one()).ceil()),
        CmpOp::Gt if int => SetLiteral::at_least((c + &Scalar::one()).floor()),
        CmpOp::Lt => SetLiteral::at_most(c.clone()),
        CmpOp::Gt => SetLiteral::at_least(c.clone()),
        CmpOp::Eq => SetLiteral::singleton(c.clone()),
        CmpOp::Ne => return None,
    })
}

/// Complement of a half-line over ℤ.
fn complement(s: &SetLiteral, mode: ScalarMode) -> Option<SetLiteral> {
    if mode != ScalarMode::Int {
        return None;
    }
    match s {
        SetLiteral::Range {
            lo: ExtScalar::NegInf,
            hi: ExtScalar::Finite(h),
        } => Some(SetLiteral::at_least(h.floor() + Scalar::one())),
        SetLiteral::Range {
            lo: ExtScalar::Finite(l),
            hi: ExtScalar::PosInf,
        } => Some(SetLiteral::at_most(l.ceil() - Scalar::one())),
        _ => None,
    }
}

impl GuardAtom {
    /// `Some((from, to, s))` when the atom is `v_to - v_from ∈ s`, with
    /// `from = 0` for unary atoms; `None` when it filters nothing.
    pub fn constraint(&self, mode: ScalarMode) -> Option<(usize, usize, SetLiteral)> {
        match self {
            GuardAtom::VarInSet(i, s) => Some((0, *i, s.clone())),
            GuardAtom::DiffInSet(i, j, s) => Some((*j, *i, s.clone())),
            GuardAtom::Cmp(i, op, c) => cmp_literal(*op, c, mode).map(|s| (0, *i, s)),
            GuardAtom::DiffCmp(i, j, op, c) => cmp_literal(*op, c, mode).map(|s| (*j, *i, s)),
            GuardAtom::Mod(i, j, k, r) => {
                Some((j.unwrap_or(0), *i, SetLiteral::stride(k.clone(), r.clone())))
            }
            GuardAtom::NonDet => None,
        }
    }

    /// An atom covering every state that fails `self`.
    pub fn negate(&self, mode: ScalarMode) -> GuardAtom {
        let int = mode == ScalarMode::Int;
        let one = Scalar::one();
        let flip = |op: CmpOp, c: &Scalar| -> Option<(CmpOp, Scalar)> {
            Some(match op {
                CmpOp::Le if int => (CmpOp::Ge, c + &one),
                CmpOp::Ge if int => (CmpOp::Le, c - &one),
                CmpOp::Le => (CmpOp::Ge, c.clone()),
                CmpOp::Ge => (CmpOp::Le, c.clone()),
                CmpOp::Lt => (CmpOp::Ge, c.clone()),
                CmpOp::Gt => (CmpOp::Le, c.clone()),
                CmpOp::Ne => (CmpOp::Eq, c.clone()),
                CmpOp::Eq => return None,
            })
        };
        match self {
            GuardAtom::Cmp(i, op, c) if c.is_integer() || !int => match flip(*op, c) {
                Some((op, c)) => GuardAtom::Cmp(*i, op, c),
                None => GuardAtom::NonDet,
            },
            GuardAtom::DiffCmp(i, j, op, c) if c.is_integer() || !int => match flip(*op, c) {
                Some((op, c)) => GuardAtom::DiffCmp(*i, *j, op, c),
                None => GuardAtom::NonDet,
            },
            GuardAtom::VarInSet(i, s) => match complement(s, mode) {
                Some(s) => GuardAtom::VarInSet(*i, s),
                None => GuardAtom::NonDet,
            },
            GuardAtom::DiffInSet(i, j, s) => match complement(s, mode) {
                Some(s) => GuardAtom::DiffInSet(*i, *j, s),
                None => GuardAtom::NonDet,
            },
            _ => GuardAtom::NonDet,
        }
    }

    /// Concrete truth value; `None` for a nondeterministic choice.
    pub fn holds(&self, point: &[Scalar], mode: ScalarMode) -> Option<bool> {
        let diff = |i: usize, j: Option<usize>| match j {
            Some(j) => &point[i] - &point[j],
            None => point[i].clone(),
        };
        Some(match self {
            GuardAtom::VarInSet(i, s) => s.contains(&point[*i], mode),
            GuardAtom::DiffInSet(i, j, s) => s.contains(&diff(*i, Some(*j)), mode),
            GuardAtom::Cmp(i, op, c) => op.holds(&point[*i], c),
            GuardAtom::DiffCmp(i, j, op, c) => op.holds(&diff(*i, Some(*j)), c),
            GuardAtom::Mod(i, j, k, r) => {
                SetLiteral::stride(k.clone(), r.clone()).contains(&diff(*i, *j), mode)
            }
            GuardAtom::NonDet => return None,
        })
    }

    pub fn vars(&self) -> Vec<usize> {
        match self {
            GuardAtom::VarInSet(i, _) | GuardAtom::Cmp(i, _, _) | GuardAtom::Mod(i, None, _, _) => {
                vec![*i]
            }
            GuardAtom::DiffInSet(i, j, _)
            | GuardAtom::DiffCmp(i, j, _, _)
            | GuardAtom::Mod(i, Some(j), _, _) => vec![*i, *j],
            GuardAtom::NonDet => vec![],
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let d = |i: &usize, j: &usize| format!("{} - {}", names[*i], names[*j]);
        match self {
            GuardAtom::VarInSet(i, s) => format!("{} in {s}", names[*i]),
            GuardAtom::DiffInSet(i, j, s) => format!("{} in {s}", d(i, j)),
            GuardAtom::Cmp(i, op, c) => format!("{} {} {c}", names[*i], op.symbol()),
            GuardAtom::DiffCmp(i, j, op, c) => format!("{} {} {c}", d(i, j), op.symbol()),
            GuardAtom::Mod(i, None, k, r) => format!("{} % {k} == {r}", names[*i]),
            GuardAtom::Mod(i, Some(j), k, r) => format!("{} % {k} == {r}", d(i, j)),
            GuardAtom::NonDet => "?".to_string(),
        }
    }
}

impl fmt::Display for GuardAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.vars().into_iter().max().unwrap_or(0))
            .map(|i| format!("v{i}"))
            .collect();
        f.write_str(&self.render(&names))
    }
}
