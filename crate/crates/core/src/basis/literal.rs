use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::{ExtScalar, Scalar, ScalarError, ScalarMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("malformed set literal `{0}`")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Surface syntax for a concrete set of scalars: `[lo,hi]` or `kZ+r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SetLiteral {
    /// All values between the bounds; infinite bounds are not members.
    Range { lo: ExtScalar, hi: ExtScalar },
    /// `{ k·n + r | n ∈ ℤ }`; a zero modulus denotes `{r}`.
    Stride { modulus: Scalar, residue: Scalar },
}

impl SetLiteral {
    pub fn range(lo: ExtScalar, hi: ExtScalar) -> Self {
        SetLiteral::Range { lo, hi }
    }

    pub fn singleton(c: Scalar) -> Self {
        SetLiteral::Range {
            lo: ExtScalar::Finite(c.clone()),
            hi: ExtScalar::Finite(c),
        }
    }

    pub fn at_most(c: Scalar) -> Self {
        SetLiteral::range(ExtScalar::NegInf, ExtScalar::Finite(c))
    }

    pub fn at_least(c: Scalar) -> Self {
        SetLiteral::range(ExtScalar::Finite(c), ExtScalar::PosInf)
    }

    pub fn stride(modulus: Scalar, residue: Scalar) -> Self {
        SetLiteral::Stride {
            modulus: modulus.abs(),
            residue,
        }
    }

    /// Membership in the literal's set, restricted to the mode's value set.
    pub fn contains(&self, c: &Scalar, mode: ScalarMode) -> bool {
        if !c.belongs_to(mode) {
            return false;
        }
        match self {
            SetLiteral::Range { lo, hi } => {
                let v = ExtScalar::Finite(c.clone());
                *lo <= v && v <= *hi
            }
            SetLiteral::Stride { modulus, residue } => {
                if modulus.is_zero() {
                    c == residue
                } else {
                    (c - residue).div(modulus).is_integer()
                }
            }
        }
    }
}

impl fmt::Display for SetLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetLiteral::Range { lo, hi } => write!(f, "[{lo},{hi}]"),
            SetLiteral::Stride { modulus, residue } if residue.is_negative() => {
                write!(f, "{modulus}Z-{}", -residue)
            }
            SetLiteral::Stride { modulus, residue } => write!(f, "{modulus}Z+{residue}"),
        }
    }
}

impl fmt::Debug for SetLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SetLiteral {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let malformed = || LiteralError::Malformed(s.to_string());
        if let Some(inner) = compact.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (lo, hi) = inner.split_once(',').ok_or_else(malformed)?;
            return Ok(SetLiteral::range(lo.parse()?, hi.parse()?));
        }
        let (modulus, rest) = compact.split_once('Z').ok_or_else(malformed)?;
        let residue = if let Some(r) = rest.strip_prefix('+') {
            r.parse::<Scalar>()?
        } else if let Some(r) = rest.strip_prefix('-') {
            -r.parse::<Scalar>()?
        } else if rest.is_empty() {
            Scalar::zero()
        } else {
            return Err(malformed());
        };
        Ok(SetLiteral::stride(modulus.parse()?, residue))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(
            "[-oo, 5]".parse::<SetLiteral>().unwrap(),
            SetLiteral::at_most(Scalar::int(5))
        );
        assert_eq!(
            "2Z+1".parse::<SetLiteral>().unwrap(),
            SetLiteral::stride(Scalar::int(2), Scalar::int(1))
        );
        assert_eq!(
            "4Z-1".parse::<SetLiteral>().unwrap(),
            SetLiteral::stride(Scalar::int(4), Scalar::int(-1))
        );
        assert_eq!(
            "1/2Z+1/4".parse::<SetLiteral>().unwrap(),
            SetLiteral::stride(Scalar::ratio(1, 2), Scalar::ratio(1, 4))
        );
        assert!("[1;2]".parse::<SetLiteral>().is_err());
        assert!("2Q+1".parse::<SetLiteral>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["[-oo,+oo]", "[1/2,3]", "3Z+2", "3Z-1", "[-4,-4]"] {
            let lit: SetLiteral = text.parse().unwrap();
            assert_eq!(lit.to_string(), text);
        }
    }

    #[test]
    fn membership_respects_mode() {
        let lit: SetLiteral = "[0,1]".parse().unwrap();
        assert!(lit.contains(&Scalar::ratio(1, 2), ScalarMode::Rat));
        assert!(!lit.contains(&Scalar::ratio(1, 2), ScalarMode::Int));
        let odd: SetLiteral = "2Z+1".parse().unwrap();
        assert!(odd.contains(&Scalar::int(-3), ScalarMode::Int));
        assert!(!odd.contains(&Scalar::int(4), ScalarMode::Int));
    }
}
