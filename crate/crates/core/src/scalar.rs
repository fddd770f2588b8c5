//! Exact scalars: arbitrary-precision rationals, values extended with
//! `±∞`, and congruence moduli extended with `∞`.
//!
//! Integers are rationals with denominator one; which of the two value sets
//! an analysis works over is selected once through [`ScalarMode`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("unknown scalar mode `{0}` (expected `int` or `rat`)")]
    UnknownMode(String),
}

/// The value set an analysis runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScalarMode {
    #[default]
    Int,
    Rat,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Int => f.write_str("int"),
            ScalarMode::Rat => f.write_str("rat"),
        }
    }
}

impl FromStr for ScalarMode {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(ScalarMode::Int),
            "rat" => Ok(ScalarMode::Rat),
            other => Err(ScalarError::UnknownMode(other.to_string())),
        }
    }
}

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar(BigRational::from_integer(v))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Scalar(v)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        Scalar(self.0.floor())
    }

    pub fn ceil(&self) -> Self {
        Scalar(self.0.ceil())
    }

    /// Exact quotient; panics on division by zero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        assert!(!other.is_zero(), "division by zero");
        Scalar(&self.0 / &other.0)
    }

    /// `self - m * floor(self / m)`, the representative in `[0, m)`.
    pub fn rem_euclid(&self, m: &Scalar) -> Scalar {
        debug_assert!(m.is_positive());
        let q = self.div(m).floor();
        self - &(m * &q)
    }

    /// Lossy conversion, only for diagnostics and small-window enumeration.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn belongs_to(&self, mode: ScalarMode) -> bool {
        mode == ScalarMode::Rat || self.is_integer()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse_int = |p: &str| -> Result<BigInt, ScalarError> {
            let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ScalarError::Malformed(s.to_string()));
            }
            p.parse::<BigInt>()
                .map_err(|_| ScalarError::Malformed(s.to_string()))
        };
        match t.split_once('/') {
            None => Ok(Scalar::from_bigint(parse_int(t)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(ScalarError::ZeroDenominator(s.to_string()));
                }
                Ok(Scalar(BigRational::new(num, den)))
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

/// A scalar or one of the two infinities.
///
/// The derived order follows variant order, so `NegInf < Finite(_) < PosInf`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtScalar {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl ExtScalar {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            ExtScalar::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtScalar::Finite(_))
    }

    /// `None` on `-oo + +oo`.
    pub fn checked_add(&self, other: &ExtScalar) -> Option<ExtScalar> {
        use ExtScalar::*;
        match (self, other) {
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
        }
    }

    /// Panics on `-oo + +oo`, which no caller may request.
    pub fn add(&self, other: &ExtScalar) -> ExtScalar {
        self.checked_add(other).expect("-oo + +oo is undefined")
    }

    pub fn neg(&self) -> ExtScalar {
        match self {
            ExtScalar::NegInf => ExtScalar::PosInf,
            ExtScalar::PosInf => ExtScalar::NegInf,
            ExtScalar::Finite(v) => ExtScalar::Finite(-v),
        }
    }

    /// Multiplication by a nonzero finite factor.
    pub fn scale(&self, k: &Scalar) -> ExtScalar {
        debug_assert!(!k.is_zero());
        match self {
            ExtScalar::Finite(v) => ExtScalar::Finite(k * v),
            inf if k.is_positive() => inf.clone(),
            inf => inf.neg(),
        }
    }
}

impl From<Scalar> for ExtScalar {
    fn from(v: Scalar) -> Self {
        ExtScalar::Finite(v)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::NegInf => f.write_str("-oo"),
            ExtScalar::PosInf => f.write_str("+oo"),
            ExtScalar::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-oo" => Ok(ExtScalar::NegInf),
            "+oo" | "oo" => Ok(ExtScalar::PosInf),
            other => other.parse().map(ExtScalar::Finite),
        }
    }
}

/// A congruence modulus: a strictly positive scalar, or `∞`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtModulus {
    Finite(Scalar),
    Inf,
}

impl ExtModulus {
    /// `None` unless `m > 0`.
    pub fn finite(m: Scalar) -> Option<ExtModulus> {
        m.is_positive().then_some(ExtModulus::Finite(m))
    }

    /// The modulus of the distance `|d|`, with distance zero read as `∞`.
    pub fn of_distance(d: &Scalar) -> ExtModulus {
        if d.is_zero() {
            ExtModulus::Inf
        } else {
            ExtModulus::Finite(d.abs())
        }
    }

    pub fn value(&self) -> Option<&Scalar> {
        match self {
            ExtModulus::Finite(m) => Some(m),
            ExtModulus::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtModulus::Inf)
    }

    /// `|k| * self` for nonzero `k`.
    pub fn scale(&self, k: &Scalar) -> ExtModulus {
        debug_assert!(!k.is_zero());
        match self {
            ExtModulus::Finite(m) => ExtModulus::Finite(m * &k.abs()),
            ExtModulus::Inf => ExtModulus::Inf,
        }
    }
}

impl fmt::Display for ExtModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtModulus::Finite(m) => write!(f, "{m}"),
            ExtModulus::Inf => f.write_str("oo"),
        }
    }
}

impl fmt::Debug for ExtModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `y | y2`: `y2` is a positive integer multiple of `y`, or `y2 = ∞`.
pub fn divides(y: &ExtModulus, y2: &ExtModulus) -> bool {
    match (y, y2) {
        (_, ExtModulus::Inf) => true,
        (ExtModulus::Inf, ExtModulus::Finite(_)) => false,
        (ExtModulus::Finite(a), ExtModulus::Finite(b)) => b.div(a).is_integer(),
    }
}

/// `x ≡ x2 [y]`.
pub fn congruent(x: &Scalar, x2: &Scalar, y: &ExtModulus) -> bool {
    if x == x2 {
        return true;
    }
    match y {
        ExtModulus::Inf => false,
        ExtModulus::Finite(m) => (x - x2).div(m).is_integer(),
    }
}

fn rational_parts(a: &Scalar, b: &Scalar) -> (BigInt, BigInt, BigInt) {
    // a = p/q, b = r/s  ->  (p*s, r*q, q*s)
    let ad = a.numer() * b.denom();
    let cb = b.numer() * a.denom();
    let bd = a.denom() * b.denom();
    (ad, cb, bd)
}

/// Greatest common divisor of two positive rationals: the largest `q > 0`
/// with both arguments integer multiples of `q`.
pub fn gcd_scalar(a: &Scalar, b: &Scalar) -> Scalar {
    let (ad, cb, bd) = rational_parts(a, b);
    Scalar(BigRational::new(ad.gcd(&cb), bd))
}

/// Least common multiple of two positive rationals.
pub fn lcm_scalar(a: &Scalar, b: &Scalar) -> Scalar {
    let (ad, cb, bd) = rational_parts(a, b);
    Scalar(BigRational::new(ad.lcm(&cb), bd))
}

pub fn gcd_ext(y: &ExtModulus, y2: &ExtModulus) -> ExtModulus {
    match (y, y2) {
        (ExtModulus::Inf, other) | (other, ExtModulus::Inf) => other.clone(),
        (ExtModulus::Finite(a), ExtModulus::Finite(b)) => ExtModulus::Finite(gcd_scalar(a, b)),
    }
}

pub fn lcm_ext(y: &ExtModulus, y2: &ExtModulus) -> ExtModulus {
    match (y, y2) {
        (ExtModulus::Inf, _) | (_, ExtModulus::Inf) => ExtModulus::Inf,
        (ExtModulus::Finite(a), ExtModulus::Finite(b)) => ExtModulus::Finite(lcm_scalar(a, b)),
    }
}

/// Chinese remaindering: some `x` with `x ≡ b [a]` and `x ≡ b2 [a2]`.
///
/// Returns `None` when the two classes are disjoint, i.e. when
/// `b ≢ b2 [gcd(a, a2)]`.
pub fn bezout_combine(b: &Scalar, a: &ExtModulus, b2: &Scalar, a2: &ExtModulus) -> Option<Scalar> {
    match (a, a2) {
        (ExtModulus::Inf, _) => congruent(b, b2, a2).then(|| b.clone()),
        (_, ExtModulus::Inf) => congruent(b2, b, a).then(|| b2.clone()),
        (ExtModulus::Finite(m), ExtModulus::Finite(m2)) => {
            // Clear all denominators, solve over the integers, scale back.
            let den = [m, m2, b, b2]
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let to_int = |v: &Scalar| -> BigInt {
                let scaled = &v.0 * BigRational::from_integer(den.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            };
            let (im, im2, ib, ib2) = (to_int(m), to_int(m2), to_int(b), to_int(b2));
            let eg = im.extended_gcd(&im2);
            let diff = &ib2 - &ib;
            if !(&diff % &eg.gcd).is_zero() {
                return None;
            }
            let lcm = (&im / &eg.gcd) * &im2;
            let x = (&ib + &im * &eg.x * (&diff / &eg.gcd)).mod_floor(&lcm);
            Some(Scalar(BigRational::new(x, den)))
        }
    }
}

impl PartialOrd for ExtModulus {
    /// Divisibility order: `y <= y2` iff `y | y2`.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (divides(self, other), divides(other, self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}
