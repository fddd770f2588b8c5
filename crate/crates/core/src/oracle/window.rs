use crate::scalar::{Scalar, ScalarMode};

/// The multiples of `1/den` in a closed range; always contains 0.
///
/// Points over a window are stored as numerators over `den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    lo: i64,
    hi: i64,
    den: i64,
    values: Vec<Scalar>,
}

impl Window {
    /// The multiples of `1/den` in `[lo, hi]`.
    pub fn grid(lo: i64, hi: i64, den: i64) -> Self {
        assert!(lo <= 0 && 0 <= hi && den > 0);
        let (lo, hi) = (lo * den, hi * den);
        Window {
            lo,
            hi,
            den,
            values: (lo..=hi).map(|p| Scalar::ratio(p, den)).collect(),
        }
    }

    pub fn integers(lo: i64, hi: i64) -> Self {
        Window::grid(lo, hi, 1)
    }

    /// `[-12, 12]` over ℤ; quarters in `[-4, 4]` over ℚ.
    pub fn default_for(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Int => Window::integers(-12, 12),
            ScalarMode::Rat => Window::grid(-4, 4, 4),
        }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Smallest and largest numerator.
    pub fn numer_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// `c · den` when it is an integer, whether or not `c` is in range.
    pub fn numer(&self, c: &Scalar) -> Option<i64> {
        (c * &Scalar::int(self.den)).to_i64()
    }

    pub fn scalar(&self, numer: i64) -> Scalar {
        Scalar::ratio(numer, self.den)
    }

    pub fn point(&self, numers: &[i64]) -> Vec<Scalar> {
        numers.iter().map(|&p| self.scalar(p)).collect()
    }

    pub fn contains(&self, c: &Scalar) -> bool {
        self.numer(c).is_some_and(|p| self.lo <= p && p <= self.hi)
    }

    pub fn contains_numer(&self, p: i64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
