//! The shipped bases: constants, intervals, congruences, and the reduction
//! used by their product.

mod congruence;
mod constant;
mod interval;
mod reduction;

pub use congruence::{Congruence, CongruenceBasis};
pub use constant::{Constant, ConstantBasis};
pub use interval::{Interval, IntervalBasis};
pub use reduction::IntervalCongruence;

use crate::basis::ProductBasis;
use crate::scalar::{bezout_combine, ExtModulus, Scalar};

pub type IntervalCongruenceBasis = ProductBasis<IntervalBasis, CongruenceBasis, IntervalCongruence>;

/// Whether `kℤ + r` contains an integer, for `k > 0`.
pub(crate) fn stride_meets_integers(modulus: &Scalar, residue: &Scalar) -> bool {
    let one = ExtModulus::Finite(Scalar::one());
    let k = ExtModulus::Finite(modulus.abs());
    bezout_combine(residue, &k, &Scalar::zero(), &one).is_some()
}
