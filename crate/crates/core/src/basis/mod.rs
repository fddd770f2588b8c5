//! The basis contract: a non-relational abstraction of sets of scalars.
//!
//! A basis supplies an ordered set of abstract values with a concretization
//! `γ`, a meet, an upper bound, a widening, and abstract counterparts of the
//! arithmetic operators. *Acceptable* bases additionally have exact `meet`,
//! `add` and `neg`, exact singletons, pairwise emptiness of empty meets, and
//! restricted distributivity of `meet` over `add`; those are the properties the
//! constraint-matrix closure relies on.
//!
//! `γ` is never materialized. It is observed through [`Basis::member`] and
//! [`Basis::sample`].

mod literal;
mod product;

use std::fmt;
use std::hash::Hash;

pub use literal::{LiteralError, SetLiteral};
pub use product::{ProductBasis, ProductElem};

use crate::scalar::{Scalar, ScalarMode};

/// Operations every basis provides.
///
/// Implementations are small immutable tables (they carry at most the scalar
/// mode); elements are plain values.
pub trait Basis: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn mode(&self) -> ScalarMode;

    fn bottom(&self) -> Self::Elem;

    /// The unique element with `γ(top) = 𝕀`.
    fn top(&self) -> Self::Elem;

    fn is_bottom(&self, x: &Self::Elem) -> bool;

    fn is_top(&self, x: &Self::Elem) -> bool {
        *x == self.top()
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn widen(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// `{ k·c | c ∈ γ(x) }`.
    fn scale(&self, k: &Scalar, x: &Self::Elem) -> Self::Elem;

    fn singleton(&self, c: &Scalar) -> Self::Elem;

    /// The least element whose concretization contains the literal's set.
    fn approx(&self, lit: &SetLiteral) -> Self::Elem;

    /// `c ∈ γ(x)`.
    fn member(&self, x: &Self::Elem, c: &Scalar) -> bool;

    fn contains_zero(&self, x: &Self::Elem) -> bool {
        self.member(x, &Scalar::zero())
    }

    /// The finite slice `γ(x) ∩ window`.
    fn sample(&self, x: &Self::Elem, window: &[Scalar]) -> Vec<Scalar> {
        window
            .iter()
            .filter(|c| self.member(x, c))
            .cloned()
            .collect()
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }
}

/// A reduction procedure between two bases.
///
/// `reduce_left(x, y) ⊑ x`, `reduce_right(x, y) ⊑ y`, and the intersection
/// of the concretizations is unchanged.
pub trait Reduction<A: Basis, B: Basis>: Clone + fmt::Debug + Send + Sync {
    fn reduce_left(&self, left: &A, x: &A::Elem, y: &B::Elem) -> A::Elem;
    fn reduce_right(&self, right: &B, x: &A::Elem, y: &B::Elem) -> B::Elem;
}
