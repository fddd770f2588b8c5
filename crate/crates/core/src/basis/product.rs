use std::fmt;

use super::{Basis, Reduction, SetLiteral};
use crate::scalar::{Scalar, ScalarMode};

/// An element of a reduced product: a canonical bottom, or a pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProductElem<X, Y> {
    Bottom,
    Pair(X, Y),
}

impl<X: fmt::Display, Y: fmt::Display> fmt::Display for ProductElem<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductElem::Bottom => f.write_str("_|_"),
            ProductElem::Pair(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl<X: fmt::Display, Y: fmt::Display> fmt::Debug for ProductElem<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduced product of two bases.
///
/// Every operator except widening works componentwise and then reduces.
/// Widening is componentwise only: reducing its output could shrink a
/// component again and restart an ascending chain.
#[derive(Debug, Clone)]
pub struct ProductBasis<A, B, R> {
    left: A,
    right: B,
    reduction: R,
}

impl<A: Basis, B: Basis, R: Reduction<A, B>> ProductBasis<A, B, R> {
    pub fn new(left: A, right: B, reduction: R) -> Self {
        assert_eq!(
            left.mode(),
            right.mode(),
            "product of bases over different scalar modes"
        );
        ProductBasis {
            left,
            right,
            reduction,
        }
    }

    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }

    /// Builds the reduced pair, or the canonical bottom.
    pub fn reduce(&self, x: A::Elem, y: B::Elem) -> ProductElem<A::Elem, B::Elem> {
        let (mut x, mut y) = (x, y);
        loop {
            if self.left.is_bottom(&x) || self.right.is_bottom(&y) {
                return ProductElem::Bottom;
            }
            let nx = self.reduction.reduce_left(&self.left, &x, &y);
            let ny = self.reduction.reduce_right(&self.right, &nx, &y);
            if nx == x && ny == y {
                return ProductElem::Pair(x, y);
            }
            x = nx;
            y = ny;
        }
    }

    fn lift(
        &self,
        a: &ProductElem<A::Elem, B::Elem>,
        fl: impl FnOnce(&A, &A::Elem) -> A::Elem,
        fr: impl FnOnce(&B, &B::Elem) -> B::Elem,
    ) -> ProductElem<A::Elem, B::Elem> {
        match a {
            ProductElem::Bottom => ProductElem::Bottom,
            ProductElem::Pair(x, y) => self.reduce(fl(&self.left, x), fr(&self.right, y)),
        }
    }

    fn lift2(
        &self,
        a: &ProductElem<A::Elem, B::Elem>,
        b: &ProductElem<A::Elem, B::Elem>,
        fl: impl FnOnce(&A, &A::Elem, &A::Elem) -> A::Elem,
        fr: impl FnOnce(&B, &B::Elem, &B::Elem) -> B::Elem,
    ) -> ProductElem<A::Elem, B::Elem> {
        match (a, b) {
            (ProductElem::Pair(x1, y1), ProductElem::Pair(x2, y2)) => {
                self.reduce(fl(&self.left, x1, x2), fr(&self.right, y1, y2))
            }
            _ => ProductElem::Bottom,
        }
    }
}

impl<A: Basis, B: Basis, R: Reduction<A, B>> Basis for ProductBasis<A, B, R> {
    type Elem = ProductElem<A::Elem, B::Elem>;

    fn mode(&self) -> ScalarMode {
        self.left.mode()
    }

    fn bottom(&self) -> Self::Elem {
        ProductElem::Bottom
    }

    fn top(&self) -> Self::Elem {
        ProductElem::Pair(self.left.top(), self.right.top())
    }

    fn is_bottom(&self, x: &Self::Elem) -> bool {
        matches!(x, ProductElem::Bottom)
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (ProductElem::Bottom, _) => true,
            (_, ProductElem::Bottom) => false,
            (ProductElem::Pair(x1, y1), ProductElem::Pair(x2, y2)) => {
                self.left.leq(x1, x2) && self.right.leq(y1, y2)
            }
        }
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.lift2(a, b, |l, x, y| l.meet(x, y), |r, x, y| r.meet(x, y))
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (ProductElem::Bottom, other) | (other, ProductElem::Bottom) => other.clone(),
            _ => self.lift2(a, b, |l, x, y| l.join(x, y), |r, x, y| r.join(x, y)),
        }
    }

    fn widen(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (ProductElem::Bottom, other) | (other, ProductElem::Bottom) => other.clone(),
            (ProductElem::Pair(x1, y1), ProductElem::Pair(x2, y2)) => {
                ProductElem::Pair(self.left.widen(x1, x2), self.right.widen(y1, y2))
            }
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.lift(a, |l, x| l.neg(x), |r, y| r.neg(y))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.lift2(a, b, |l, x, y| l.add(x, y), |r, x, y| r.add(x, y))
    }

    fn scale(&self, k: &Scalar, a: &Self::Elem) -> Self::Elem {
        self.lift(a, |l, x| l.scale(k, x), |r, y| r.scale(k, y))
    }

    fn singleton(&self, c: &Scalar) -> Self::Elem {
        ProductElem::Pair(self.left.singleton(c), self.right.singleton(c))
    }

    fn approx(&self, lit: &SetLiteral) -> Self::Elem {
        self.reduce(self.left.approx(lit), self.right.approx(lit))
    }

    fn member(&self, a: &Self::Elem, c: &Scalar) -> bool {
        match a {
            ProductElem::Bottom => false,
            ProductElem::Pair(x, y) => self.left.member(x, c) && self.right.member(y, c),
        }
    }
}
