use super::guard::GuardAtom;
use crate::basis::Basis;
use crate::nonrel::{AbstractEnv, Expr, NonRel};
use crate::scalar::{Scalar, ScalarMode};
use crate::weakrel::{ConstraintMatrix, WeakRel};

/// What the fixpoint engine needs from a domain.
pub trait AbstractDomain {
    type State: Clone + std::fmt::Debug;

    fn mode(&self) -> ScalarMode;

    fn top(&self) -> Self::State;

    fn bottom(&self) -> Self::State;

    fn is_bottom(&self, s: &Self::State) -> bool;

    fn leq(&self, a: &Self::State, b: &Self::State) -> bool;

    fn join(&self, a: &Self::State, b: &Self::State) -> Self::State;

    fn widen(&self, a: &Self::State, b: &Self::State) -> Self::State;

    /// The normal form fed to transfer functions.
    fn normalize(&self, s: &Self::State) -> Self::State;

    fn assign(&self, s: &Self::State, var: usize, e: &Expr) -> Self::State;

    fn guard(&self, s: &Self::State, g: &GuardAtom) -> Self::State;

    fn gamma_contains(&self, s: &Self::State, point: &[Scalar]) -> bool;

    fn render(&self, s: &Self::State, names: &[String]) -> Vec<String>;
}

impl<B: Basis> AbstractDomain for NonRel<B> {
    type State = AbstractEnv<B::Elem>;

    fn mode(&self) -> ScalarMode {
        self.basis().mode()
    }

    fn top(&self) -> Self::State {
        NonRel::top(self)
    }

    fn bottom(&self) -> Self::State {
        NonRel::bottom(self)
    }

    fn is_bottom(&self, s: &Self::State) -> bool {
        NonRel::is_bottom(self, s)
    }

    fn leq(&self, a: &Self::State, b: &Self::State) -> bool {
        NonRel::leq(self, a, b)
    }

    fn join(&self, a: &Self::State, b: &Self::State) -> Self::State {
        NonRel::join(self, a, b)
    }

    fn widen(&self, a: &Self::State, b: &Self::State) -> Self::State {
        NonRel::widen(self, a, b)
    }

    fn normalize(&self, s: &Self::State) -> Self::State {
        s.clone()
    }

    fn assign(&self, s: &Self::State, var: usize, e: &Expr) -> Self::State {
        NonRel::assign(self, s, var, e)
    }

    /// Only unary atoms filter.
    fn guard(&self, s: &Self::State, g: &GuardAtom) -> Self::State {
        match g.constraint(self.mode()) {
            Some((0, i, lit)) => NonRel::guard(self, s, i, &lit),
            Some((from, to, lit)) if from == to => {
                if lit.contains(&Scalar::zero(), self.mode()) {
                    s.clone()
                } else {
                    NonRel::bottom(self)
                }
            }
            _ => s.clone(),
        }
    }

    fn gamma_contains(&self, s: &Self::State, point: &[Scalar]) -> bool {
        NonRel::gamma_contains(self, s, point)
    }

    fn render(&self, s: &Self::State, names: &[String]) -> Vec<String> {
        NonRel::render(self, s, names)
    }
}

impl<B: Basis> AbstractDomain for WeakRel<B> {
    type State = ConstraintMatrix<B::Elem>;

    fn mode(&self) -> ScalarMode {
        self.basis().mode()
    }

    fn top(&self) -> Self::State {
        WeakRel::top(self)
    }

    fn bottom(&self) -> Self::State {
        WeakRel::bottom(self)
    }

    fn is_bottom(&self, s: &Self::State) -> bool {
        self.is_empty(s)
    }

    fn leq(&self, a: &Self::State, b: &Self::State) -> bool {
        WeakRel::leq(self, a, b)
    }

    fn join(&self, a: &Self::State, b: &Self::State) -> Self::State {
        WeakRel::join(self, a, b)
    }

    fn widen(&self, a: &Self::State, b: &Self::State) -> Self::State {
        WeakRel::widen(self, a, b)
    }

    fn normalize(&self, s: &Self::State) -> Self::State {
        self.close(s)
    }

    fn assign(&self, s: &Self::State, var: usize, e: &Expr) -> Self::State {
        WeakRel::assign(self, s, var, e).expect("variable ids come from the program")
    }

    fn guard(&self, s: &Self::State, g: &GuardAtom) -> Self::State {
        match g.constraint(self.mode()) {
            Some((from, to, lit)) => {
                WeakRel::guard(self, s, from, to, &lit).expect("variable ids come from the program")
            }
            None => s.clone(),
        }
    }

    fn gamma_contains(&self, s: &Self::State, point: &[Scalar]) -> bool {
        WeakRel::gamma_contains(self, s, point)
    }

    fn render(&self, s: &Self::State, names: &[String]) -> Vec<String> {
        WeakRel::render(self, s, names)
    }
}
