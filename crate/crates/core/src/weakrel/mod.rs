//! Weakly relational domains: conjunctions of `v_j - v_i ∈ γ(C)` over a basis.
//!
//! Matrices are values. Operations that need the closed form take it from the
//! argument's cache or compute it, and return matrices whose [`Status`]
//! records what is known about their own closure.

mod closure;
mod matrix;

use thiserror::Error;

pub use matrix::{ConstraintMatrix, Status};

use crate::basis::{Basis, SetLiteral};
use crate::nonrel::{eval_with, Expr};
use crate::scalar::Scalar;
use closure::close_cells;
use matrix::Body;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeakRelError {
    #[error("a constraint matrix needs at least the zero variable")]
    ZeroSize,
    #[error("the zero variable cannot be {0}")]
    Anchor(&'static str),
    #[error("variable {index} out of range for a matrix of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("{0} needs two distinct variables")]
    SameVariable(&'static str),
}

type Matrix<B> = ConstraintMatrix<<B as Basis>::Elem>;

/// Constraint matrices of size `n` (the zero variable included) over `B`.
#[derive(Debug, Clone)]
pub struct WeakRel<B> {
    basis: B,
    n: usize,
}

impl<B: Basis> WeakRel<B> {
    pub fn new(basis: B, n: usize) -> Result<Self, WeakRelError> {
        if n == 0 {
            return Err(WeakRelError::ZeroSize);
        }
        Ok(WeakRel { basis, n })
    }

    pub fn basis(&self) -> &B {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, idx: &[usize]) -> Result<(), WeakRelError> {
        match idx.iter().find(|&&i| i >= self.n) {
            Some(&index) => Err(WeakRelError::OutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }

    fn zero(&self) -> B::Elem {
        self.basis.singleton(&Scalar::zero())
    }

    fn build(&self, cells: Vec<B::Elem>, status: Status) -> Matrix<B> {
        if cells.iter().any(|c| self.basis.is_bottom(c)) {
            return ConstraintMatrix::empty(self.n);
        }
        ConstraintMatrix {
            n: self.n,
            body: Body::Cells { cells, status },
        }
    }

    pub fn top(&self) -> Matrix<B> {
        let n = self.n;
        let mut cells = vec![self.basis.top(); n * n];
        for i in 0..n {
            cells[i * n + i] = self.zero();
        }
        self.build(cells, Status::Closed)
    }

    pub fn bottom(&self) -> Matrix<B> {
        ConstraintMatrix::empty(self.n)
    }

    /// A coherent matrix whose upper triangle is `f(i, j)`.
    pub fn from_upper(&self, f: impl Fn(usize, usize) -> B::Elem) -> Matrix<B> {
        let n = self.n;
        let mut cells = vec![self.zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let e = f(i, j);
                cells[j * n + i] = self.basis.neg(&e);
                cells[i * n + j] = e;
            }
        }
        self.build(cells, Status::Unknown)
    }

    /// The stored cell, bottom for the empty matrix.
    pub fn cell(&self, m: &Matrix<B>, i: usize, j: usize) -> B::Elem {
        m.cell(i, j).cloned().unwrap_or_else(|| self.basis.bottom())
    }

    /// Replaces cell `(i, j)` and its mirror.
    pub fn with_cell(
        &self,
        m: &Matrix<B>,
        i: usize,
        j: usize,
        e: B::Elem,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i, j])?;
        if i == j {
            return Err(WeakRelError::SameVariable("with_cell"));
        }
        let Body::Cells { cells, .. } = &m.body else {
            return Ok(m.clone());
        };
        let n = self.n;
        let mut cells = cells.clone();
        cells[j * n + i] = self.basis.neg(&e);
        cells[i * n + j] = e;
        Ok(self.build(cells, Status::Unknown))
    }

    pub fn close(&self, m: &Matrix<B>) -> Matrix<B> {
        match &m.body {
            Body::Empty => m.clone(),
            Body::Cells {
                status: Status::Closed,
                ..
            } => m.clone(),
            Body::Cells {
                status: Status::Dirty(changed),
                ..
            } => self.close_incremental(m, &changed.iter().copied().collect::<Vec<_>>()),
            Body::Cells { cells, .. } => {
                let order: Vec<usize> = (0..self.n).collect();
                self.finish(close_cells(
                    &self.basis,
                    self.n,
                    cells.clone(),
                    &order,
                    None,
                ))
            }
        }
    }

    /// Closure of a matrix that was closed before the rows and columns in
    /// `changed` were modified.
    pub fn close_incremental(&self, m: &Matrix<B>, changed: &[usize]) -> Matrix<B> {
        let Body::Cells { cells, .. } = &m.body else {
            return m.clone();
        };
        let mut fixed = vec![true; self.n];
        for &c in changed {
            fixed[c] = false;
        }
        let mut order: Vec<usize> = (0..self.n).filter(|&v| fixed[v]).collect();
        order.extend((0..self.n).filter(|&v| !fixed[v]));
        self.finish(close_cells(
            &self.basis,
            self.n,
            cells.clone(),
            &order,
            Some(&fixed),
        ))
    }

    fn finish(&self, cells: Option<Vec<B::Elem>>) -> Matrix<B> {
        match cells {
            None => self.bottom(),
            Some(cells) => self.build(cells, Status::Closed),
        }
    }

    pub fn is_empty(&self, m: &Matrix<B>) -> bool {
        self.close(m).is_empty_state()
    }

    /// `Γ(a) ⊆ Γ(b)`; only `a` is closed.
    pub fn leq(&self, a: &Matrix<B>, b: &Matrix<B>) -> bool {
        let a = self.close(a);
        match (&a.body, &b.body) {
            (Body::Empty, _) => true,
            (_, Body::Empty) => false,
            (Body::Cells { cells: x, .. }, Body::Cells { cells: y, .. }) => {
                x.iter().zip(y).all(|(p, q)| self.basis.leq(p, q))
            }
        }
    }

    /// `Γ(a) = Γ(b)`, by comparing closed forms.
    pub fn eq(&self, a: &Matrix<B>, b: &Matrix<B>) -> bool {
        self.close(a) == self.close(b)
    }

    pub fn meet(&self, a: &Matrix<B>, b: &Matrix<B>) -> Matrix<B> {
        match (&a.body, &b.body) {
            (Body::Cells { cells: x, .. }, Body::Cells { cells: y, .. }) => self.build(
                x.iter()
                    .zip(y)
                    .map(|(p, q)| self.basis.meet(p, q))
                    .collect(),
                Status::Unknown,
            ),
            _ => self.bottom(),
        }
    }

    /// Cellwise join of the closed arguments; the result is closed.
    pub fn join(&self, a: &Matrix<B>, b: &Matrix<B>) -> Matrix<B> {
        let (a, b) = (self.close(a), self.close(b));
        match (&a.body, &b.body) {
            (Body::Empty, _) => b,
            (_, Body::Empty) => a,
            (Body::Cells { cells: x, .. }, Body::Cells { cells: y, .. }) => self.build(
                x.iter()
                    .zip(y)
                    .map(|(p, q)| self.basis.join(p, q))
                    .collect(),
                Status::Closed,
            ),
        }
    }

    /// Cellwise widening. The left argument is used exactly as given: closing
    /// it would break the ascending chain condition.
    pub fn widen(&self, a: &Matrix<B>, b: &Matrix<B>) -> Matrix<B> {
        match (&a.body, &b.body) {
            (Body::Empty, _) => b.clone(),
            (_, Body::Empty) => a.clone(),
            (Body::Cells { cells: x, .. }, Body::Cells { cells: y, .. }) => self.build(
                x.iter()
                    .zip(y)
                    .map(|(p, q)| self.basis.widen(p, q))
                    .collect(),
                Status::Unknown,
            ),
        }
    }

    /// `v_j - v_i ∈ e`.
    pub fn guard_elem(
        &self,
        m: &Matrix<B>,
        i: usize,
        j: usize,
        e: &B::Elem,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i, j])?;
        let Body::Cells { cells, status } = &m.body else {
            return Ok(m.clone());
        };
        if i == j {
            return Ok(if self.basis.contains_zero(e) {
                m.clone()
            } else {
                self.bottom()
            });
        }
        let n = self.n;
        let mut cells = cells.clone();
        let v = self.basis.meet(&cells[i * n + j], e);
        cells[j * n + i] = self.basis.neg(&v);
        cells[i * n + j] = v;
        Ok(self.build(cells, status.touch(&[i, j])))
    }

    /// `v_j - v_i ∈ s`; unary facts use `i = 0`.
    pub fn guard(
        &self,
        m: &Matrix<B>,
        i: usize,
        j: usize,
        s: &SetLiteral,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.guard_elem(m, i, j, &self.basis.approx(s))
    }

    /// The value set of `v_i`.
    pub fn project(&self, m: &Matrix<B>, i: usize) -> Result<B::Elem, WeakRelError> {
        self.check(&[i])?;
        Ok(self.cell(&self.close(m), 0, i))
    }

    pub fn forget(&self, m: &Matrix<B>, i: usize) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i])?;
        if i == 0 {
            return Err(WeakRelError::Anchor("forgotten"));
        }
        let m = self.close(m);
        let Body::Cells { cells, .. } = &m.body else {
            return Ok(m);
        };
        let n = self.n;
        let mut cells = cells.clone();
        for k in (0..n).filter(|&k| k != i) {
            cells[i * n + k] = self.basis.top();
            cells[k * n + i] = self.basis.top();
        }
        Ok(self.build(cells, Status::Closed))
    }

    /// `v_i ← v_i + c`.
    pub fn assign_translate(
        &self,
        m: &Matrix<B>,
        i: usize,
        c: &Scalar,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i])?;
        if i == 0 {
            return Err(WeakRelError::Anchor("assigned"));
        }
        let Body::Cells { cells, status } = &m.body else {
            return Ok(m.clone());
        };
        let n = self.n;
        let up = self.basis.singleton(c);
        let down = self.basis.singleton(&-c);
        let mut cells = cells.clone();
        for k in (0..n).filter(|&k| k != i) {
            cells[k * n + i] = self.basis.add(&cells[k * n + i], &up);
            cells[i * n + k] = self.basis.add(&cells[i * n + k], &down);
        }
        Ok(self.build(cells, status.clone()))
    }

    /// `v_i ← v_j + c`.
    pub fn assign_copy_offset(
        &self,
        m: &Matrix<B>,
        i: usize,
        j: usize,
        c: &Scalar,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i, j])?;
        if i == j {
            return self.assign_translate(m, i, c);
        }
        let f = self.forget(m, i)?;
        self.guard_elem(&f, j, i, &self.basis.singleton(c))
    }

    /// `v_i ← v_j + v_k`.
    pub fn assign_sum(
        &self,
        m: &Matrix<B>,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i, j, k])?;
        if j == i || k == i {
            return self.assign_generic(m, i, &Expr::add(Expr::var(j), Expr::var(k)));
        }
        let m = self.close(m);
        let a = self.cell(&m, 0, j);
        let b = self.cell(&m, 0, k);
        let f = self.forget(&m, i)?;
        let f = self.guard_elem(&f, 0, i, &self.basis.add(&a, &b))?;
        let f = self.guard_elem(&f, j, i, &b)?;
        self.guard_elem(&f, k, i, &a)
    }

    /// Non-relational fallback: evaluate over the projections, forget `v_i`,
    /// then bound it.
    pub fn assign_generic(
        &self,
        m: &Matrix<B>,
        i: usize,
        e: &Expr,
    ) -> Result<Matrix<B>, WeakRelError> {
        self.check(&[i])?;
        let vars: Vec<usize> = e.vars().into_iter().collect();
        self.check(&vars)?;
        let m = self.close(m);
        if m.is_empty_state() {
            return Ok(m);
        }
        let value = eval_with(&self.basis, e, &|v| self.cell(&m, 0, v));
        let f = self.forget(&m, i)?;
        self.guard_elem(&f, 0, i, &value)
    }

    /// Picks the most precise assignment transfer function for `v_i ← e`.
    pub fn assign(&self, m: &Matrix<B>, i: usize, e: &Expr) -> Result<Matrix<B>, WeakRelError> {
        let Some((coeffs, c)) = e.linear() else {
            return self.forget(m, i);
        };
        let one = Scalar::one();
        match coeffs.as_slice() {
            [(j, k)] if *k == one && *j == i => self.assign_translate(m, i, &c),
            [(j, k)] if *k == one && *j != 0 => self.assign_copy_offset(m, i, *j, &c),
            [(j, kj), (l, kl)] if *kj == one && *kl == one && c.is_zero() && *j != 0 => {
                self.assign_sum(m, i, *j, *l)
            }
            _ => self.assign_generic(m, i, e),
        }
    }

    pub fn gamma_contains(&self, m: &Matrix<B>, point: &[Scalar]) -> bool {
        let Body::Cells { cells, .. } = &m.body else {
            return false;
        };
        if point.len() != self.n || !point[0].is_zero() {
            return false;
        }
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.basis
                    .member(&cells[i * n + j], &(&point[j] - &point[i]))
            })
        })
    }

    /// One `vj - vi in elem` line per non-top cell of the closed form,
    /// upper triangle only; the zero variable prints as `0`.
    pub fn render(&self, m: &Matrix<B>, names: &[String]) -> Vec<String> {
        let m = self.close(m);
        let Body::Cells { cells, .. } = &m.body else {
            return vec!["_|_".to_string()];
        };
        let name = |v: usize| {
            if v == 0 {
                "0".to_string()
            } else {
                names[v].clone()
            }
        };
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = &cells[i * n + j];
                if !self.basis.is_top(e) {
                    out.push(format!("{} - {} in {e}", name(j), name(i)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests;
