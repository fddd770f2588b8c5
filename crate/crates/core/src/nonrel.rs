//! Non-relational environments: one basis element per variable.
//!
//! Slot 0 is the zero anchor and always holds `{0}`, so variable ids line up
//! with the relational domains.

use std::collections::BTreeSet;
use std::fmt;

use crate::basis::{Basis, SetLiteral};
use crate::scalar::Scalar;

/// Arithmetic expressions over variable ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Scalar),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Scalar, Box<Expr>),
    Random,
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn int(v: i64) -> Expr {
        Expr::Const(Scalar::int(v))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn mul(k: Scalar, a: Expr) -> Expr {
        Expr::Mul(k, Box::new(a))
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::Var(i) => {
                out.insert(*i);
            }
            Expr::Neg(a) | Expr::Mul(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Const(_) | Expr::Random => {}
        }
    }

    pub fn has_random(&self) -> bool {
        match self {
            Expr::Random => true,
            Expr::Neg(a) | Expr::Mul(_, a) => a.has_random(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.has_random() || b.has_random(),
            Expr::Const(_) | Expr::Var(_) => false,
        }
    }

    /// Concrete value; `None` when the expression draws a random value.
    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        Some(match self {
            Expr::Const(c) => c.clone(),
            Expr::Var(i) => point[*i].clone(),
            Expr::Neg(a) => -a.eval(point)?,
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(k, a) => k * &a.eval(point)?,
            Expr::Random => return None,
        })
    }

    /// `(coefficients, constant)` when the expression is affine.
    pub fn linear(&self) -> Option<(Vec<(usize, Scalar)>, Scalar)> {
        let mut coeffs = std::collections::BTreeMap::<usize, Scalar>::new();
        let mut constant = Scalar::zero();
        self.linear_into(&Scalar::one(), &mut coeffs, &mut constant)?;
        let coeffs = coeffs.into_iter().filter(|(_, k)| !k.is_zero()).collect();
        Some((coeffs, constant))
    }

    fn linear_into(
        &self,
        k: &Scalar,
        coeffs: &mut std::collections::BTreeMap<usize, Scalar>,
        constant: &mut Scalar,
    ) -> Option<()> {
        match self {
            Expr::Const(c) => *constant = &*constant + &(k * c),
            Expr::Var(i) => {
                let e = coeffs.entry(*i).or_insert_with(Scalar::zero);
                *e = &*e + k;
            }
            Expr::Neg(a) => a.linear_into(&-k, coeffs, constant)?,
            Expr::Add(a, b) => {
                a.linear_into(k, coeffs, constant)?;
                b.linear_into(k, coeffs, constant)?;
            }
            Expr::Sub(a, b) => {
                a.linear_into(k, coeffs, constant)?;
                b.linear_into(&-k, coeffs, constant)?;
            }
            Expr::Mul(c, a) => a.linear_into(&(k * c), coeffs, constant)?,
            Expr::Random => return None,
        }
        Some(())
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Expr::Const(c) => c.to_string(),
            Expr::Var(i) => names.get(*i).cloned().unwrap_or_else(|| format!("v{i}")),
            Expr::Neg(a) => format!("-({})", a.render(names)),
            Expr::Add(a, b) => format!("{} + {}", a.render(names), b.render(names)),
            Expr::Sub(a, b) => format!("{} - ({})", a.render(names), b.render(names)),
            Expr::Mul(k, a) => format!("{k}*({})", a.render(names)),
            Expr::Random => "?".to_string(),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Abstract evaluation by structural recursion; `lookup` gives each variable's
/// element.
pub fn eval_with<B: Basis>(basis: &B, e: &Expr, lookup: &dyn Fn(usize) -> B::Elem) -> B::Elem {
    match e {
        Expr::Const(c) => basis.singleton(c),
        Expr::Var(i) => lookup(*i),
        Expr::Neg(a) => basis.neg(&eval_with(basis, a, lookup)),
        Expr::Add(a, b) => basis.add(&eval_with(basis, a, lookup), &eval_with(basis, b, lookup)),
        Expr::Sub(a, b) => basis.sub(&eval_with(basis, a, lookup), &eval_with(basis, b, lookup)),
        Expr::Mul(k, a) => basis.scale(k, &eval_with(basis, a, lookup)),
        Expr::Random => basis.top(),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum AbstractEnv<E> {
    Bottom,
    Env(Vec<E>),
}

impl<E: fmt::Display> fmt::Debug for AbstractEnv<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbstractEnv::Bottom => f.write_str("_|_"),
            AbstractEnv::Env(v) => {
                f.write_str("{")?;
                for (i, e) in v.iter().enumerate().skip(1) {
                    if i > 1 {
                        f.write_str(", ")?;
                    }
                    write!(f, "v{i}: {e}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// The non-relational domain over `n - 1` variables.
#[derive(Debug, Clone)]
pub struct NonRel<B> {
    basis: B,
    n: usize,
}

impl<B: Basis> NonRel<B> {
    /// `n` counts the zero anchor.
    pub fn new(basis: B, n: usize) -> Self {
        assert!(n >= 1, "an environment holds at least the zero anchor");
        NonRel { basis, n }
    }

    pub fn basis(&self) -> &B {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> AbstractEnv<B::Elem> {
        let mut v = vec![self.basis.top(); self.n];
        v[0] = self.basis.singleton(&Scalar::zero());
        AbstractEnv::Env(v)
    }

    pub fn bottom(&self) -> AbstractEnv<B::Elem> {
        AbstractEnv::Bottom
    }

    fn smash(&self, v: Vec<B::Elem>) -> AbstractEnv<B::Elem> {
        if v.iter().any(|e| self.basis.is_bottom(e)) {
            AbstractEnv::Bottom
        } else {
            AbstractEnv::Env(v)
        }
    }

    pub fn is_bottom(&self, e: &AbstractEnv<B::Elem>) -> bool {
        matches!(e, AbstractEnv::Bottom)
    }

    pub fn get(&self, e: &AbstractEnv<B::Elem>, i: usize) -> B::Elem {
        match e {
            AbstractEnv::Bottom => self.basis.bottom(),
            AbstractEnv::Env(v) => v[i].clone(),
        }
    }

    pub fn leq(&self, a: &AbstractEnv<B::Elem>, b: &AbstractEnv<B::Elem>) -> bool {
        match (a, b) {
            (AbstractEnv::Bottom, _) => true,
            (_, AbstractEnv::Bottom) => false,
            (AbstractEnv::Env(x), AbstractEnv::Env(y)) => {
                x.iter().zip(y).all(|(p, q)| self.basis.leq(p, q))
            }
        }
    }

    fn pointwise(
        &self,
        a: &AbstractEnv<B::Elem>,
        b: &AbstractEnv<B::Elem>,
        op: impl Fn(&B, &B::Elem, &B::Elem) -> B::Elem,
    ) -> AbstractEnv<B::Elem> {
        match (a, b) {
            (AbstractEnv::Env(x), AbstractEnv::Env(y)) => self.smash(
                x.iter()
                    .zip(y)
                    .map(|(p, q)| op(&self.basis, p, q))
                    .collect(),
            ),
            _ => AbstractEnv::Bottom,
        }
    }

    pub fn join(&self, a: &AbstractEnv<B::Elem>, b: &AbstractEnv<B::Elem>) -> AbstractEnv<B::Elem> {
        match (a, b) {
            (AbstractEnv::Bottom, o) | (o, AbstractEnv::Bottom) => o.clone(),
            _ => self.pointwise(a, b, |bs, p, q| bs.join(p, q)),
        }
    }

    pub fn widen(
        &self,
        a: &AbstractEnv<B::Elem>,
        b: &AbstractEnv<B::Elem>,
    ) -> AbstractEnv<B::Elem> {
        match (a, b) {
            (AbstractEnv::Bottom, o) | (o, AbstractEnv::Bottom) => o.clone(),
            _ => self.pointwise(a, b, |bs, p, q| bs.widen(p, q)),
        }
    }

    pub fn meet(&self, a: &AbstractEnv<B::Elem>, b: &AbstractEnv<B::Elem>) -> AbstractEnv<B::Elem> {
        self.pointwise(a, b, |bs, p, q| bs.meet(p, q))
    }

    pub fn eval(&self, e: &Expr, env: &AbstractEnv<B::Elem>) -> B::Elem {
        match env {
            AbstractEnv::Bottom => self.basis.bottom(),
            AbstractEnv::Env(v) => eval_with(&self.basis, e, &|i| v[i].clone()),
        }
    }

    pub fn assign(&self, env: &AbstractEnv<B::Elem>, i: usize, e: &Expr) -> AbstractEnv<B::Elem> {
        let value = self.eval(e, env);
        match env {
            AbstractEnv::Bottom => AbstractEnv::Bottom,
            AbstractEnv::Env(v) => {
                let mut v = v.clone();
                v[i] = value;
                self.smash(v)
            }
        }
    }

    /// `v_i ∈ s`.
    pub fn guard(
        &self,
        env: &AbstractEnv<B::Elem>,
        i: usize,
        s: &SetLiteral,
    ) -> AbstractEnv<B::Elem> {
        match env {
            AbstractEnv::Bottom => AbstractEnv::Bottom,
            AbstractEnv::Env(v) => {
                let mut v = v.clone();
                v[i] = self.basis.meet(&v[i], &self.basis.approx(s));
                self.smash(v)
            }
        }
    }

    pub fn gamma_contains(&self, env: &AbstractEnv<B::Elem>, point: &[Scalar]) -> bool {
        match env {
            AbstractEnv::Bottom => false,
            AbstractEnv::Env(v) => {
                point.len() == self.n && v.iter().zip(point).all(|(e, c)| self.basis.member(e, c))
            }
        }
    }

    /// `name in elem` for every non-top variable.
    pub fn render(&self, env: &AbstractEnv<B::Elem>, names: &[String]) -> Vec<String> {
        match env {
            AbstractEnv::Bottom => vec!["_|_".to_string()],
            AbstractEnv::Env(v) => v
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, e)| !self.basis.is_top(e))
                .map(|(i, e)| format!("{} in {e}", names[i]))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{Congruence, CongruenceBasis, Interval, IntervalBasis};
    use crate::scalar::ScalarMode;

    fn dom() -> NonRel<IntervalBasis> {
        NonRel::new(IntervalBasis::new(ScalarMode::Int), 3)
    }

    fn env(d: &NonRel<IntervalBasis>, x: Interval) -> AbstractEnv<Interval> {
        let mut e = d.top();
        if let AbstractEnv::Env(v) = &mut e {
            v[1] = x;
        }
        e
    }

    #[test]
    fn pointwise_lattice() {
        let d = dom();
        let a = env(&d, Interval::finite(0, 1));
        let b = env(&d, Interval::finite(2, 3));
        assert_eq!(d.get(&d.join(&a, &b), 1), Interval::finite(0, 3));
        assert_eq!(d.meet(&a, &b), AbstractEnv::Bottom);
        let w = d.widen(&a, &env(&d, Interval::finite(0, 2)));
        assert_eq!(
            d.get(&w, 1),
            Interval::new(Scalar::zero().into(), crate::scalar::ExtScalar::PosInf)
        );
    }

    #[test]
    fn evaluation() {
        let d = dom();
        let e = env(&d, Interval::finite(0, 3));
        assert_eq!(
            d.eval(&Expr::add(Expr::var(1), Expr::int(2)), &e),
            Interval::finite(2, 5)
        );
        let a = env(&d, Interval::finite(0, 1));
        assert_eq!(
            d.eval(&Expr::sub(Expr::var(1), Expr::var(1)), &a),
            Interval::finite(-1, 1)
        );
        let y = d.assign(&e, 2, &Expr::add(Expr::var(1), Expr::int(2)));
        assert_eq!(d.get(&y, 2), Interval::finite(2, 5));
        assert_eq!(
            d.assign(&AbstractEnv::Bottom, 2, &Expr::int(1)),
            AbstractEnv::Bottom
        );

        let c = NonRel::new(CongruenceBasis::new(ScalarMode::Int), 2);
        let mut odd = c.top();
        if let AbstractEnv::Env(v) = &mut odd {
            v[1] = Congruence::ints(2, 1);
        }
        let tripled = c.assign(&odd, 1, &Expr::mul(Scalar::int(3), Expr::var(1)));
        assert_eq!(c.get(&tripled, 1), Congruence::ints(6, 3));
    }

    #[test]
    fn guards() {
        let d = dom();
        let e = env(&d, Interval::finite(0, 9));
        assert_eq!(
            d.get(&d.guard(&e, 1, &"[5,20]".parse().unwrap()), 1),
            Interval::finite(5, 9)
        );
        let c = NonRel::new(CongruenceBasis::new(ScalarMode::Int), 2);
        let mut even = c.top();
        if let AbstractEnv::Env(v) = &mut even {
            v[1] = Congruence::ints(2, 0);
        }
        assert_eq!(
            c.guard(&even, 1, &"2Z+1".parse().unwrap()),
            AbstractEnv::Bottom
        );
    }

    #[test]
    fn linear_forms() {
        let e = Expr::sub(
            Expr::add(Expr::var(1), Expr::int(3)),
            Expr::neg(Expr::var(2)),
        );
        let (coeffs, c) = e.linear().unwrap();
        assert_eq!(coeffs, vec![(1, Scalar::one()), (2, Scalar::one())]);
        assert_eq!(c, Scalar::int(3));
        let cancel = Expr::sub(Expr::var(1), Expr::var(1));
        assert_eq!(cancel.linear().unwrap().0, vec![]);
        assert!(Expr::add(Expr::var(1), Expr::Random).linear().is_none());
    }
}
