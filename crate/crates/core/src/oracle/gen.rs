use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use super::window::Window;
use crate::analyzer::{CmpOp, GuardAtom, Program, Stmt};
use crate::bases::{
    Congruence, CongruenceBasis, Constant, ConstantBasis, Interval, IntervalBasis,
    IntervalCongruenceBasis,
};
use crate::basis::{Basis, SetLiteral};
use crate::nonrel::Expr;
use crate::scalar::{ExtModulus, ExtScalar, Scalar, ScalarMode};
use crate::weakrel::{ConstraintMatrix, WeakRel};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A small constant: an integer in `[-3, 3]`, or a half in `[-1, 1]` over ℚ.
pub fn small(rng: &mut Rng, mode: ScalarMode) -> Scalar {
    match mode {
        ScalarMode::Int => Scalar::int(rng.gen_range(-3..=3)),
        ScalarMode::Rat => Scalar::ratio(rng.gen_range(-2..=2), 2),
    }
}

fn bound(rng: &mut Rng, mode: ScalarMode, inf: ExtScalar) -> ExtScalar {
    if rng.gen_bool(0.25) {
        inf
    } else {
        small(rng, mode).into()
    }
}

/// Random elements for law checking.
pub trait Generate: Basis {
    fn label(&self) -> String;

    /// Bottom is drawn rarely; constants come from [`small`].
    fn random_elem(&self, rng: &mut Rng) -> Self::Elem;

    /// Where membership is sampled for one-dimensional laws.
    fn sample_window(&self) -> Window {
        match self.mode() {
            ScalarMode::Int => Window::integers(-12, 12),
            ScalarMode::Rat => Window::grid(-4, 4, 4),
        }
    }

    /// Where witnesses are searched for one-dimensional laws.
    fn witness_window(&self) -> Window {
        match self.mode() {
            ScalarMode::Int => Window::integers(-40, 40),
            ScalarMode::Rat => Window::grid(-12, 12, 4),
        }
    }

    /// Where `Γ` is enumerated for matrix laws.
    fn matrix_window(&self) -> Window {
        Window::default_for(self.mode())
    }
}

fn mode_label(mode: ScalarMode) -> &'static str {
    match mode {
        ScalarMode::Int => "Z",
        ScalarMode::Rat => "Q",
    }
}

impl Generate for ConstantBasis {
    fn label(&self) -> String {
        format!("const/{}", mode_label(self.mode()))
    }

    fn random_elem(&self, rng: &mut Rng) -> Constant {
        match rng.gen_range(0..20) {
            0 => Constant::Bottom,
            1..=6 => Constant::Top,
            _ => Constant::Const(small(rng, self.mode())),
        }
    }
}

impl Generate for IntervalBasis {
    fn label(&self) -> String {
        format!("interval/{}", mode_label(self.mode()))
    }

    fn random_elem(&self, rng: &mut Rng) -> Interval {
        if rng.gen_range(0..20) == 0 {
            return Interval::Bottom;
        }
        let mode = self.mode();
        let a = bound(rng, mode, ExtScalar::NegInf);
        let b = bound(rng, mode, ExtScalar::PosInf);
        match (a, b) {
            (ExtScalar::Finite(x), ExtScalar::Finite(y)) if x > y => {
                Interval::new(y.into(), x.into())
            }
            (a, b) => Interval::new(a, b),
        }
    }
}

impl Generate for CongruenceBasis {
    fn label(&self) -> String {
        format!("congruence/{}", mode_label(self.mode()))
    }

    fn random_elem(&self, rng: &mut Rng) -> Congruence {
        let mode = self.mode();
        match rng.gen_range(0..20) {
            0 => Congruence::Bottom,
            1..=3 => self.top(),
            4..=8 => Congruence::point(small(rng, mode)),
            _ => {
                let modulus = match mode {
                    ScalarMode::Int => Scalar::int(rng.gen_range(1..=4)),
                    ScalarMode::Rat => Scalar::ratio(rng.gen_range(1..=4), 2),
                };
                Congruence::class(ExtModulus::finite(modulus).unwrap(), small(rng, mode))
            }
        }
    }
}

impl Generate for IntervalCongruenceBasis {
    fn label(&self) -> String {
        format!("interval-congruence/{}", mode_label(self.mode()))
    }

    fn random_elem(&self, rng: &mut Rng) -> Self::Elem {
        if rng.gen_range(0..20) == 0 {
            return self.bottom();
        }
        let x = self.left().random_elem(rng);
        let y = match self.mode() {
            ScalarMode::Int => self.right().random_elem(rng),
            // Moduli stay in {1/2, 1} so that every behavior fits the window.
            ScalarMode::Rat => match rng.gen_range(0..4) {
                0 => Congruence::Top,
                1 => Congruence::point(small(rng, ScalarMode::Rat)),
                _ => Congruence::class(
                    ExtModulus::finite(Scalar::ratio(rng.gen_range(1..=2), 2)).unwrap(),
                    small(rng, ScalarMode::Rat),
                ),
            },
        };
        self.reduce(x, y)
    }

    fn sample_window(&self) -> Window {
        match self.mode() {
            ScalarMode::Int => Window::integers(-12, 12),
            ScalarMode::Rat => Window::grid(-6, 6, 4),
        }
    }

    fn witness_window(&self) -> Window {
        match self.mode() {
            ScalarMode::Int => Window::integers(-40, 40),
            ScalarMode::Rat => Window::grid(-24, 24, 4),
        }
    }

    fn matrix_window(&self) -> Window {
        match self.mode() {
            ScalarMode::Int => Window::integers(-24, 24),
            ScalarMode::Rat => Window::grid(-6, 6, 4),
        }
    }
}

/// A random set literal with small constants.
pub fn random_literal(rng: &mut Rng, mode: ScalarMode) -> SetLiteral {
    match rng.gen_range(0..4) {
        0 => SetLiteral::singleton(small(rng, mode)),
        1 => {
            let a = bound(rng, mode, ExtScalar::NegInf);
            let b = bound(rng, mode, ExtScalar::PosInf);
            match (a, b) {
                (ExtScalar::Finite(x), ExtScalar::Finite(y)) if x > y => {
                    SetLiteral::range(y.into(), x.into())
                }
                (a, b) => SetLiteral::range(a, b),
            }
        }
        _ => {
            let modulus = match mode {
                ScalarMode::Int => Scalar::int(rng.gen_range(1..=4)),
                ScalarMode::Rat => Scalar::ratio(rng.gen_range(1..=4), 2),
            };
            SetLiteral::stride(modulus, small(rng, mode))
        }
    }
}

/// A coherent matrix: each upper cell is top with probability `p_top`,
/// otherwise a random element.
pub fn random_matrix<B: Generate>(
    d: &WeakRel<B>,
    rng: &mut Rng,
    p_top: f64,
) -> ConstraintMatrix<B::Elem> {
    let b = d.basis();
    let n = d.n();
    let mut cells = vec![b.top(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            if !rng.gen_bool(p_top) {
                cells[i * n + j] = b.random_elem(rng);
            }
        }
    }
    d.from_upper(|i, j| cells[i * n + j].clone())
}

/// Like [`random_matrix`] but without bottom cells, so that most results are
/// non-empty.
pub fn random_nonempty_cells<B: Generate>(
    d: &WeakRel<B>,
    rng: &mut Rng,
    p_top: f64,
) -> ConstraintMatrix<B::Elem> {
    let b = d.basis();
    let n = d.n();
    let mut cells = vec![b.top(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            if !rng.gen_bool(p_top) {
                cells[i * n + j] = loop {
                    let e = b.random_elem(rng);
                    if !b.is_bottom(&e) {
                        break e;
                    }
                };
            }
        }
    }
    d.from_upper(|i, j| cells[i * n + j].clone())
}

/// A random affine or havoc right-hand side over variables `1..n`.
pub fn random_expr(rng: &mut Rng, mode: ScalarMode, vars: &[usize]) -> Expr {
    let var = |rng: &mut Rng| Expr::var(*vars.choose(rng).unwrap());
    match rng.gen_range(0..7) {
        0 => Expr::Const(small(rng, mode)),
        1 => Expr::add(var(rng), Expr::Const(small(rng, mode))),
        2 => var(rng),
        3 => Expr::add(var(rng), var(rng)),
        4 => Expr::add(
            Expr::mul(Scalar::int(rng.gen_range(2..=3)), var(rng)),
            Expr::Const(small(rng, mode)),
        ),
        5 => Expr::sub(var(rng), var(rng)),
        _ => Expr::Random,
    }
}

/// A random branch or loop condition over the data variables.
pub fn random_guard(rng: &mut Rng, mode: ScalarMode, vars: &[usize]) -> GuardAtom {
    let v = *vars.choose(rng).unwrap();
    let w = *vars.choose(rng).unwrap();
    let ops = [
        CmpOp::Le,
        CmpOp::Lt,
        CmpOp::Ge,
        CmpOp::Gt,
        CmpOp::Eq,
        CmpOp::Ne,
    ];
    match rng.gen_range(0..7) {
        0 => GuardAtom::NonDet,
        1 => GuardAtom::Cmp(v, *ops.choose(rng).unwrap(), small(rng, mode)),
        2 if v != w => GuardAtom::DiffCmp(v, w, *ops.choose(rng).unwrap(), small(rng, mode)),
        3 => GuardAtom::VarInSet(v, random_literal(rng, mode)),
        4 if v != w => GuardAtom::DiffInSet(v, w, random_literal(rng, mode)),
        5 => GuardAtom::Mod(
            v,
            None,
            Scalar::int(rng.gen_range(2..=3)),
            Scalar::int(rng.gen_range(0..=1)),
        ),
        _ => GuardAtom::Cmp(v, *ops.choose(rng).unwrap(), small(rng, mode)),
    }
}

/// A terminating program: data variables are assigned freely, loops are
/// `for` loops over dedicated counters with at most three iterations.
pub fn random_program(rng: &mut Rng, mode: ScalarMode) -> Program {
    let data = rng.gen_range(1..=3);
    let mut names = vec!["v0".to_string()];
    names.extend((1..=data).map(|k| format!("x{k}")));
    let vars: Vec<usize> = (1..=data).collect();
    let mut g = ProgramGen {
        rng,
        mode,
        vars,
        names,
        loops: 0,
    };
    let len = g.rng.gen_range(2..=5);
    let mut body = g.block(len, 0);
    body.push(Stmt::Label("end".to_string()));
    Program {
        names: g.names,
        body,
    }
}

struct ProgramGen<'a> {
    rng: &'a mut Rng,
    mode: ScalarMode,
    vars: Vec<usize>,
    names: Vec<String>,
    loops: usize,
}

impl ProgramGen<'_> {
    fn block(&mut self, len: usize, depth: usize) -> Vec<Stmt> {
        let mut out = Vec::new();
        for _ in 0..len {
            out.extend(self.stmt(depth));
        }
        out
    }

    fn stmt(&mut self, depth: usize) -> Vec<Stmt> {
        let roll = if depth >= 2 {
            0
        } else {
            self.rng.gen_range(0..6)
        };
        match roll {
            0..=2 => {
                let v = *self.vars.choose(self.rng).unwrap();
                vec![Stmt::Assign(
                    v,
                    random_expr(self.rng, self.mode, &self.vars),
                )]
            }
            3 | 4 => {
                let g = random_guard(self.rng, self.mode, &self.vars);
                let a = self.rng.gen_range(1..=2);
                let then = self.block(a, depth + 1);
                let b = self.rng.gen_range(0..=2);
                let els = self.block(b, depth + 1);
                vec![Stmt::If(g, then, els)]
            }
            _ if self.loops < 2 => {
                self.loops += 1;
                let c = self.names.len();
                self.names.push(format!("i{}", self.loops));
                let hi = self.rng.gen_range(0..=3);
                let len = self.rng.gen_range(1..=3);
                let mut body = self.block(len, depth + 1);
                body.push(Stmt::Assign(c, Expr::add(Expr::var(c), Expr::int(1))));
                vec![
                    Stmt::Assign(c, Expr::int(1)),
                    Stmt::While(GuardAtom::Cmp(c, CmpOp::Le, Scalar::int(hi)), body),
                ]
            }
            _ => vec![Stmt::Skip],
        }
    }
}
