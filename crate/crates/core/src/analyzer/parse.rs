use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::guard::{CmpOp, GuardAtom};
use crate::basis::SetLiteral;
use crate::nonrel::Expr;
use crate::scalar::{ExtScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Assign(usize, Expr),
    If(GuardAtom, Vec<Stmt>, Vec<Stmt>),
    While(GuardAtom, Vec<Stmt>),
    Skip,
    /// Names the point before the next statement.
    Label(String),
}

/// A parsed program. `names[0]` is the zero anchor; user variables are
/// numbered from 1 in order of first assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub names: Vec<String>,
    pub body: Vec<Stmt>,
}

impl Program {
    /// Variable count including the anchor.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> Vec<String> {
        fn walk(stmts: &[Stmt], out: &mut Vec<String>) {
            for s in stmts {
                match s {
                    Stmt::Label(l) => out.push(l.clone()),
                    Stmt::If(_, a, b) => {
                        walk(a, out);
                        walk(b, out);
                    }
                    Stmt::While(_, b) => walk(b, out),
                    Stmt::Assign(..) | Stmt::Skip => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.body, &mut out);
        out
    }

    /// Every non-integer constant in the program.
    pub fn rational_constants(&self) -> Vec<Scalar> {
        fn expr(e: &Expr, out: &mut Vec<Scalar>) {
            match e {
                Expr::Const(c) => out.push(c.clone()),
                Expr::Mul(k, a) => {
                    out.push(k.clone());
                    expr(a, out);
                }
                Expr::Neg(a) => expr(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) => {
                    expr(a, out);
                    expr(b, out);
                }
                Expr::Var(_) | Expr::Random => {}
            }
        }
        fn lit(s: &SetLiteral, out: &mut Vec<Scalar>) {
            match s {
                SetLiteral::Range { lo, hi } => {
                    out.extend([lo, hi].into_iter().filter_map(|b| b.finite().cloned()))
                }
                SetLiteral::Stride { modulus, residue } => {
                    out.extend([modulus.clone(), residue.clone()])
                }
            }
        }
        fn guard(g: &GuardAtom, out: &mut Vec<Scalar>) {
            match g {
                GuardAtom::VarInSet(_, s) | GuardAtom::DiffInSet(_, _, s) => lit(s, out),
                GuardAtom::Cmp(_, _, c) | GuardAtom::DiffCmp(_, _, _, c) => out.push(c.clone()),
                GuardAtom::Mod(_, _, k, r) => out.extend([k.clone(), r.clone()]),
                GuardAtom::NonDet => {}
            }
        }
        fn walk(stmts: &[Stmt], out: &mut Vec<Scalar>) {
            for s in stmts {
                match s {
                    Stmt::Assign(_, e) => expr(e, out),
                    Stmt::If(g, a, b) => {
                        guard(g, out);
                        walk(a, out);
                        walk(b, out);
                    }
                    Stmt::While(g, b) => {
                        guard(g, out);
                        walk(b, out);
                    }
                    Stmt::Label(_) | Stmt::Skip => {}
                }
            }
        }
        let mut all = Vec::new();
        walk(&self.body, &mut all);
        all.into_iter().filter(|c| !c.is_integer()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(Scalar),
    Sym(&'static str),
    Eof,
}

const SYMBOLS: [&str; 22] = [
    "<=", ">=", "==", "!=", "<", ">", "=", "+", "-", "*", "%", "(", ")", "{", "}", "[", "]", ",",
    ";", ":", "@", "?",
];

const KEYWORDS: [&str; 9] = [
    "if", "else", "while", "for", "to", "in", "skip", "random", "oo",
];

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let start = i;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Num(s.parse().map_err(|e| ParseError {
                line: tl,
                col: tc,
                message: format!("{e}"),
            })?)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    i += s.len();
                    Tok::Sym(s)
                }
                None => {
                    return Err(ParseError {
                        line: tl,
                        col: tc,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        col += i - start;
        out.push(Lexed {
            tok,
            line: tl,
            col: tc,
        });
    }
    out.push(Lexed {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    vars: HashMap<String, usize>,
    names: Vec<String>,
    labels: BTreeSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn expect_kw(&mut self, k: &str) -> PResult<()> {
        if self.is_kw(k) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{k}`, found {}", self.describe()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                if s == "v0" {
                    return self.error("`v0` is reserved");
                }
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!(
                "expected a variable name, found {}",
                self.describe()
            )),
        }
    }

    fn use_var(&mut self) -> PResult<usize> {
        let at = self.pos;
        let name = self.ident()?;
        match self.vars.get(&name) {
            Some(&id) => Ok(id),
            None => {
                self.pos = at;
                self.error(format!(
                    "variable `{name}` used before its first assignment"
                ))
            }
        }
    }

    fn declare(&mut self, name: String) -> usize {
        if let Some(&id) = self.vars.get(&name) {
            return id;
        }
        let id = self.names.len();
        self.vars.insert(name.clone(), id);
        self.names.push(name);
        id
    }

    fn number(&mut self) -> PResult<Scalar> {
        let neg = if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        };
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => self.error(format!("expected a number, found {}", self.describe())),
        }
    }

    fn program(&mut self) -> PResult<Vec<Stmt>> {
        let mut body = Vec::new();
        while *self.peek() != Tok::Eof {
            body.extend(self.stmt()?);
        }
        Ok(body)
    }

    fn block(&mut self) -> PResult<Vec<Stmt>> {
        self.expect_sym("{")?;
        let mut body = Vec::new();
        while !self.is_sym("}") {
            if *self.peek() == Tok::Eof {
                return self.error("unclosed block");
            }
            body.extend(self.stmt()?);
        }
        self.pos += 1;
        Ok(body)
    }

    fn stmt(&mut self) -> PResult<Vec<Stmt>> {
        if self.eat_sym("@") {
            let at = self.pos;
            let label = self.ident()?;
            if !self.labels.insert(label.clone()) {
                self.pos = at;
                return self.error(format!("duplicate label `{label}`"));
            }
            self.expect_sym(":")?;
            let mut out = vec![Stmt::Label(label)];
            out.extend(self.stmt()?);
            return Ok(out);
        }
        if self.is_kw("skip") {
            self.pos += 1;
            self.expect_sym(";")?;
            return Ok(vec![Stmt::Skip]);
        }
        if self.is_kw("if") {
            self.pos += 1;
            self.expect_sym("(")?;
            let c = self.cond()?;
            self.expect_sym(")")?;
            let then = self.block()?;
            let els = if self.is_kw("else") {
                self.pos += 1;
                if self.is_kw("if") {
                    self.stmt()?
                } else {
                    self.block()?
                }
            } else {
                Vec::new()
            };
            return Ok(vec![Stmt::If(c, then, els)]);
        }
        if self.is_kw("while") {
            self.pos += 1;
            self.expect_sym("(")?;
            let c = self.cond()?;
            self.expect_sym(")")?;
            return Ok(vec![Stmt::While(c, self.block()?)]);
        }
        if self.is_kw("for") {
            self.pos += 1;
            let name = self.ident()?;
            self.expect_sym("=")?;
            let lo = self.number()?;
            self.expect_kw("to")?;
            let hi = self.number()?;
            let v = self.declare(name);
            let mut body = self.block()?;
            body.push(Stmt::Assign(
                v,
                Expr::add(Expr::var(v), Expr::Const(Scalar::one())),
            ));
            return Ok(vec![
                Stmt::Assign(v, Expr::Const(lo)),
                Stmt::While(GuardAtom::Cmp(v, CmpOp::Le, hi), body),
            ]);
        }
        let name = self.ident()?;
        self.expect_sym("=")?;
        let rhs = if self.eat_sym("?") {
            Expr::Random
        } else {
            self.expr()?
        };
        self.expect_sym(";")?;
        let v = self.declare(name);
        Ok(vec![Stmt::Assign(v, rhs)])
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat_sym("+") {
                e = Expr::add(e, self.term()?);
            } else if self.eat_sym("-") {
                e = Expr::sub(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::neg(self.term()?));
        }
        if self.eat_sym("(") {
            let e = self.expr()?;
            self.expect_sym(")")?;
            return Ok(e);
        }
        if let Tok::Num(n) = self.peek().clone() {
            self.pos += 1;
            if self.eat_sym("*") {
                return Ok(Expr::mul(n, self.term()?));
            }
            return Ok(Expr::Const(n));
        }
        Ok(Expr::var(self.use_var()?))
    }

    fn cond(&mut self) -> PResult<GuardAtom> {
        if self.eat_sym("?") {
            return Ok(GuardAtom::NonDet);
        }
        if self.is_kw("random") {
            self.pos += 1;
            self.expect_sym("(")?;
            self.expect_sym(")")?;
            return Ok(GuardAtom::NonDet);
        }
        let x = self.use_var()?;
        let y = if self.is_sym("-") && matches!(self.peek_at(1), Tok::Ident(_)) {
            self.pos += 1;
            Some(self.use_var()?)
        } else {
            None
        };
        if self.is_kw("in") {
            self.pos += 1;
            let s = self.set_literal()?;
            return Ok(match y {
                Some(y) => GuardAtom::DiffInSet(x, y, s),
                None => GuardAtom::VarInSet(x, s),
            });
        }
        if self.eat_sym("%") {
            let k = self.number()?;
            if k.is_zero() {
                return self.error("modulus must be nonzero");
            }
            self.expect_sym("==")?;
            let r = self.number()?;
            return Ok(GuardAtom::Mod(x, y, k.abs(), r));
        }
        let op = match self.peek() {
            Tok::Sym("<=") => CmpOp::Le,
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym(">=") => CmpOp::Ge,
            Tok::Sym(">") => CmpOp::Gt,
            Tok::Sym("==") => CmpOp::Eq,
            Tok::Sym("!=") => CmpOp::Ne,
            _ => return self.error(format!("expected a comparison, found {}", self.describe())),
        };
        self.pos += 1;
        let c = self.number()?;
        Ok(match y {
            Some(y) => GuardAtom::DiffCmp(x, y, op, c),
            None => GuardAtom::Cmp(x, op, c),
        })
    }

    fn bound(&mut self) -> PResult<ExtScalar> {
        let sign = if self.is_sym("-") {
            Some(true)
        } else if self.is_sym("+") {
            Some(false)
        } else {
            None
        };
        if sign.is_some() && matches!(self.peek_at(1), Tok::Ident(s) if s == "oo") {
            self.pos += 2;
            return Ok(if sign == Some(true) {
                ExtScalar::NegInf
            } else {
                ExtScalar::PosInf
            });
        }
        Ok(ExtScalar::Finite(self.number()?))
    }

    fn set_literal(&mut self) -> PResult<SetLiteral> {
        if self.eat_sym("[") {
            let lo = self.bound()?;
            self.expect_sym(",")?;
            let hi = self.bound()?;
            self.expect_sym("]")?;
            return Ok(SetLiteral::range(lo, hi));
        }
        let k = self.number()?;
        self.expect_kw("Z")?;
        let r = if self.is_sym("+") || self.is_sym("-") {
            self.number()?
        } else {
            Scalar::zero()
        };
        Ok(SetLiteral::stride(k, r))
    }
}

pub fn parse(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: HashMap::new(),
        names: vec!["v0".to_string()],
        labels: BTreeSet::new(),
    };
    let body = p.program()?;
    Ok(Program {
        names: p.names,
        body,
    })
}
