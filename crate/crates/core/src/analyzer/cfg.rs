use std::collections::BTreeMap;

use super::guard::GuardAtom;
use super::parse::{Program, Stmt};
use crate::nonrel::Expr;
use crate::scalar::ScalarMode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Guard(GuardAtom),
    Assign(usize, Expr),
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub action: Action,
    /// Closes a loop: runs from the end of a body back to its head.
    pub back: bool,
}

#[derive(Debug, Clone)]
pub struct Cfg {
    pub names: Vec<String>,
    pub mode: ScalarMode,
    pub nodes: usize,
    pub edges: Vec<Edge>,
    pub entry: usize,
    pub exit: usize,
    pub heads: Vec<bool>,
    pub labels: BTreeMap<String, usize>,
    /// Labels in source order.
    pub label_order: Vec<String>,
}

struct Builder {
    nodes: usize,
    edges: Vec<Edge>,
    heads: Vec<bool>,
    labels: BTreeMap<String, usize>,
    mode: ScalarMode,
}

impl Builder {
    fn node(&mut self) -> usize {
        self.nodes += 1;
        self.heads.push(false);
        self.nodes - 1
    }

    fn edge(&mut self, from: usize, to: usize, action: Action, back: bool) {
        self.edges.push(Edge {
            from,
            to,
            action,
            back,
        });
    }

    fn seq(&mut self, stmts: &[Stmt], mut at: usize) -> usize {
        for s in stmts {
            at = self.stmt(s, at);
        }
        at
    }

    fn stmt(&mut self, s: &Stmt, at: usize) -> usize {
        match s {
            Stmt::Label(l) => {
                self.labels.insert(l.clone(), at);
                at
            }
            Stmt::Skip => at,
            Stmt::Assign(v, e) => {
                let next = self.node();
                self.edge(at, next, Action::Assign(*v, e.clone()), false);
                next
            }
            Stmt::If(c, then, els) => {
                let t = self.node();
                self.edge(at, t, Action::Guard(c.clone()), false);
                let t_end = self.seq(then, t);
                let e = self.node();
                self.edge(at, e, Action::Guard(c.negate(self.mode)), false);
                let e_end = self.seq(els, e);
                let join = self.node();
                self.edge(t_end, join, Action::Skip, false);
                self.edge(e_end, join, Action::Skip, false);
                join
            }
            Stmt::While(c, body) => {
                let head = self.node();
                self.heads[head] = true;
                self.edge(at, head, Action::Skip, false);
                let b = self.node();
                self.edge(head, b, Action::Guard(c.clone()), false);
                let b_end = self.seq(body, b);
                self.edge(b_end, head, Action::Skip, true);
                let exit = self.node();
                self.edge(head, exit, Action::Guard(c.negate(self.mode)), false);
                exit
            }
        }
    }
}

impl Cfg {
    /// Structured translation; `mode` decides how branch conditions negate.
    pub fn build(p: &Program, mode: ScalarMode) -> Cfg {
        let mut b = Builder {
            nodes: 0,
            edges: Vec::new(),
            heads: Vec::new(),
            labels: BTreeMap::new(),
            mode,
        };
        let entry = b.node();
        let exit = b.seq(&p.body, entry);
        Cfg {
            names: p.names.clone(),
            mode,
            nodes: b.nodes,
            edges: b.edges,
            entry,
            exit,
            heads: b.heads,
            labels: b.labels,
            label_order: p.labels(),
        }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.from == u)
    }

    /// Nodes in reverse post-order from the entry; unreachable nodes last.
    pub fn reverse_post_order(&self) -> Vec<usize> {
        let mut succ = vec![Vec::new(); self.nodes];
        for e in &self.edges {
            succ[e.from].push(e.to);
        }
        let mut seen = vec![false; self.nodes];
        let mut post = Vec::new();
        let mut stack = vec![(self.entry, 0usize)];
        seen[self.entry] = true;
        while let Some((u, k)) = stack.pop() {
            if k < succ[u].len() {
                stack.push((u, k + 1));
                let v = succ[u][k];
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                post.push(u);
            }
        }
        post.reverse();
        post.extend((0..self.nodes).filter(|&v| !seen[v]));
        post
    }

    pub fn render_action(&self, a: &Action) -> String {
        match a {
            Action::Guard(g) => format!("assume {}", g.render(&self.names)),
            Action::Assign(v, e) => format!("{} = {}", self.names[*v], e.render(&self.names)),
            Action::Skip => "skip".to_string(),
        }
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("entry n{}\nexit n{}\n", self.entry, self.exit));
        let heads: Vec<String> = (0..self.nodes)
            .filter(|&v| self.heads[v])
            .map(|v| format!("n{v}"))
            .collect();
        out.push_str(&format!("loop heads: {}\n", heads.join(" ")));
        for l in &self.label_order {
            out.push_str(&format!("@{l} = n{}\n", self.labels[l]));
        }
        for e in &self.edges {
            let back = if e.back { " (back)" } else { "" };
            out.push_str(&format!(
                "n{} -> n{}: {}{back}\n",
                e.from,
                e.to,
                self.render_action(&e.action)
            ));
        }
        out
    }
}
