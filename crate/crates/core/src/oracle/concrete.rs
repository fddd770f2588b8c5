use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::analyzer::{Action, Cfg};
use crate::scalar::Scalar;

/// Reachable concrete states per node.
#[derive(Debug, Clone)]
pub struct ConcreteRun {
    pub states: Vec<BTreeSet<Vec<Scalar>>>,
    /// Some path was cut at the back-edge budget.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcreteError {
    #[error("more than {0} concrete configurations")]
    BudgetExhausted(usize),
}

/// Breadth-first exploration from the all-zero valuation. Each path may take
/// at most `loop_budget` back edges; `?` ranges over `havoc`.
pub fn concrete_run(
    cfg: &Cfg,
    loop_budget: usize,
    havoc: &[Scalar],
    max_configs: usize,
) -> Result<ConcreteRun, ConcreteError> {
    let n = cfg.n();
    let mut succ = vec![Vec::new(); cfg.nodes];
    for e in &cfg.edges {
        succ[e.from].push(e);
    }
    let mut states = vec![BTreeSet::new(); cfg.nodes];
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let start = (cfg.entry, vec![Scalar::zero(); n], 0usize);
    seen.insert(start.clone());
    queue.push_back(start);
    let mut truncated = false;
    while let Some((u, point, backs)) = queue.pop_front() {
        states[u].insert(point.clone());
        for e in &succ[u] {
            let backs = backs + usize::from(e.back);
            if backs > loop_budget {
                truncated = true;
                continue;
            }
            let next: Vec<Vec<Scalar>> = match &e.action {
                Action::Skip => vec![point.clone()],
                Action::Guard(g) => match g.holds(&point, cfg.mode) {
                    Some(false) => vec![],
                    _ => vec![point.clone()],
                },
                Action::Assign(v, ex) => match ex.eval(&point) {
                    Some(c) => {
                        let mut p = point.clone();
                        p[*v] = c;
                        vec![p]
                    }
                    None => havoc
                        .iter()
                        .map(|c| {
                            let mut p = point.clone();
                            p[*v] = c.clone();
                            p
                        })
                        .collect(),
                },
            };
            for p in next {
                let key = (e.to, p, backs);
                if seen.insert(key.clone()) {
                    if seen.len() > max_configs {
                        return Err(ConcreteError::BudgetExhausted(max_configs));
                    }
                    queue.push_back(key);
                }
            }
        }
    }
    Ok(ConcreteRun { states, truncated })
}
