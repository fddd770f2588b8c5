use std::collections::BTreeSet;

use thiserror::Error;

use super::cfg::{Action, Cfg};
use super::domain::AbstractDomain;

/// Loop-head updates that join before widening starts.
pub const DEFAULT_WIDEN_DELAY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub widen_delay: usize,
    pub max_steps: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            widen_delay: DEFAULT_WIDEN_DELAY,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no fixpoint after {0} node visits")]
pub struct Diverged(pub usize);

#[derive(Debug, Clone)]
pub struct Analysis<S> {
    /// One state per node. Loop heads hold the widened sequence, unclosed.
    pub states: Vec<S>,
    pub steps: usize,
}

pub fn transfer<D: AbstractDomain>(dom: &D, a: &Action, s: &D::State) -> D::State {
    match a {
        Action::Guard(g) => dom.guard(s, g),
        Action::Assign(v, e) => dom.assign(s, *v, e),
        Action::Skip => s.clone(),
    }
}

/// Worklist iteration in reverse post-order. Transfer functions read
/// normalized states; loop heads accumulate `X ▽ F(X★)` after `widen_delay`
/// plain joins.
pub fn analyze<D: AbstractDomain>(
    cfg: &Cfg,
    dom: &D,
    config: &AnalysisConfig,
) -> Result<Analysis<D::State>, Diverged> {
    let rpo = cfg.reverse_post_order();
    let mut rank = vec![0; cfg.nodes];
    for (k, &v) in rpo.iter().enumerate() {
        rank[v] = k;
    }
    let mut states = vec![dom.bottom(); cfg.nodes];
    states[cfg.entry] = dom.top();
    let mut updates = vec![0usize; cfg.nodes];
    let mut work = BTreeSet::from([rank[cfg.entry]]);
    let mut steps = 0;
    while let Some(k) = work.pop_first() {
        steps += 1;
        if steps > config.max_steps {
            return Err(Diverged(config.max_steps));
        }
        let u = rpo[k];
        let src = dom.normalize(&states[u]);
        if dom.is_bottom(&src) {
            continue;
        }
        for (_, e) in cfg.out_edges(u) {
            let t = transfer(dom, &e.action, &src);
            let v = e.to;
            if dom.is_bottom(&t) || dom.leq(&t, &states[v]) {
                continue;
            }
            states[v] = if cfg.heads[v] && updates[v] >= config.widen_delay {
                dom.widen(&states[v], &t)
            } else {
                dom.join(&states[v], &t)
            };
            if cfg.heads[v] {
                updates[v] += 1;
            }
            work.insert(rank[v]);
        }
    }
    Ok(Analysis { states, steps })
}

/// Edges whose transfer escapes the target state; empty at a post-fixpoint.
pub fn post_fixpoint_violations<D: AbstractDomain>(
    cfg: &Cfg,
    dom: &D,
    states: &[D::State],
) -> Vec<usize> {
    cfg.edges
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let t = transfer(dom, &e.action, &dom.normalize(&states[e.from]));
            !dom.leq(&t, &states[e.to])
        })
        .map(|(k, _)| k)
        .collect()
}
