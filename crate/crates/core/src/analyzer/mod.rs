//! Front end and fixpoint engine for a small structured language.

mod cfg;
mod domain;
mod engine;
mod guard;
mod parse;
mod run;

pub use cfg::{Action, Cfg, Edge};
pub use domain::AbstractDomain;
pub use engine::{
    analyze, post_fixpoint_violations, transfer, Analysis, AnalysisConfig, Diverged,
    DEFAULT_WIDEN_DELAY,
};
pub use guard::{CmpOp, GuardAtom};
pub use parse::{parse, ParseError, Program, Stmt};
pub use run::{
    interval_congruence, render_reports, run, DomainKind, PointReport, RunConfig, RunError,
    UnknownDomain,
};

#[cfg(test)]
mod tests;
