use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::cfg::Cfg;
use super::domain::AbstractDomain;
use super::engine::{analyze, AnalysisConfig, Diverged};
use super::parse::Program;
use crate::bases::{CongruenceBasis, ConstantBasis, IntervalBasis, IntervalCongruence};
use crate::basis::ProductBasis;
use crate::nonrel::NonRel;
use crate::scalar::ScalarMode;
use crate::weakrel::WeakRel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Const,
    Interval,
    Congruence,
    Zone,
    ZoneCongruence,
    ZoneProduct,
    TranslatedEq,
}

impl DomainKind {
    pub const ALL: [DomainKind; 7] = [
        DomainKind::Const,
        DomainKind::Interval,
        DomainKind::Congruence,
        DomainKind::Zone,
        DomainKind::ZoneCongruence,
        DomainKind::ZoneProduct,
        DomainKind::TranslatedEq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Const => "const",
            DomainKind::Interval => "interval",
            DomainKind::Congruence => "congruence",
            DomainKind::Zone => "zone",
            DomainKind::ZoneCongruence => "zone-congruence",
            DomainKind::ZoneProduct => "zone-product",
            DomainKind::TranslatedEq => "translated-eq",
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown domain `{0}` (expected one of const, interval, congruence, zone, zone-congruence, zone-product, translated-eq)")]
pub struct UnknownDomain(pub String);

impl FromStr for DomainKind {
    type Err = UnknownDomain;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DomainKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownDomain(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub domain: DomainKind,
    pub mode: ScalarMode,
    pub analysis: AnalysisConfig,
}

/// The rendered invariant at one program point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointReport {
    pub point: String,
    pub reachable: bool,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("rational constant {0} in an integer analysis")]
    RationalConstant(String),
    #[error(transparent)]
    Diverged(#[from] Diverged),
}

pub fn interval_congruence(
    mode: ScalarMode,
) -> ProductBasis<IntervalBasis, CongruenceBasis, IntervalCongruence> {
    ProductBasis::new(
        IntervalBasis::new(mode),
        CongruenceBasis::new(mode),
        IntervalCongruence,
    )
}

fn report<D: AbstractDomain>(
    cfg: &Cfg,
    dom: &D,
    config: &AnalysisConfig,
) -> Result<Vec<PointReport>, RunError> {
    let result = analyze(cfg, dom, config)?;
    let mut points: Vec<(String, usize)> = cfg
        .label_order
        .iter()
        .map(|l| (l.clone(), cfg.labels[l]))
        .collect();
    points.push(("exit".to_string(), cfg.exit));
    Ok(points
        .into_iter()
        .map(|(point, node)| {
            let s = dom.normalize(&result.states[node]);
            let reachable = !dom.is_bottom(&s);
            PointReport {
                point,
                reachable,
                lines: dom.render(&s, &cfg.names),
            }
        })
        .collect())
}

/// Analyzes `p` and renders every labeled point, then the exit.
pub fn run(p: &Program, config: &RunConfig) -> Result<Vec<PointReport>, RunError> {
    let mode = config.mode;
    if mode == ScalarMode::Int {
        if let Some(c) = p.rational_constants().first() {
            return Err(RunError::RationalConstant(c.to_string()));
        }
    }
    let cfg = Cfg::build(p, mode);
    let n = p.n();
    let a = &config.analysis;
    match config.domain {
        DomainKind::Const => report(&cfg, &NonRel::new(ConstantBasis::new(mode), n), a),
        DomainKind::Interval => report(&cfg, &NonRel::new(IntervalBasis::new(mode), n), a),
        DomainKind::Congruence => report(&cfg, &NonRel::new(CongruenceBasis::new(mode), n), a),
        DomainKind::Zone => report(
            &cfg,
            &WeakRel::new(IntervalBasis::new(mode), n).expect("n >= 1"),
            a,
        ),
        DomainKind::ZoneCongruence => report(
            &cfg,
            &WeakRel::new(CongruenceBasis::new(mode), n).expect("n >= 1"),
            a,
        ),
        DomainKind::ZoneProduct => report(
            &cfg,
            &WeakRel::new(interval_congruence(mode), n).expect("n >= 1"),
            a,
        ),
        DomainKind::TranslatedEq => report(
            &cfg,
            &WeakRel::new(ConstantBasis::new(mode), n).expect("n >= 1"),
            a,
        ),
    }
}

/// Text form: `@point` followed by indented constraints, `T` when there are
/// none and `_|_` when the point is unreachable.
pub fn render_reports(reports: &[PointReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("@{}\n", r.point));
        if !r.reachable {
            out.push_str("  _|_\n");
        } else if r.lines.is_empty() {
            out.push_str("  T\n");
        } else {
            for l in &r.lines {
                out.push_str(&format!("  {l}\n"));
            }
        }
    }
    out
}
