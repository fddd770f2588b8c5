use std::fmt;

use super::gen::Rng;

/// Outcome of one randomized law.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: String,
    pub subject: String,
    /// Checked cases whose premise held.
    pub cases: usize,
    pub failed: usize,
    /// The first few counterexamples.
    pub examples: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{} {}: {verdict} ({} cases, {} failed)",
            self.subject, self.law, self.cases, self.failed
        )?;
        if let Some(e) = self.examples.first() {
            write!(f, "; e.g. {e}")?;
        }
        Ok(())
    }
}

pub enum Outcome {
    Pass,
    /// Premise did not hold.
    Skip,
    Fail(String),
}

/// Draws cases until `target` of them meet the premise, giving up after
/// `50 * target` draws.
pub fn check(
    law: &str,
    subject: &str,
    target: usize,
    rng: &mut Rng,
    mut f: impl FnMut(&mut Rng) -> Outcome,
) -> LawReport {
    let mut r = LawReport {
        law: law.to_string(),
        subject: subject.to_string(),
        cases: 0,
        failed: 0,
        examples: Vec::new(),
    };
    let mut draws = 0;
    while r.cases < target && draws < 50 * target.max(1) {
        draws += 1;
        match f(rng) {
            Outcome::Pass => r.cases += 1,
            Outcome::Skip => {}
            Outcome::Fail(e) => {
                r.cases += 1;
                r.failed += 1;
                if r.examples.len() < 3 {
                    r.examples.push(e);
                }
            }
        }
    }
    r
}

/// `Pass` when `ok`, otherwise a failure described lazily.
pub fn expect(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}
