//! Brute-force references for testing the domains: enumeration of `Γ` over
//! a finite window, closure by path enumeration, a bounded concrete
//! interpreter, random generators, and randomized law checks.

mod basis_laws;
mod concrete;
mod gamma;
mod gen;
mod matrix_laws;
mod programs;
mod report;
mod window;

#[cfg(test)]
mod tests;

pub use basis_laws::{basis_laws, reduction_laws};
pub use concrete::{concrete_run, ConcreteError, ConcreteRun};
pub use gamma::{closure_by_paths, gamma_enum};
pub use gen::{
    random_expr, random_guard, random_literal, random_matrix, random_nonempty_cells,
    random_program, rng, small, Generate, Rng,
};
pub use matrix_laws::{
    closure_matches_paths, emptiness_matches_gamma, matrix_laws, matrix_laws_only,
};
pub use programs::{end_to_end, havoc_values, sound_in, widening_terminates};
pub use report::{check, expect, LawReport, Outcome};
pub use window::Window;

use crate::analyzer::interval_congruence;
use crate::bases::{CongruenceBasis, ConstantBasis, IntervalBasis};
use crate::scalar::ScalarMode;

/// Every law on every shipped basis, in both modes, with `cases` draws per
/// law (matrix and program laws use a fifth of that).
pub fn selftest(cases: usize, seed: u64) -> Vec<LawReport> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let few = (cases / 5).max(1);
    for mode in [ScalarMode::Int, ScalarMode::Rat] {
        macro_rules! all_laws {
            ($b:expr) => {{
                let b = $b;
                out.extend(basis_laws(&b, cases, &mut rng));
                out.extend(matrix_laws(&b, few, 4, &mut rng));
                out.push(widening_terminates(&b, few, 50, &mut rng));
            }};
        }
        all_laws!(ConstantBasis::new(mode));
        all_laws!(IntervalBasis::new(mode));
        all_laws!(CongruenceBasis::new(mode));
        all_laws!(interval_congruence(mode));
        out.extend(reduction_laws(
            &IntervalBasis::new(mode),
            &CongruenceBasis::new(mode),
            cases,
            &mut rng,
        ));
        out.push(end_to_end(mode, few, &mut rng));
    }
    out
}
