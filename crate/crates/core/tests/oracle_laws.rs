use numdom::analyzer::interval_congruence;
use numdom::bases::{CongruenceBasis, ConstantBasis, IntervalBasis};
use numdom::oracle::{basis_laws, matrix_laws, matrix_laws_only, rng, Generate, LawReport};
use numdom::scalar::ScalarMode;

const MODES: [ScalarMode; 2] = [ScalarMode::Int, ScalarMode::Rat];

fn assert_all(reports: &[LawReport]) {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
    assert!(
        reports.iter().all(|r| r.cases > 0),
        "a law never met its premise"
    );
}

fn every_law<B: Generate>(b: &B, seed: u64) {
    let mut r = rng(seed);
    assert_all(&basis_laws(b, 150, &mut r));
    assert_all(&matrix_laws(b, 60, 4, &mut r));
}

#[test]
fn constant_basis_satisfies_every_law() {
    for mode in MODES {
        every_law(&ConstantBasis::new(mode), 11);
    }
}

#[test]
fn interval_basis_satisfies_every_law() {
    for mode in MODES {
        every_law(&IntervalBasis::new(mode), 12);
    }
}

#[test]
fn congruence_basis_satisfies_every_law() {
    for mode in MODES {
        every_law(&CongruenceBasis::new(mode), 13);
    }
}

#[test]
fn product_basis_stays_sound() {
    let sound = [
        "emptiness-iff-no-point",
        "closure-preserves-gamma",
        "meet-exact",
        "guard-exact",
        "translate-exact",
        "assign-sound",
        "cellwise-monotone",
    ];
    for mode in MODES {
        let reports = matrix_laws_only(&interval_congruence(mode), 60, 4, &mut rng(14), &sound);
        assert_eq!(reports.len(), sound.len());
        assert_all(&reports);
    }
}

#[test]
fn product_basis_is_not_acceptable() {
    let reports = basis_laws(&interval_congruence(ScalarMode::Int), 300, &mut rng(15));
    let pairwise = reports
        .iter()
        .find(|r| r.law == "pairwise-emptiness")
        .unwrap();
    assert!(!pairwise.passed());
}
