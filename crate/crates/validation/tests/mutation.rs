//! Deliberately broken physics must be caught by the battery.

use cptq::atom::{AtomModel, CouplingTable};
use cptq_validation::{claims, Battery};

fn flipped_dissipator() -> Battery {
    Battery::shipped().with_model(AtomModel::default().with_flipped_dissipator())
}

fn allowed_pi_transition() -> Battery {
    Battery::shipped().with_model(AtomModel::new(CouplingTable::condon_shortley().with_entry(0, 0, 0.3)))
}

#[test]
fn sign_flipped_dissipator_fails_trace_claims() {
    let b = flipped_dissipator();
    let a2 = claims::a2(&b);
    assert!(!a2.passed(), "{}", a2.line());
    let a10 = claims::a10(&b);
    assert!(!a10.passed(), "{}", a10.line());
    // the pumping runs themselves are rejected by the trace/positivity guards
    let err = a10.error.as_deref().unwrap_or_default();
    assert!(err.contains("pump_one") && err.contains("pump_zero"), "{err}");
    assert!(err.contains("trace") || err.contains("eigenvalue"), "{err}");
}

#[test]
fn sign_flipped_dissipator_leaves_coherent_claims_alone() {
    let b = flipped_dissipator();
    for claim in [claims::a1(&b), claims::a6(&b)] {
        assert!(claim.passed(), "{}", claim.line());
    }
}

#[test]
fn nonzero_pi_coupling_on_g0_fails_darkness() {
    let b = allowed_pi_transition();
    let a1 = claims::a1(&b);
    assert!(!a1.passed(), "{}", a1.line());
    let failing: Vec<&str> = a1.failing_checks().map(|c| c.metric.as_str()).collect();
    assert!(failing.iter().any(|m| m.contains("closed form")), "{failing:?}");
    assert!(failing.iter().any(|m| m.contains("forbidden")), "{failing:?}");
    let a2 = claims::a2(&b);
    assert!(!a2.passed(), "{}", a2.line());
}

#[test]
fn unmutated_model_passes_the_same_claims() {
    let b = Battery::shipped();
    for claim in [claims::a1(&b), claims::a2(&b)] {
        assert!(claim.passed(), "{}", claim.line());
    }
}
