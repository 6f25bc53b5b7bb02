use std::f64::consts::PI;

use cptq::atom::{fields_for_bloch, mixing_angle, AtomModel, DecayConfig, FieldConfig, Level, NUM_LEVELS};
use cptq::dynamics::{lindblad_evolve, lindblad_rhs, min_eigenvalue, Dissipator, Schedule};
use cptq::numerics::{null_space, Stepping};
use cptq::two_qubit::{
    basis, build_pair_hamiltonian, cphase_hold, ramped_hold, rf_coupling, singlet, symmetric, CouplingProfile,
    FreeEvolution, PairIntegration, SpinPairConfig, S01, S10,
};
use cptq::{DensityMatrix, Ket, C64};
use proptest::prelude::*;

fn complex(max: f64) -> impl Strategy<Value = C64> {
    (0.0..max, -PI..PI).prop_map(|(r, a)| C64::from_polar(r, a))
}

fn fields() -> impl Strategy<Value = FieldConfig> {
    (complex(5.0), complex(5.0), -2.0..2.0f64)
        .prop_filter("needs a beam", |(p, z, _)| p.norm() + z.norm() > 1e-3)
        .prop_map(|(p, z, d)| FieldConfig::new(p, z).with_detuning(d))
}

/// Random density matrix `A A^dagger / Tr` over all seven levels.
fn density() -> impl Strategy<Value = DensityMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), NUM_LEVELS * NUM_LEVELS).prop_map(|entries| {
        let a = DensityMatrix::from_fn(NUM_LEVELS, |i, j| {
            let (re, im) = entries[i * NUM_LEVELS + j];
            C64::new(re, im)
        });
        let rho = &a * &a.adjoint();
        let tr = rho.trace().re;
        rho.scale_real(1.0 / tr)
    })
}

/// Reference null space of the excited x ground block from singular values.
fn oracle_dark_dimension(fields: &FieldConfig) -> usize {
    let h = AtomModel::default().interaction_hamiltonian(fields);
    let block = h.submatrix(&[3, 4, 5], &[0, 1, 2]);
    null_space(&block, 1e-10).unwrap().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interaction_hamiltonian_is_hermitian(f in fields()) {
        let h = AtomModel::default().interaction_hamiltonian(&f);
        prop_assert_eq!(h.max_asymmetry(), 0.0);
    }

    #[test]
    fn dark_states_annihilated(f in fields()) {
        let model = AtomModel::default();
        let h = model.interaction_hamiltonian(&f);
        let dark = model.dark_states(&f).unwrap();
        prop_assert_eq!(dark.len(), oracle_dark_dimension(&f));
        for psi in &dark {
            prop_assert!(h.mul_vec(psi).norm() <= 1e-12 * cptq::numerics::spectral_norm(&h));
            prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
            for level in Level::EXCITED {
                prop_assert_eq!(psi[level.index()].norm(), 0.0);
            }
        }
    }

    #[test]
    fn bloch_angles_round_trip(theta in 0.01..(PI - 0.01), phi in -3.1..3.1f64, r in 0.1..10.0f64) {
        let f = fields_for_bloch(theta, phi, r).unwrap();
        let m = mixing_angle(&f).unwrap();
        prop_assert!((m.theta - theta).abs() < 1e-12);
        prop_assert!((m.phi - phi).abs() < 1e-12);
    }

    #[test]
    fn dissipator_is_traceless_and_hermitian(rho in density(), beta in 0.0..1.0f64, r in 0.0..2.0f64) {
        let model = AtomModel::default();
        let decay = DecayConfig::closed(1.3).with_loss(beta, r);
        let d = Dissipator::new(&model, &decay);
        let mut out = DensityMatrix::zeros(NUM_LEVELS);
        d.apply(&rho, &mut out);
        prop_assert!(out.trace().norm() < 1e-14);
        prop_assert!(out.max_asymmetry() < 1e-14);
        let full = lindblad_rhs(&model, &FieldConfig::real(0.7, 0.4), &d, &rho);
        prop_assert!(full.trace().norm() < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lindblad_keeps_trace_and_positivity(rho in density(), f in fields(), beta in 0.0..0.5f64) {
        let decay = DecayConfig::closed(1.0).with_loss(beta, 0.2);
        let schedule = Schedule::constant(f, 2.0);
        let traj = lindblad_evolve(&AtomModel::default(), &rho, &schedule, &decay, Stepping::new(0.002).every(100)).unwrap();
        for (_, r) in traj.iter() {
            prop_assert!((r.trace().re - 1.0).abs() <= 1e-9);
            prop_assert!(min_eigenvalue(r).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn hold_phase_tracks_coupling_area(
        values in prop::collection::vec(0.0..0.1f64, 3..7),
        widths in prop::collection::vec(1.0..20.0f64, 6),
    ) {
        let mut t = 0.0;
        let mut knots = vec![(0.0, values[0])];
        for (v, w) in values[1..].iter().zip(&widths) {
            t += w;
            knots.push((t, *v));
        }
        let profile = CouplingProfile::piecewise_linear(knots.clone()).unwrap();
        // independent midpoint quadrature of the area
        let n = 200_000;
        let h = profile.duration() / n as f64;
        let area: f64 = (0..n).map(|k| profile.value((k as f64 + 0.5) * h) * h).sum();
        let cfg = SpinPairConfig::homogeneous(1.0, 0.05);
        let r = ramped_hold(&cfg, &profile, profile.duration(), &PairIntegration::default()).unwrap();
        prop_assert!((r.exchange_phase - area).abs() <= 1e-6, "phase {} area {}", r.exchange_phase, area);
        prop_assert!((r.amp10.re - area.cos()).abs() <= 1e-6);
        prop_assert!((r.amp01.im + area.sin()).abs() <= 1e-6);
        prop_assert!(r.unitary.unitarity_defect() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn singlet_is_an_exact_eigenvector(w in 0.5..5.0f64, ratio in 0.0..0.1f64) {
        let cfg = SpinPairConfig::homogeneous(w, ratio * w);
        let h = build_pair_hamiltonian(&cfg, None);
        let s = singlet();
        let hs = h.mul_vec(&s);
        for k in 0..4 {
            prop_assert!((hs[k] - s[k] * w).norm() <= 1e-15 * w);
        }
        let t = symmetric();
        let ht = h.mul_vec(&t);
        for k in 0..4 {
            prop_assert!((ht[k] - t[k] * (w + 2.0 * ratio * w)).norm() <= 1e-14 * w);
        }
        let v = rf_coupling(0.1, 0.3).mul_vec(&s);
        prop_assert_eq!(v[0], C64::new(0.0, 0.0));
        prop_assert_eq!(v[3], C64::new(0.0, 0.0));
    }

    #[test]
    fn heterogeneous_free_evolution_never_mixes(w1 in 1.0..2.0f64, w2 in 0.5..0.95f64, dd in 0.0..0.05f64, t in 0.0..1e4f64) {
        let cfg = SpinPairConfig::heterogeneous(w1, w2, dd);
        let u = FreeEvolution::new(&cfg).unwrap().propagator(t);
        let psi = u.mul_vec(&basis(S10));
        prop_assert!(psi[S01].norm_sqr() <= 1e-10);
        prop_assert!(u.unitarity_defect() <= 1e-8);
    }

    #[test]
    fn hold_matches_closed_form(t in 0.0..200.0f64) {
        prop_assume!(t > 0.1);
        let cfg = SpinPairConfig::homogeneous(1.0, 0.05);
        let r = cphase_hold(&cfg, t, &PairIntegration::default()).unwrap();
        let a = 0.05 * t;
        prop_assert!((r.amp10 - C64::new(a.cos(), 0.0)).norm() <= 1e-7);
        prop_assert!((r.amp01 - C64::new(0.0, -a.sin())).norm() <= 1e-7);
    }
}

#[test]
fn pure_states_stay_pure_without_decay() {
    let model = AtomModel::default();
    let psi = Ket::from_real(&[0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0]);
    let schedule = Schedule::constant(FieldConfig::real(1.0, 0.6), 5.0);
    let traj = lindblad_evolve(&model, &psi.projector(), &schedule, &DecayConfig::closed(0.0), 0.002).unwrap();
    let rho = traj.last().unwrap().1;
    assert!((cptq::dynamics::purity(rho) - 1.0).abs() < 1e-9);
}
