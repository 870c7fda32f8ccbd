use num_complex::Complex64;
use proptest::prelude::*;

use disent_core::entanglement::concurrence;
use disent_core::factories::{mems, pure_phi, random_density, random_pure_qubit, werner, WernerSign};
use disent_core::state::{partial_trace, Subsystem};
use disent_core::timescales::{
    decoherence_rate, disentanglement_time_numeric, locality_time_numeric, pure_locality_switch,
    solve_timescales, t_d_mems, t_d_pure, t_d_single_excitation, t_d_werner, t_loc_pure, SolveMethod,
    SolverConfig,
};
use disent_core::{DensityMatrix4, Error};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pure_t_d_closed_matches_numeric(c in 0.01f64..=1.0, gamma in 0.2f64..4.0) {
        let numeric = disentanglement_time_numeric(&pure_phi(c).unwrap(), gamma, &cfg()).unwrap();
        let closed = t_d_pure(c, gamma).unwrap();
        prop_assert!((numeric.time - closed.time).abs() * gamma <= 1e-6);
        prop_assert_eq!(numeric.method, SolveMethod::Numeric);
        prop_assert!(numeric.revival.is_none());
    }

    #[test]
    fn single_excitation_t_d(theta in 0.05f64..1.5, phase in 0.0f64..std::f64::consts::TAU) {
        let (a, b) = (theta.cos(), theta.sin());
        let psi = [
            Complex64::from(0.0),
            Complex64::from(a),
            Complex64::from_polar(b, phase),
            Complex64::from(0.0),
        ];
        let rho = DensityMatrix4::pure(psi).unwrap();
        let c0 = concurrence(&rho);
        prop_assert!((c0 - 2.0 * (a * b).abs()).abs() <= 1e-10);
        let numeric = disentanglement_time_numeric(&rho, 1.0, &cfg()).unwrap();
        let closed = t_d_single_excitation(c0, 1.0).unwrap();
        prop_assert!((numeric.gamma_t() - closed.gamma_t()).abs() <= 1e-6);
    }

    #[test]
    fn locality_precedes_disentanglement(seed in any::<u64>()) {
        let rho = random_density(seed);
        let t = solve_timescales(&rho, 1.0, &cfg()).unwrap();
        if t.locality.time > 0.0 {
            prop_assert!(t.locality.time < t.disentanglement.time);
        }
    }

    #[test]
    fn decoherence_rate_of_pure_states(a in any::<u64>(), b in any::<u64>(), gamma in 0.2f64..3.0) {
        // λ = Γ(2 − 2|⟨σ₊ᴬ⟩|² − 2|⟨σ₊ᴮ⟩|²) for any pure state
        let rho = DensityMatrix4::product(&random_pure_qubit(a), &random_pure_qubit(b));
        let coherence = |keep| partial_trace(&rho, keep).get(1, 0).norm_sqr();
        let want = gamma * (2.0 - 2.0 * coherence(Subsystem::A) - 2.0 * coherence(Subsystem::B));
        let got = decoherence_rate(&rho, gamma).unwrap();
        prop_assert!((got - want).abs() <= 1e-6 * want.abs().max(1e-3));
    }
}

#[test]
fn pure_t_loc_exact_form_matches_numeric() {
    for k in 1..=40 {
        let c = k as f64 / 40.0;
        let numeric = locality_time_numeric(&pure_phi(c).unwrap(), 1.0, &cfg()).unwrap();
        let forms = t_loc_pure(c, 1.0).unwrap();
        assert!((numeric.gamma_t() - forms.exact.gamma_t()).abs() <= 1e-6, "c {c}");
        if forms.branch_valid {
            assert!((numeric.gamma_t() - forms.longitudinal_branch.gamma_t()).abs() <= 1e-6);
        } else {
            // past the switch the single branch stops too early
            assert!(forms.longitudinal_branch.gamma_t() < forms.exact.gamma_t());
        }
    }
    let s = pure_locality_switch();
    let forms = t_loc_pure(s, 1.0).unwrap();
    assert!((forms.exact.gamma_t() - forms.longitudinal_branch.gamma_t()).abs() < 1e-12);
}

#[test]
fn closed_forms_are_monotone_in_the_parameter() {
    let mut last = [0.0f64; 3];
    for k in 0..=200 {
        let x = k as f64 / 200.0;
        let now = [
            t_d_pure(x, 1.0).unwrap().gamma_t(),
            t_d_werner(x, 1.0).unwrap().gamma_t(),
            t_d_mems(x, 1.0).unwrap().gamma_t(),
        ];
        for i in 0..3 {
            assert!(now[i] >= last[i] - 1e-15, "family {i} at {x}");
        }
        last = now;
    }
}

#[test]
fn separable_initial_states_have_zero_times() {
    for rho in [
        DensityMatrix4::maximally_mixed(),
        werner(0.3, WernerSign::Plus).unwrap(),
        mems(0.0).unwrap(),
    ] {
        let t = solve_timescales(&rho, 1.0, &cfg()).unwrap();
        assert_eq!(t.disentanglement.time, 0.0);
        assert_eq!(t.locality.time, 0.0);
    }
}

#[test]
fn solver_results_scale_with_gamma() {
    let rho = werner(0.8, WernerSign::Minus).unwrap();
    let a = disentanglement_time_numeric(&rho, 1.0, &cfg()).unwrap();
    let b = disentanglement_time_numeric(&rho, 4.0, &cfg()).unwrap();
    assert!((a.time - 4.0 * b.time).abs() < 1e-12);
    let (lo, hi) = b.bracket.unwrap();
    assert!(lo < b.time + 1e-15 && b.time <= hi && (hi - lo) * 4.0 <= 1e-8);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(t_d_pure(1.5, 1.0), Err(Error::Domain { .. })));
    assert!(matches!(t_d_pure(0.5, 0.0), Err(Error::Domain { .. })));
    assert!(matches!(t_d_werner(f64::NAN, 1.0), Err(Error::Domain { .. })));
    assert!(matches!(
        decoherence_rate(&DensityMatrix4::maximally_mixed(), 1.0),
        Err(Error::NotPure { .. })
    ));
    let bad = SolverConfig { tol: 0.0, ..cfg() };
    assert!(disentanglement_time_numeric(&pure_phi(0.5).unwrap(), 1.0, &bad).is_err());
}
