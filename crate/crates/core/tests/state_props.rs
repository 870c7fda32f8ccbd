use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;

use disent_core::collective::{canonical_to_collective, Collective};
use disent_core::entanglement::concurrence;
use disent_core::factories::{
    is_x_class, mems, pure_phi, random_density, random_pure_qubit, random_x_state, werner, WernerSign,
};
use disent_core::io::{state_from_json, state_to_json};
use disent_core::linalg::hermitian_eigenvalues;
use disent_core::state::{linear_entropy, partial_trace, Subsystem};
use disent_core::{DensityMatrix4, Error};

#[test]
fn collective_round_trip_on_random_states() {
    for seed in 0..1000 {
        let rho = random_density(seed);
        let back = canonical_to_collective(&rho).to_canonical();
        let err = (back - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err <= 1e-12, "seed {seed}: {err:e}");
    }
}

#[test]
fn collective_populations_sum_to_one() {
    for seed in 0..200 {
        let k = canonical_to_collective(&random_density(seed));
        assert!((k.population_sum() - 1.0).abs() < 1e-12);
        // ρ_ee and ρ_gg coincide with ρ₁₁ and ρ₄₄
        assert_eq!(k.get(Collective::E, Collective::E).re, k.ee());
    }
}

#[test]
fn factory_concurrences_on_grids() {
    for k in 0..=100 {
        let x = k as f64 / 100.0;
        let c_pure = concurrence(&pure_phi(x).unwrap());
        assert!((c_pure - x).abs() <= 1e-10, "pure {x}: {c_pure}");
        let c_mems = concurrence(&mems(x).unwrap());
        assert!((c_mems - x).abs() <= 1e-10, "mems {x}: {c_mems}");
        for sign in [WernerSign::Plus, WernerSign::Minus] {
            let want = (0.5 * (3.0 * x - 1.0)).max(0.0);
            let c_w = concurrence(&werner(x, sign).unwrap());
            assert!((c_w - want).abs() <= 1e-10, "werner {x}: {c_w}");
        }
    }
}

#[test]
fn factories_reject_out_of_domain_parameters() {
    for bad in [-0.1, 1.1, f64::NAN] {
        assert!(matches!(pure_phi(bad), Err(Error::Domain { .. })));
        assert!(matches!(mems(bad), Err(Error::Domain { .. })));
        assert!(matches!(werner(bad, WernerSign::Plus), Err(Error::Domain { .. })));
    }
}

#[test]
fn factory_states_are_x_class() {
    for k in 0..=20 {
        let x = k as f64 / 20.0;
        assert!(is_x_class(&pure_phi(x).unwrap(), 1e-15));
        assert!(is_x_class(&mems(x).unwrap(), 1e-15));
        assert!(is_x_class(&werner(x, WernerSign::Minus).unwrap(), 1e-15));
    }
    assert!(!is_x_class(&random_density(3), 1e-9));
}

#[test]
fn non_states_are_rejected() {
    let mut m = Matrix4::<Complex64>::identity() * Complex64::from(0.25);
    m[(0, 1)] = Complex64::from(0.3);
    assert!(matches!(DensityMatrix4::new(m), Err(Error::NotHermitian { .. })));
    m[(1, 0)] = Complex64::from(0.3);
    assert!(matches!(DensityMatrix4::new(m), Err(Error::NotPositive { .. })));
    let m = Matrix4::<Complex64>::identity() * Complex64::from(0.3);
    assert!(matches!(DensityMatrix4::new(m), Err(Error::TraceNotOne { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partial_traces_are_states(seed in any::<u64>()) {
        let rho = random_density(seed);
        for keep in [Subsystem::A, Subsystem::B] {
            let r = partial_trace(&rho, keep);
            let m = r.matrix();
            prop_assert!((m.trace().re - 1.0).abs() < 1e-12);
            prop_assert!(m.trace().im.abs() < 1e-12);
            let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
            prop_assert!(det >= -1e-12);
            prop_assert!(m[(0, 0)].re >= -1e-12 && m[(1, 1)].re >= -1e-12);
        }
    }

    #[test]
    fn linear_entropy_is_bounded(seed in any::<u64>()) {
        let s = linear_entropy(&random_density(seed));
        prop_assert!((-1e-12..=0.75 + 1e-12).contains(&s));
        let s = linear_entropy(&random_x_state(seed));
        prop_assert!((-1e-12..=0.75 + 1e-12).contains(&s));
    }

    #[test]
    fn product_of_pure_states_is_pure(a in any::<u64>(), b in any::<u64>()) {
        let rho = DensityMatrix4::product(&random_pure_qubit(a), &random_pure_qubit(b));
        prop_assert!(linear_entropy(&rho).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_sum_to_trace(seed in any::<u64>()) {
        let rho = random_density(seed);
        let ev = hermitian_eigenvalues(&rho.to_dynamic()).unwrap();
        prop_assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(ev.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(ev[3] >= -1e-12);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let rho = random_density(seed);
        let back = state_from_json(&state_to_json(&rho)).unwrap();
        prop_assert!(back.max_abs_diff(&rho) < 1e-15);
    }
}
