use proptest::prelude::*;

use disent_core::dynamics::{evolve_numeric, evolve_x_closed, EvolutionConfig};
use disent_core::entanglement::{
    c1c2_evolved, concurrence, concurrence_x, concurrence_x_collective, entanglement_of_formation,
    eof_from_concurrence, is_separable_ppt, wootters_spectrum, wootters_spectrum_nonhermitian,
};
use disent_core::factories::{random_density, random_local_unitary, random_pure_qubit, random_x_state};
use disent_core::DensityMatrix4;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn concurrence_is_in_unit_interval(seed in any::<u64>()) {
        let c = concurrence(&random_density(seed));
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn concurrence_ignores_local_unitaries(seed in any::<u64>(), u in any::<u64>()) {
        let rho = random_density(seed);
        let moved = rho.conjugate_by(&random_local_unitary(u));
        prop_assert!((concurrence(&rho) - concurrence(&moved)).abs() <= 1e-10);
    }

    #[test]
    fn products_are_unentangled(a in any::<u64>(), b in any::<u64>()) {
        let rho = DensityMatrix4::product(&random_pure_qubit(a), &random_pure_qubit(b));
        prop_assert!(concurrence(&rho) <= 1e-9);
        prop_assert!(is_separable_ppt(&rho));
    }

    #[test]
    fn x_forms_agree(seed in any::<u64>()) {
        let rho = random_x_state(seed);
        let general = concurrence(&rho);
        let canonical = concurrence_x(&rho).unwrap();
        let collective = concurrence_x_collective(&rho).unwrap();
        prop_assert!((canonical.value - general).abs() <= 1e-10);
        prop_assert!((collective.c1 - canonical.c1).abs() <= 1e-10);
        prop_assert!((collective.c2 - canonical.c2).abs() <= 1e-10);
    }

    #[test]
    fn evolved_candidates_match_evolved_state(seed in any::<u64>(), t in 0.0f64..3.0) {
        let rho = random_x_state(seed);
        let closed = c1c2_evolved(&rho, t, 1.0).unwrap();
        let direct = concurrence_x(&evolve_x_closed(&rho, t, 1.0).unwrap()).unwrap();
        prop_assert!((closed.c1 - direct.c1).abs() <= 1e-10);
        prop_assert!((closed.c2 - direct.c2).abs() <= 1e-10);
    }

    #[test]
    fn spectra_from_both_routes_agree(seed in any::<u64>()) {
        let rho = random_density(seed);
        let a = wootters_spectrum(&rho);
        let b = wootters_spectrum_nonhermitian(&rho);
        for k in 0..4 {
            prop_assert!((a[k] - b[k]).abs() <= 1e-7, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn eof_is_monotone_in_concurrence(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(eof_from_concurrence(lo) <= eof_from_concurrence(hi) + 1e-15);
    }
}

#[test]
fn ppt_agrees_with_zero_concurrence() {
    for seed in 0..2000 {
        let rho = random_density(seed);
        assert_eq!(is_separable_ppt(&rho), concurrence(&rho) <= 1e-9, "seed {seed}");
    }
}

#[test]
fn concurrence_never_grows_along_trajectories() {
    let cfg = EvolutionConfig::expm();
    for seed in 0..50 {
        let mut rho = random_density(seed);
        let mut last = concurrence(&rho);
        for _ in 0..30 {
            rho = evolve_numeric(&rho, 0.05, 1.0, &cfg).unwrap();
            let c = concurrence(&rho);
            assert!(c <= last + 1e-10, "seed {seed}: {c} after {last}");
            last = c;
        }
        assert!(entanglement_of_formation(&rho) >= 0.0);
    }
}
