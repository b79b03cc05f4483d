mod common;

use dynsym::observables::{pauli_matrices, total_variance, ObservableBasis};
use dynsym::states::{
    coherent_state, displacement_operator, embed_symmetric, lowest_weight, project_symmetric,
    rotation_from_lowest_weight, squeezing_report, CoherentParams,
};
use dynsym::ComplexMatrix;
use proptest::prelude::*;

fn alpha() -> impl Strategy<Value = CoherentParams> {
    (0.0..3.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, p)| CoherentParams::from_polar(r, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coherent_matches_displacement(p in alpha()) {
        let direct = coherent_state(p);
        let displaced = lowest_weight().evolve(&displacement_operator(p)).unwrap();
        prop_assert!(direct.max_diff_up_to_phase(&displaced) < 1e-10);
    }

    #[test]
    fn coherent_is_a_rotated_lowest_weight(p in alpha()) {
        let psi = coherent_state(p);
        let mean = squeezing_report(&psi).unwrap().mean_spin;
        let rotated = lowest_weight().evolve(&rotation_from_lowest_weight(mean)).unwrap();
        prop_assert!(psi.max_diff_up_to_phase(&rotated) < 1e-9);
    }

    #[test]
    fn coherent_is_never_squeezed(p in alpha()) {
        let r = squeezing_report(&coherent_state(p)).unwrap();
        prop_assert!(!r.is_squeezed);
        prop_assert!((r.min_transverse_variance - 0.5).abs() < 1e-9);
    }
}

proptest! {
    #[test]
    fn symmetric_round_trip(psi in common::pure(&[3])) {
        let (back, anti) = project_symmetric(&embed_symmetric(&psi).unwrap()).unwrap();
        prop_assert!(anti < 1e-15);
        prop_assert!(back.max_diff_up_to_phase(&psi) < 1e-12);
    }

    #[test]
    fn embedding_intertwines_total_spin(psi in common::pure(&[3])) {
        let dims = vec![2, 2];
        let id = ComplexMatrix::identity(2);
        let total: Vec<ComplexMatrix> = pauli_matrices()
            .iter()
            .map(|s| (&s.kron(&id) + &id.kron(s)).scale_real(0.5))
            .collect();
        let labels = ["Jx", "Jy", "Jz"].map(String::from).to_vec();
        let j = ObservableBasis::new("total-spin", dims, total, labels).unwrap();
        let a = total_variance(&ObservableBasis::spin1(), &psi).unwrap();
        let b = total_variance(&j, &embed_symmetric(&psi).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}
