mod common;

use dynsym::observables::{
    casimir, expectations, skew_information, spin1_matrices, total_variance, ObservableBasis,
};
use dynsym::random::{random_state, seeded};
use dynsym::{ComplexMatrix, DensityOperator};
use proptest::prelude::*;
use rand::Rng;

fn shipped() -> Vec<ObservableBasis> {
    ObservableBasis::CATALOG.iter().map(|n| ObservableBasis::by_name(n).unwrap()).collect()
}

/// Random real orthogonal matrix by Gram-Schmidt on Gaussian-ish columns.
fn orthogonal(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = seeded(seed);
    let mut q: Vec<Vec<f64>> = Vec::new();
    while q.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        for u in &q {
            let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= d * b);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            q.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    q
}

#[test]
fn shipped_bases_are_trace_orthogonal() {
    for b in shipped() {
        let ops = b.operators();
        let scale = if b.name().starts_with("pauli") { b.dim() as f64 } else { 2.0 };
        for (i, x) in ops.iter().enumerate() {
            for (j, y) in ops.iter().enumerate() {
                let t = x.trace_product(y);
                let want = if i == j { scale } else { 0.0 };
                assert!((t.re - want).abs() < 1e-9 && t.im.abs() < 1e-9, "{} {i} {j}", b.name());
            }
        }
    }
}

proptest! {
    #[test]
    fn total_variance_is_basis_invariant(seed in any::<u64>(), which in 0usize..3) {
        let b = vec![ObservableBasis::gell_mann(), ObservableBasis::spin1(), ObservableBasis::pauli(2).unwrap()]
            .swap_remove(which);
        let o = orthogonal(b.len(), seed);
        let mixed_ops: Vec<ComplexMatrix> = o
            .iter()
            .map(|row| {
                row.iter().zip(b.operators()).fold(ComplexMatrix::zeros(b.dim(), b.dim()), |acc, (c, x)| {
                    &acc + &x.scale_real(*c)
                })
            })
            .collect();
        let labels = (0..b.len()).map(|k| format!("y{k}")).collect();
        let rotated = ObservableBasis::new("rotated", b.dims().to_vec(), mixed_ops, labels).unwrap();
        let psi = random_state(b.dims(), &mut seeded(seed ^ 0x5a5a));
        let a = total_variance(&b, &psi).unwrap();
        let c = total_variance(&rotated, &psi).unwrap();
        prop_assert!((a - c).abs() < 1e-9);
    }

    #[test]
    fn casimir_identity(seed in any::<u64>()) {
        for b in shipped() {
            let cas = casimir(&b);
            if !cas.is_scalar {
                continue;
            }
            let psi = random_state(b.dims(), &mut seeded(seed));
            let m2: f64 = expectations(&b, &psi).unwrap().iter().map(|x| x * x).sum();
            prop_assert!((total_variance(&b, &psi).unwrap() - (cas.value - m2)).abs() < 1e-9);
        }
    }

    #[test]
    fn skew_information_is_convex(a in common::mixed(&[3]), b in common::mixed(&[3])) {
        let mid = DensityOperator::mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        for x in spin1_matrices() {
            let lhs = skew_information(&x, &mid).unwrap();
            let rhs = 0.5 * (skew_information(&x, &a).unwrap() + skew_information(&x, &b).unwrap());
            prop_assert!(lhs <= rhs + 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn spin1_total_variance_range(psi in common::pure(&[3])) {
        let v = total_variance(&ObservableBasis::spin1(), &psi).unwrap();
        prop_assert!((1.0 - 1e-12..=2.0 + 1e-12).contains(&v));
    }
}
