use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::StateVector;
use crate::observables::{expectations, total_variance, ClosedFormMeasure, ObservableBasis, VarianceRange};

/// Default threshold on `max_i |<X_i>|` for complete entanglement.
pub const DEFAULT_CE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementAssessment {
    pub total_variance: f64,
    pub v_min: f64,
    pub v_max: f64,
    /// `sqrt((V − V_min)/(V_max − V_min))`, zero when the range is
    /// degenerate.
    pub mu: f64,
    pub completely_entangled: bool,
    /// `max_i |<X_i>|`.
    pub residual: f64,
}

fn normalized_measure(total: f64, range: VarianceRange) -> f64 {
    if range.is_degenerate() {
        return 0.0;
    }
    ((total - range.v_min) / (range.v_max - range.v_min)).clamp(0.0, 1.0).sqrt()
}

/// Total variance, measure and complete-entanglement flag of a pure state.
/// For bases with a [`ClosedFormMeasure`] the measure is evaluated from the
/// amplitudes; it agrees with the variance formula up to rounding.
/// The basis must carry its variance range (see
/// [`crate::entanglement::resolve_range`]).
pub fn assess(psi: &StateVector, basis: &ObservableBasis) -> Result<EntanglementAssessment> {
    let range = basis.range().ok_or_else(|| Error::UnknownRange(basis.name().to_string()))?;
    let total = total_variance(basis, psi)?;
    let residual = max_abs(&expectations(basis, psi)?);
    Ok(EntanglementAssessment {
        total_variance: total,
        v_min: range.v_min,
        v_max: range.v_max,
        mu: match basis.closed_form() {
            Some(f) => f.evaluate(psi.amplitudes()),
            None => normalized_measure(total, range),
        },
        completely_entangled: residual < DEFAULT_CE_TOL,
        residual,
    })
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Closed-form spin-1 measure `2|ψ_{-1}ψ_{+1} − ψ_0²/2|`.
pub fn measure_qutrit(psi: &StateVector) -> Result<f64> {
    if psi.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: psi.dim() });
    }
    Ok(ClosedFormMeasure::Spin1.evaluate(psi.amplitudes()))
}

/// Whether every basic observable has vanishing expectation, with the
/// largest `|<X_i>|` as residual.
pub fn is_completely_entangled(
    psi: &StateVector,
    basis: &ObservableBasis,
    tol: f64,
) -> Result<(bool, f64)> {
    let residual = max_abs(&expectations(basis, psi)?);
    Ok((residual < tol, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, C64};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn q(p: C64, z: C64, m: C64) -> StateVector {
        StateVector::qutrit(p, z, m).unwrap()
    }

    #[test]
    fn named_spin1_states() {
        let basis = ObservableBasis::spin1();
        let o = C64::default();
        let zero_state = q(o, c64(1.0, 0.0), o);
        let a = assess(&zero_state, &basis).unwrap();
        assert!((a.total_variance - 2.0).abs() < 1e-15 && (a.mu - 1.0).abs() < 1e-15);
        assert!(a.completely_entangled);
        assert_eq!(measure_qutrit(&zero_state).unwrap(), 1.0);

        let low = q(o, o, c64(1.0, 0.0));
        let a = assess(&low, &basis).unwrap();
        assert!((a.total_variance - 1.0).abs() < 1e-15 && a.mu == 0.0);
        assert!(!a.completely_entangled);

        let h = c64(FRAC_1_SQRT_2, 0.0);
        for sign in [1.0, -1.0] {
            let s = q(h, o, h * sign);
            assert!((measure_qutrit(&s).unwrap() - 1.0).abs() < 1e-15);
            let (ce, residual) = is_completely_entangled(&s, &basis, DEFAULT_CE_TOL).unwrap();
            assert!(ce && residual < 1e-15);
        }
    }

    #[test]
    fn unknown_range_is_reported() {
        let basis = ObservableBasis::gell_mann();
        let s = StateVector::basis(vec![3], 0).unwrap();
        assert!(matches!(assess(&s, &basis), Err(Error::UnknownRange(_))));
    }

    #[test]
    fn qubit_and_true_qutrit_have_no_ce_states() {
        let pauli = ObservableBasis::pauli(1).unwrap();
        for &(a, b) in &[(1.0, 0.0), (0.6, 0.8), (FRAC_1_SQRT_2, FRAC_1_SQRT_2)] {
            let s = StateVector::new(vec![2], vec![c64(a, 0.0), c64(0.0, b)]).unwrap();
            assert!(!is_completely_entangled(&s, &pauli, DEFAULT_CE_TOL).unwrap().0);
        }
        let gm = ObservableBasis::gell_mann();
        let s = StateVector::basis(vec![3], 1).unwrap();
        assert!(!is_completely_entangled(&s, &gm, DEFAULT_CE_TOL).unwrap().0);
    }

    #[test]
    fn measure_requires_qutrit() {
        let s = StateVector::basis(vec![2], 0).unwrap();
        assert!(measure_qutrit(&s).is_err());
    }

    #[test]
    fn closed_forms_match_variance_formula() {
        let mut rng = crate::random::seeded(4);
        for basis in [ObservableBasis::spin1(), ObservableBasis::pauli(2).unwrap()] {
            let range = basis.range().unwrap();
            for _ in 0..200 {
                let psi = crate::random::random_state(basis.dims(), &mut rng);
                let v = total_variance(&basis, &psi).unwrap();
                let closed = basis.closed_form().unwrap().evaluate(psi.amplitudes());
                assert!((normalized_measure(v, range) - closed).abs() < 1e-9);
            }
        }
    }
}
