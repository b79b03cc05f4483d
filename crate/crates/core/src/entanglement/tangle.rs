use crate::error::{Error, Result};
use crate::linalg::{partial_trace, StateVector};

use super::concurrence::concurrence_two_qubit;

/// Three-qubit 3-tangle (Coffman-Kundu-Wootters hyperdeterminant form).
pub fn three_tangle(psi: &StateVector) -> Result<f64> {
    if psi.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch { expected: 8, found: psi.dim() });
    }
    let a = psi.amplitudes();
    let p = |k: usize, l: usize, m: usize| a[4 * k + 2 * l + m];

    let squares = p(0, 0, 0).powi(2) * p(1, 1, 1).powi(2)
        + p(0, 0, 1).powi(2) * p(1, 1, 0).powi(2)
        + p(0, 1, 0).powi(2) * p(1, 0, 1).powi(2)
        + p(1, 0, 0).powi(2) * p(0, 1, 1).powi(2);
    let pairs = p(0, 0, 0) * p(0, 0, 1) * p(1, 1, 0) * p(1, 1, 1)
        + p(0, 0, 0) * p(0, 1, 0) * p(1, 0, 1) * p(1, 1, 1)
        + p(0, 0, 0) * p(1, 0, 0) * p(0, 1, 1) * p(1, 1, 1)
        + p(0, 0, 1) * p(0, 1, 0) * p(1, 0, 1) * p(1, 1, 0)
        + p(0, 0, 1) * p(1, 0, 0) * p(0, 1, 1) * p(1, 1, 0)
        + p(0, 1, 0) * p(1, 0, 0) * p(0, 1, 1) * p(1, 0, 1);
    let quads = p(0, 0, 0) * p(0, 1, 1) * p(1, 0, 1) * p(1, 1, 0)
        + p(0, 0, 1) * p(0, 1, 0) * p(1, 0, 0) * p(1, 1, 1);

    Ok((4.0 * (squares - pairs * 2.0 + quads * 4.0).norm()).min(1.0))
}

/// Wootters concurrence of each qubit pair `(0,1)`, `(0,2)`, `(1,2)`.
pub fn pair_concurrences(psi: &StateVector) -> Result<[f64; 3]> {
    if psi.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch { expected: 8, found: psi.dim() });
    }
    let rho = psi.projector();
    let mut out = [0.0; 3];
    for (slot, keep) in out.iter_mut().zip([[0, 1], [0, 2], [1, 2]]) {
        *slot = concurrence_two_qubit(&partial_trace(&rho, &keep)?)?;
    }
    Ok(out)
}
