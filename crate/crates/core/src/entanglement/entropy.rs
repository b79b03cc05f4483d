use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, DensityOperator};
use crate::states::ghz_type_state;

use super::concurrence::concurrence_two_qubit;
use super::tangle::three_tangle;

/// `−Tr(ρ log₂ ρ)` in bits, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let h: f64 = rho
        .eigenvalues()?
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    Ok(h.max(0.0))
}

/// `−p log₂ p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p].iter().filter(|&&q| q > 0.0).map(|&q| -q * q.log2()).sum()
}

/// The GHZ-type state `x|000> + y|111>` carries 3-tangle but no pairwise
/// entanglement, yet its reduced states have nonzero entropy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyCounterexample {
    pub x: f64,
    pub tau: f64,
    /// Concurrence of the two-qubit state left after tracing out one qubit.
    pub pair_concurrence: f64,
    /// Entropy of that two-qubit reduced state.
    pub h_two: f64,
    /// Entropy of a single-qubit reduced state.
    pub h_one: f64,
}

pub fn entropy_counterexample(x: f64) -> Result<EntropyCounterexample> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutOfRange { name: "x", value: x, range: "(0, 1)" });
    }
    let psi = ghz_type_state(x)?;
    let rho = psi.projector();
    let pair = partial_trace(&rho, &[0, 1])?;
    let single = partial_trace(&rho, &[0])?;
    Ok(EntropyCounterexample {
        x,
        tau: three_tangle(&psi)?,
        pair_concurrence: concurrence_two_qubit(&pair)?,
        h_two: von_neumann_entropy(&pair)?,
        h_one: von_neumann_entropy(&single)?,
    })
}
