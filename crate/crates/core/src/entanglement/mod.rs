//! Entanglement quantifiers and the variational machinery around the total
//! variance.

mod concurrence;
mod entropy;
mod measure;
mod optimize;
mod slocc;
mod tangle;

pub use concurrence::{concurrence_qutrit, concurrence_two_qubit, wootters_concurrence, wootters_lambdas, FlipMatrix};
pub use entropy::{binary_entropy, entropy_counterexample, von_neumann_entropy, EntropyCounterexample};
pub use measure::{
    assess, is_completely_entangled, measure_qutrit, EntanglementAssessment, DEFAULT_CE_TOL,
};
pub use optimize::{
    maximize_total_variance, minimize_total_variance, resolve_range, variance_range,
    OptimizerConfig, VarianceExtremum,
};
pub use slocc::{slocc_apply, SloccElement};
pub use tangle::{pair_concurrences, three_tangle};
