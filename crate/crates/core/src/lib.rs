//! Entanglement as extremal quantum uncertainty of a declared set of basic
//! observables.
//!
//! A physical system is described by a Hilbert space together with an
//! [`ObservableBasis`]: an orthogonal basis of a Lie algebra of Hermitian
//! operators. A pure state is completely entangled when it maximizes the
//! total variance of those observables (equivalently, when every basic
//! observable has zero expectation), and unentangled when the total variance
//! is minimal. The measure `mu` interpolates between the two.
//!
//! The crate is organized as:
//!
//! * [`linalg`] - small dense complex matrices, Hermitian and general
//!   eigensolvers, matrix exponential, partial trace.
//! * [`observables`] - observable catalogs (Gell-Mann, spin 1, local Pauli)
//!   and the uncertainty functionals built on them.
//! * [`states`] - coherent, squeezed, symmetric-embedded, three-qubit,
//!   Werner and atom-field states.
//! * [`entanglement`] - the variational measure, total-variance optimizers,
//!   SLOCC action, 3-tangle, concurrences and entropy.
//! * [`pentagram`] - the vector representation of spin 1 and the
//!   pentagram inequality with its optimizer.
//! * [`formats`] and [`report`] - JSON file formats and serializable reports.

pub mod entanglement;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod observables;
pub mod optim;
pub mod pentagram;
pub mod random;
pub mod report;
pub mod repro;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{c64, ComplexMatrix, DensityOperator, QuantumState, StateVector, C64};
pub use observables::{CasimirValue, ObservableBasis};
pub use pentagram::{Pentagram, PentagramReport, VectorRepState};
pub use report::AnalysisReport;
