use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("operator is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("subsystem index {index} out of range for {count} subsystems")]
    BadSubsystem { index: usize, count: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("expectation value has imaginary part {0:.3e}; operator is not Hermitian")]
    NonRealExpectation(f64),
    #[error("operators do not act on disjoint factors (commutator norm {0:.3e})")]
    NotCommuting(f64),
    #[error("invalid observable basis: {0}")]
    InvalidBasis(String),
    #[error("no total-variance range known for basis `{0}`")]
    UnknownRange(String),
    #[error("unknown basis `{0}`")]
    UnknownBasis(String),
    #[error("group element annihilates the state (image norm {0:.3e})")]
    Collapse(f64),
    #[error("state has no symmetric component")]
    FullyAntisymmetric,
    #[error("parameter {name} = {value} outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
    #[error("both couplings are zero")]
    ZeroCoupling,
    #[error("pentagram vertices {0} and {1} are not orthogonal (dot {2:.3e})")]
    NotOrthogonal(usize, usize, f64),
}
