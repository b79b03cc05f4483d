use crate::error::{Error, Result};

use super::eigen::{hermitian_eigendecomposition, HERMITIAN_TOL};
use super::matrix::{c64, ComplexMatrix, C64};

/// Tolerance on `| ‖ψ‖ − 1 |` for a valid pure state.
pub const NORM_TOL: f64 = 1e-12;

const TRACE_TOL: f64 = 1e-10;
const NEGATIVITY_TOL: f64 = 1e-10;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidState("at least one subsystem is required".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidState(format!("subsystem dimension {d} is below 2")));
    }
    Ok(dims.iter().product())
}

/// Normalized pure state on a register of finite-dimensional subsystems.
///
/// Amplitudes are ordered lexicographically over the subsystems, first
/// subsystem most significant. For spin 1 the single-site order is
/// `(|+1>, |0>, |-1>)`, matching `S_z = diag(1, 0, -1)`; for qubits it is
/// `(|0>, |1>) = (|↑>, |↓>)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl StateVector {
    /// Validates shape, finiteness and unit norm (within [`NORM_TOL`]).
    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        let dim = check_dims(&dims)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: amps.len() });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("amplitudes must be finite".into()));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm is {norm:.15}, expected 1")));
        }
        Ok(Self { dims, amps })
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(dims: Vec<usize>, mut amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-300) || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero or non-finite vector".into()));
        }
        for z in &mut amps {
            *z /= norm;
        }
        Self::new(dims, amps)
    }

    /// Computational basis state `|index>`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let dim = check_dims(&dims)?;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut amps = vec![C64::default(); dim];
        amps[index] = c64(1.0, 0.0);
        Ok(Self { dims, amps })
    }

    /// Single spin-1 state from amplitudes in `(|+1>, |0>, |-1>)` order.
    pub fn qutrit(plus: C64, zero: C64, minus: C64) -> Result<Self> {
        Self::new(vec![3], vec![plus, zero, minus])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `1 − |<self|other>|`, zero iff the states agree up to a global phase.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        if self.amps.len() != other.amps.len() {
            return f64::INFINITY;
        }
        (1.0 - self.inner(other).norm()).max(0.0)
    }

    /// Largest amplitude difference after removing the relative global
    /// phase.
    pub fn max_diff_up_to_phase(&self, other: &Self) -> f64 {
        let ov = self.inner(other);
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { c64(1.0, 0.0) };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self { dims, amps }
    }

    /// Applies an operator and renormalizes.
    pub fn evolve(&self, op: &ComplexMatrix) -> Result<Self> {
        let out = op.apply(&self.amps)?;
        Self::normalized(self.dims.clone(), out)
    }

    pub fn projector(&self) -> DensityOperator {
        DensityOperator {
            dims: self.dims.clone(),
            matrix: ComplexMatrix::outer(&self.amps, &self.amps),
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let dim = check_dims(&dims)?;
        if matrix.rows() != dim || !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.rows() });
        }
        let asym = matrix.hermiticity_error();
        if asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let eig = hermitian_eigendecomposition(&matrix)?;
        if eig.values[0] < -NEGATIVITY_TOL {
            return Err(Error::NotPositive(eig.values[0]));
        }
        Ok(Self { dims, matrix })
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let dim = check_dims(&dims)?;
        Ok(Self { dims, matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) })
    }

    /// Convex combination `Σ w_k ρ_k`. Weights must be nonnegative and sum
    /// to one; all components must share dims.
    pub fn mixture(components: &[(f64, &DensityOperator)]) -> Result<Self> {
        let (_, first) = components
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let dim = first.matrix.rows();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, rho) in components {
            if rho.dims != first.dims {
                return Err(Error::DimensionMismatch { expected: dim, found: rho.matrix.rows() });
            }
            if *w < 0.0 {
                return Err(Error::InvalidState(format!("negative mixture weight {w}")));
            }
            acc = &acc + &rho.matrix.scale_real(*w);
        }
        Self::new(first.dims.clone(), acc)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigendecomposition(&self.matrix)?.values)
    }

    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }
}

/// Anything an observable can be measured on.
pub trait QuantumState {
    fn dims(&self) -> &[usize];

    fn dim(&self) -> usize {
        self.dims().iter().product()
    }

    /// `Tr(ρ X)` without any Hermiticity or shape check.
    fn raw_expectation(&self, op: &ComplexMatrix) -> C64;

    fn as_density(&self) -> DensityOperator;
}

impl QuantumState for StateVector {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn raw_expectation(&self, op: &ComplexMatrix) -> C64 {
        op.sandwich(&self.amps)
    }

    fn as_density(&self) -> DensityOperator {
        self.projector()
    }
}

impl QuantumState for DensityOperator {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn raw_expectation(&self, op: &ComplexMatrix) -> C64 {
        self.matrix.trace_product(op)
    }

    fn as_density(&self) -> DensityOperator {
        self.clone()
    }
}

/// Traces out every subsystem not listed in `keep`. The kept subsystems
/// appear in ascending index order.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let dims = rho.dims();
    let n = dims.len();
    if keep.is_empty() {
        return Err(Error::InvalidState("keep set must be nonempty".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::BadSubsystem { index: bad, count: n });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..n).filter(|k| !kept.contains(k)).collect();

    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let kept_dim: usize = kept_dims.iter().product();
    let traced_dim: usize = traced_dims.iter().product();

    // Place the digits of the kept and traced multi-indices back into a
    // full-register index.
    let compose = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut digits = vec![0usize; n];
        let mut rem = kept_idx;
        for (pos, &k) in kept.iter().enumerate().rev() {
            digits[k] = rem % kept_dims[pos];
            rem /= kept_dims[pos];
        }
        let mut rem = traced_idx;
        for (pos, &k) in traced.iter().enumerate().rev() {
            digits[k] = rem % traced_dims[pos];
            rem /= traced_dims[pos];
        }
        digits.iter().zip(dims).fold(0, |acc, (&d, &size)| acc * size + d)
    };

    let m = rho.matrix();
    let reduced = ComplexMatrix::from_fn(kept_dim, kept_dim, |i, j| {
        (0..traced_dim).map(|t| m[(compose(i, t), compose(j, t))]).sum()
    });
    Ok(DensityOperator { dims: kept_dims, matrix: reduced })
}
