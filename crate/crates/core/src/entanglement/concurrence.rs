use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecomposition, singular_values, ComplexMatrix, DensityOperator};
use crate::observables::pauli_matrices;

/// Spin-flip operator used by Wootters' concurrence. Complex conjugation of
/// the state is always taken in the storage basis, and the flip matrices
/// below are written in that same basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FlipMatrix {
    matrix: ComplexMatrix,
}

impl FlipMatrix {
    /// `σ_y ⊗ σ_y` on two qubits.
    pub fn two_qubit() -> Self {
        let [_, sy, _] = pauli_matrices();
        Self { matrix: sy.kron(&sy) }
    }

    /// The spin-1 flip in the `(|+1>, |0>, |-1>)` basis: `σ_y ⊗ σ_y`
    /// restricted to the symmetric sector.
    pub fn qutrit() -> Self {
        Self {
            matrix: ComplexMatrix::from_real_rows([
                [0.0, 0.0, -1.0],
                [0.0, 1.0, 0.0],
                [-1.0, 0.0, 0.0],
            ]),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `ρ F ρ* F`, whose eigenvalues are the squared Wootters λ's.
    pub fn wootters_product(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let f = &self.matrix;
        &(&(rho * f) * &rho.conj()) * f
    }
}

/// Density-matrix eigenvalues below this are rounding noise of a
/// rank-deficient state and are dropped before taking square roots.
const RANK_NOISE: f64 = 1e-14;

/// Wootters' λ's in decreasing order: the square roots of the eigenvalues
/// of `ρ F ρ* F`.
///
/// They are computed as the singular values of `τ = W† F W*`, where
/// `ρ = W W†` is the eigen-factorization of ρ. `τ τ†` is similar to
/// `ρ F ρ* F`, so the values agree, but taking singular values directly
/// keeps λ's near zero accurate to rounding instead of to its square root.
pub fn wootters_lambdas(rho: &DensityOperator, flip: &FlipMatrix) -> Result<Vec<f64>> {
    let n = rho.dim();
    if flip.matrix().rows() != n {
        return Err(Error::DimensionMismatch { expected: flip.matrix().rows(), found: n });
    }
    let eig = hermitian_eigendecomposition(rho.matrix())?;
    let kept: Vec<usize> = (0..n).filter(|&k| eig.values[k] > RANK_NOISE).collect();
    let w = ComplexMatrix::from_fn(n, kept.len(), |i, j| {
        eig.vectors[(i, kept[j])] * eig.values[kept[j]].sqrt()
    });
    let tau = &(&w.dagger() * flip.matrix()) * &w.conj();
    let mut lambdas = singular_values(&tau)?;
    lambdas.resize(n, 0.0);
    Ok(lambdas)
}

/// `max(0, λ_1 − Σ_{i>1} λ_i)`.
pub fn wootters_concurrence(rho: &DensityOperator, flip: &FlipMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho, flip)?;
    Ok((l[0] - l[1..].iter().sum::<f64>()).clamp(0.0, 1.0))
}

pub fn concurrence_two_qubit(rho: &DensityOperator) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    wootters_concurrence(rho, &FlipMatrix::two_qubit())
}

/// Concurrence of a single spin-1 state, pure or mixed.
pub fn concurrence_qutrit(rho: &DensityOperator) -> Result<f64> {
    if rho.dims() != [3] {
        return Err(Error::DimensionMismatch { expected: 3, found: rho.dim() });
    }
    wootters_concurrence(rho, &FlipMatrix::qutrit())
}
