//! Seeded random sampling of states and operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, matrix_exp, ComplexMatrix, DensityOperator, StateVector, C64};

/// Deterministic generator used by every seeded routine in the crate.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from a base seed.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> StateVector {
    let dim: usize = dims.iter().product();
    let amps = (0..dim).map(|_| gaussian_complex(rng)).collect();
    StateVector::normalized(dims.to_vec(), amps).expect("gaussian vector is nonzero")
}

/// Random full-rank mixed state `W W† / Tr(W W†)` with Ginibre `W`.
pub fn random_density<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DensityOperator {
    let dim: usize = dims.iter().product();
    let w = ComplexMatrix::from_vec(dim, dim, (0..dim * dim).map(|_| gaussian_complex(rng)).collect())
        .expect("square shape");
    let ww = &w * &w.dagger();
    let tr = ww.trace().re;
    let mut m = ww.scale_real(1.0 / tr);
    // Symmetrize away rounding.
    m = ComplexMatrix::from_fn(dim, dim, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    DensityOperator::new(dims.to_vec(), m).expect("Ginibre ensemble is a valid state")
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g: Vec<C64> = (0..n * n).map(|_| gaussian_complex(rng)).collect();
    let g = ComplexMatrix::from_vec(n, n, g).expect("square shape");
    (&g + &g.dagger()).scale_real(0.5)
}

/// Random unitary `exp(iH)`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let h = random_hermitian(n, rng);
    matrix_exp(&h.scale(c64(0.0, 1.0))).expect("square shape")
}
