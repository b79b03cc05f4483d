use crate::error::{Error, Result};
use crate::linalg::{matrix_exp, ComplexMatrix, StateVector, C64};
use crate::observables::ObservableBasis;

/// Element `exp(Σ c_i X_i)` of the complexified dynamic-symmetry group,
/// given by one complex coefficient per basis operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SloccElement {
    pub coefficients: Vec<C64>,
}

impl SloccElement {
    pub fn new(coefficients: Vec<C64>) -> Self {
        Self { coefficients }
    }

    pub fn generator(&self, basis: &ObservableBasis) -> Result<ComplexMatrix> {
        if self.coefficients.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: self.coefficients.len(),
            });
        }
        let n = basis.dim();
        Ok(basis
            .operators()
            .iter()
            .zip(&self.coefficients)
            .fold(ComplexMatrix::zeros(n, n), |acc, (x, &c)| &acc + &x.scale(c)))
    }
}

/// Applies the group element and renormalizes.
pub fn slocc_apply(g: &SloccElement, psi: &StateVector, basis: &ObservableBasis) -> Result<StateVector> {
    if psi.dim() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), found: psi.dim() });
    }
    let op = matrix_exp(&g.generator(basis)?)?;
    let image = op.apply(psi.amplitudes())?;
    let norm = image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::Collapse(norm));
    }
    StateVector::normalized(psi.dims().to_vec(), image)
}
