//! JSON file formats for states.
//!
//! Complex numbers are written as `[re, im]` pairs. Single spin-1 amplitudes
//! are ordered `(|+1>, |0>, |-1>)`; multi-qubit amplitudes are lexicographic
//! with `|0>` first. Density matrices are row-major.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, DensityOperator, StateVector, C64};

fn pairs(zs: &[C64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

fn complexes(ps: &[[f64; 2]]) -> Vec<C64> {
    ps.iter().map(|p| c64(p[0], p[1])).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn from_state(psi: &StateVector, label: Option<String>) -> Self {
        Self { dims: psi.dims().to_vec(), amplitudes: pairs(psi.amplitudes()), label }
    }

    /// Validates and converts; the amplitudes must already be normalized.
    pub fn to_state(&self) -> Result<StateVector> {
        StateVector::new(self.dims.clone(), complexes(&self.amplitudes))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl DensityFile {
    pub fn from_density(rho: &DensityOperator, label: Option<String>) -> Self {
        Self { dims: rho.dims().to_vec(), matrix: pairs(rho.matrix().as_slice()), label }
    }

    pub fn to_density(&self) -> Result<DensityOperator> {
        let n: usize = self.dims.iter().product();
        if self.matrix.len() != n * n {
            return Err(Error::Shape(format!(
                "density matrix has {} entries, dims {:?} need {}",
                self.matrix.len(),
                self.dims,
                n * n
            )));
        }
        let m = ComplexMatrix::from_vec(n, n, complexes(&self.matrix))?;
        DensityOperator::new(self.dims.clone(), m)
    }
}

/// Either file kind, told apart by its `amplitudes` or `matrix` field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Pure(StateFile),
    Mixed(DensityFile),
}

impl StateInput {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Shape(format!("expected a state file (dims, amplitudes) or density file (dims, matrix): {e}"))
        })
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            StateInput::Pure(f) => &f.dims,
            StateInput::Mixed(f) => &f.dims,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_phi_plus, werner_qutrit};

    #[test]
    fn state_round_trip_is_exact() {
        let psi = StateVector::normalized(vec![3], vec![c64(0.1, 0.7), c64(1.0 / 3.0, 0.0), c64(-0.2, 0.05)])
            .unwrap();
        let text = serde_json::to_string(&StateFile::from_state(&psi, Some("x".into()))).unwrap();
        let StateInput::Pure(back) = StateInput::parse(&text).unwrap() else { panic!("kind") };
        assert_eq!(back.to_state().unwrap(), psi);
    }

    #[test]
    fn density_round_trip_is_exact() {
        let rho = werner_qutrit(0.3).unwrap();
        let text = serde_json::to_string(&DensityFile::from_density(&rho, None)).unwrap();
        let StateInput::Mixed(back) = StateInput::parse(&text).unwrap() else { panic!("kind") };
        assert_eq!(back.to_density().unwrap().matrix(), rho.matrix());
    }

    #[test]
    fn malformed_inputs() {
        assert!(StateInput::parse("{\"dims\": [2]}").is_err());
        assert!(StateInput::parse("[1, 2]").is_err());
        let short = StateFile { dims: vec![2, 2], amplitudes: vec![[1.0, 0.0]], label: None };
        assert!(short.to_state().is_err());
        let f = StateFile::from_state(&bell_phi_plus(), None);
        assert_eq!(f.amplitudes.len(), 4);
    }
}
