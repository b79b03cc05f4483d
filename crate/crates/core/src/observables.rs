//! Basic-observable catalogs and the uncertainty functionals built on them.
//!
//! Bases keep the normalization `Tr(X_i X_j) = 2 δ_ij` of the Gell-Mann,
//! spin-1 and Pauli matrices as written, so variances and Casimir values
//! come out without conversion factors.
//!
//! For mixed inputs [`total_variance`] returns the raw sum of variances. It
//! does not separate classical mixing noise from quantum uncertainty.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c64, local_operator, matrix_sqrt_psd, ComplexMatrix, DensityOperator, QuantumState, C64,
};

const ORTHOGONALITY_TOL: f64 = 1e-10;
const CASIMIR_SCALAR_TOL: f64 = 1e-9;
/// Imaginary parts of expectation values above this signal a non-Hermitian
/// operator.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-8;

/// Extremes of the total variance over pure states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceRange {
    pub v_min: f64,
    pub v_max: f64,
}

impl VarianceRange {
    pub fn new(v_min: f64, v_max: f64) -> Self {
        Self { v_min, v_max }
    }

    pub fn is_degenerate(&self) -> bool {
        (self.v_max - self.v_min).abs() < 1e-9
    }
}

/// Catalog bases whose normalized measure has a polynomial form in the
/// amplitudes. Evaluating it directly avoids the square root of a
/// cancelling difference near unentangled states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormMeasure {
    /// `|ψ_0² − 2ψ_{+1}ψ_{-1}|`.
    Spin1,
    /// `2|ψ_00 ψ_11 − ψ_01 ψ_10|`.
    TwoQubit,
}

impl ClosedFormMeasure {
    pub fn evaluate(self, amps: &[C64]) -> f64 {
        let v = match self {
            ClosedFormMeasure::Spin1 => (amps[1] * amps[1] - amps[0] * amps[2] * 2.0).norm(),
            ClosedFormMeasure::TwoQubit => 2.0 * (amps[0] * amps[3] - amps[1] * amps[2]).norm(),
        };
        v.min(1.0)
    }
}

/// Orthogonal basis of a Lie algebra of Hermitian operators: the basic
/// observables that fix a system's dynamic symmetry.
#[derive(Clone)]
pub struct ObservableBasis {
    name: String,
    dims: Vec<usize>,
    operators: Vec<ComplexMatrix>,
    labels: Vec<String>,
    parts: Option<Vec<usize>>,
    range: Option<VarianceRange>,
    closed_form: Option<ClosedFormMeasure>,
}

impl fmt::Debug for ObservableBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObservableBasis")
            .field("name", &self.name)
            .field("dims", &self.dims)
            .field("labels", &self.labels)
            .field("range", &self.range)
            .finish()
    }
}

impl ObservableBasis {
    /// Validates Hermiticity, shape and pairwise trace orthogonality.
    pub fn new(
        name: impl Into<String>,
        dims: Vec<usize>,
        operators: Vec<ComplexMatrix>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        let dim: usize = dims.iter().product();
        if operators.is_empty() {
            return Err(Error::InvalidBasis(format!("{name}: no operators")));
        }
        if labels.len() != operators.len() {
            return Err(Error::InvalidBasis(format!("{name}: label count differs from operator count")));
        }
        for (label, op) in labels.iter().zip(&operators) {
            if op.rows() != dim || !op.is_square() {
                return Err(Error::DimensionMismatch { expected: dim, found: op.rows() });
            }
            let asym = op.hermiticity_error();
            if asym > ORTHOGONALITY_TOL {
                return Err(Error::InvalidBasis(format!("{name}: {label} is not Hermitian ({asym:.2e})")));
            }
        }
        for i in 0..operators.len() {
            for j in i + 1..operators.len() {
                let overlap = operators[i].trace_product(&operators[j]).norm();
                if overlap > ORTHOGONALITY_TOL {
                    return Err(Error::InvalidBasis(format!(
                        "{name}: Tr({} {}) = {overlap:.2e}, operators must be orthogonal",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self { name, dims, operators, labels, parts: None, range: None, closed_form: None })
    }

    /// The eight Gell-Mann matrices: the true-qutrit (SU(3)) observables.
    pub fn gell_mann() -> Self {
        let o = C64::default();
        let l = c64(1.0, 0.0);
        let i = c64(0.0, 1.0);
        let r3 = 1.0 / 3f64.sqrt();
        let ops = vec![
            ComplexMatrix::from_rows([[o, l, o], [l, o, o], [o, o, o]]),
            ComplexMatrix::from_rows([[o, -i, o], [i, o, o], [o, o, o]]),
            ComplexMatrix::from_rows([[l, o, o], [o, -l, o], [o, o, o]]),
            ComplexMatrix::from_rows([[o, o, l], [o, o, o], [l, o, o]]),
            ComplexMatrix::from_rows([[o, o, -i], [o, o, o], [i, o, o]]),
            ComplexMatrix::from_rows([[o, o, o], [o, o, l], [o, l, o]]),
            ComplexMatrix::from_rows([[o, o, o], [o, o, -i], [o, i, o]]),
            ComplexMatrix::from_real_rows([[r3, 0.0, 0.0], [0.0, r3, 0.0], [0.0, 0.0, -2.0 * r3]]),
        ];
        let labels = (1..=8).map(|k| format!("lambda{k}")).collect();
        Self::new("su3", vec![3], ops, labels).expect("Gell-Mann matrices are orthogonal")
    }

    /// Spin-1 operators `S_x, S_y, S_z` in the `(|+1>, |0>, |-1>)` basis.
    pub fn spin1() -> Self {
        let [sx, sy, sz] = spin1_matrices();
        let labels = ["Sx", "Sy", "Sz"].map(String::from).to_vec();
        let mut basis = Self::new("su2-spin1", vec![3], vec![sx, sy, sz], labels)
            .expect("spin-1 operators are orthogonal");
        basis.range = Some(VarianceRange::new(1.0, 2.0));
        basis.closed_form = Some(ClosedFormMeasure::Spin1);
        basis
    }

    /// Local Pauli observables `σ_k^{(j)}` on `n` qubits, `1 <= n <= 4`.
    pub fn pauli(n_qubits: usize) -> Result<Self> {
        if !(1..=4).contains(&n_qubits) {
            return Err(Error::UnknownBasis(format!("pauli-{n_qubits}")));
        }
        let dims = vec![2; n_qubits];
        let mut ops = Vec::with_capacity(3 * n_qubits);
        let mut labels = Vec::with_capacity(3 * n_qubits);
        let mut parts = Vec::with_capacity(3 * n_qubits);
        for site in 0..n_qubits {
            for (axis, sigma) in ["x", "y", "z"].iter().zip(pauli_matrices()) {
                ops.push(local_operator(&sigma, site, &dims)?);
                labels.push(format!("sigma{axis}{site}"));
                parts.push(site);
            }
        }
        let mut basis = Self::new(format!("pauli-{n_qubits}"), dims, ops, labels)?;
        basis.parts = Some(parts);
        if n_qubits == 2 {
            basis.range = Some(VarianceRange::new(4.0, 6.0));
            basis.closed_form = Some(ClosedFormMeasure::TwoQubit);
        }
        Ok(basis)
    }

    /// Catalog lookup: `su3`, `su2-spin1`, `pauli-1` .. `pauli-4`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "su3" => Ok(Self::gell_mann()),
            "su2-spin1" => Ok(Self::spin1()),
            _ => match name.strip_prefix("pauli-").map(str::parse::<usize>) {
                Some(Ok(n)) => Self::pauli(n),
                _ => Err(Error::UnknownBasis(name.to_string())),
            },
        }
    }

    pub const CATALOG: [&'static str; 6] =
        ["su3", "su2-spin1", "pauli-1", "pauli-2", "pauli-3", "pauli-4"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Subsystem each operator acts on, for multipartite bases.
    pub fn parts(&self) -> Option<&[usize]> {
        self.parts.as_deref()
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn range(&self) -> Option<VarianceRange> {
        self.range
    }

    pub fn closed_form(&self) -> Option<ClosedFormMeasure> {
        self.closed_form
    }

    pub fn with_range(mut self, range: VarianceRange) -> Self {
        self.range = Some(range);
        self
    }

    pub fn with_parts(mut self, parts: Vec<usize>) -> Result<Self> {
        if parts.len() != self.operators.len() {
            return Err(Error::InvalidBasis("one part index per operator is required".into()));
        }
        self.parts = Some(parts);
        Ok(self)
    }

    fn check_state<S: QuantumState + ?Sized>(&self, state: &S) -> Result<()> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: state.dim() });
        }
        Ok(())
    }
}

/// `[S_x, S_y, S_z]` for spin 1.
pub fn spin1_matrices() -> [ComplexMatrix; 3] {
    let o = C64::default();
    let h = c64(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ih = c64(0.0, std::f64::consts::FRAC_1_SQRT_2);
    [
        ComplexMatrix::from_rows([[o, h, o], [h, o, h], [o, h, o]]),
        ComplexMatrix::from_rows([[o, -ih, o], [ih, o, -ih], [o, ih, o]]),
        ComplexMatrix::from_real_rows([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, -1.0]]),
    ]
}

/// Raising operator `S_+ = S_x + i S_y` for spin 1.
pub fn spin1_raising() -> ComplexMatrix {
    let [sx, sy, _] = spin1_matrices();
    &sx + &sy.scale(c64(0.0, 1.0))
}

/// Lowering operator `S_- = S_x − i S_y` for spin 1.
pub fn spin1_lowering() -> ComplexMatrix {
    spin1_raising().dagger()
}

/// `[σ_x, σ_y, σ_z]`.
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let o = C64::default();
    let i = c64(0.0, 1.0);
    [
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]),
        ComplexMatrix::from_rows([[o, -i], [i, o]]),
        ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]]),
    ]
}

/// Sum of squares of the basis operators, reduced to a number when it is a
/// multiple of the identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasimirValue {
    pub value: f64,
    pub is_scalar: bool,
}

pub fn casimir(basis: &ObservableBasis) -> CasimirValue {
    let n = basis.dim();
    let sum = basis
        .operators()
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, x| &acc + &(x * x));
    let value = sum.trace().re / n as f64;
    let is_scalar = sum.max_abs_diff(&ComplexMatrix::identity(n).scale_real(value)) < CASIMIR_SCALAR_TOL;
    CasimirValue { value, is_scalar }
}

fn check_dim<S: QuantumState + ?Sized>(x: &ComplexMatrix, state: &S) -> Result<()> {
    if x.rows() != state.dim() || !x.is_square() {
        return Err(Error::DimensionMismatch { expected: state.dim(), found: x.rows() });
    }
    Ok(())
}

fn real_part(z: C64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_RESIDUE_TOL {
        return Err(Error::NonRealExpectation(z.im));
    }
    Ok(z.re)
}

/// `<X>` on a pure or mixed state.
pub fn expectation<S: QuantumState + ?Sized>(x: &ComplexMatrix, state: &S) -> Result<f64> {
    check_dim(x, state)?;
    real_part(state.raw_expectation(x))
}

/// `V(X) = <X²> − <X>²`, clamped at zero.
pub fn variance<S: QuantumState + ?Sized>(x: &ComplexMatrix, state: &S) -> Result<f64> {
    let mean = expectation(x, state)?;
    let second = real_part(state.raw_expectation(&(x * x)))?;
    Ok((second - mean * mean).max(0.0))
}

/// Expectation of every basis operator, in basis order.
pub fn expectations<S: QuantumState + ?Sized>(basis: &ObservableBasis, state: &S) -> Result<Vec<f64>> {
    basis.check_state(state)?;
    basis.operators().iter().map(|x| expectation(x, state)).collect()
}

pub fn variances<S: QuantumState + ?Sized>(basis: &ObservableBasis, state: &S) -> Result<Vec<f64>> {
    basis.check_state(state)?;
    basis.operators().iter().map(|x| variance(x, state)).collect()
}

/// Sum of the variances of all basic observables over all parts.
pub fn total_variance<S: QuantumState + ?Sized>(basis: &ObservableBasis, state: &S) -> Result<f64> {
    Ok(variances(basis, state)?.iter().sum())
}

/// Wigner-Yanase skew information `−½ Tr([√ρ, X]²)`, clamped at zero.
pub fn skew_information(x: &ComplexMatrix, rho: &DensityOperator) -> Result<f64> {
    check_dim(x, rho)?;
    let root = matrix_sqrt_psd(rho.matrix())?;
    let comm = root.commutator(x);
    let value = -0.5 * real_part(comm.trace_product(&comm))?;
    Ok(value.max(0.0))
}

/// Connected correlator `<AB> − <A><B>` of two commuting observables
/// (local operators on disjoint factors).
pub fn correlation_function<S: QuantumState + ?Sized>(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    state: &S,
) -> Result<f64> {
    check_dim(a, state)?;
    check_dim(b, state)?;
    let comm = a.commutator(b).max_abs();
    if comm > 1e-10 {
        return Err(Error::NotCommuting(comm));
    }
    let ab = real_part(state.raw_expectation(&(a * b)))?;
    Ok(ab - expectation(a, state)? * expectation(b, state)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::StateVector;

    fn qutrit(p: f64, z: f64, m: f64) -> StateVector {
        StateVector::normalized(vec![3], vec![c64(p, 0.0), c64(z, 0.0), c64(m, 0.0)]).unwrap()
    }

    fn bell() -> StateVector {
        StateVector::normalized(
            vec![2, 2],
            vec![c64(1.0, 0.0), C64::default(), C64::default(), c64(1.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn gell_mann_entries() {
        let b = ObservableBasis::gell_mann();
        assert_eq!(b.name(), "su3");
        assert_eq!(b.len(), 8);
        let l3 = &b.operators()[2];
        assert_eq!(l3, &ComplexMatrix::from_real_rows([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]]));
        let l8 = &b.operators()[7];
        let r3 = 1.0 / 3f64.sqrt();
        assert!((l8[(2, 2)].re + 2.0 * r3).abs() < 1e-15 && (l8[(0, 0)].re - r3).abs() < 1e-15);
    }

    #[test]
    fn catalog_bases_are_trace_orthogonal() {
        for name in ObservableBasis::CATALOG {
            let b = ObservableBasis::by_name(name).unwrap();
            // Single-site bases have Tr(X²) = 2; local Pauli operators on n
            // qubits pick up the identity factors, Tr = 2^n.
            let norm = if name.starts_with("pauli") { b.dim() as f64 } else { 2.0 };
            for (i, x) in b.operators().iter().enumerate() {
                for (j, y) in b.operators().iter().enumerate() {
                    let want = if i == j { norm } else { 0.0 };
                    let t = x.trace_product(y);
                    assert!((t - c64(want, 0.0)).norm() < 1e-12, "{name} {i} {j} {t}");
                }
            }
        }
    }

    #[test]
    fn spin1_commutator_and_casimir() {
        let [sx, sy, sz] = spin1_matrices();
        assert!(sx.commutator(&sy).max_abs_diff(&sz.scale(c64(0.0, 1.0))) < 1e-15);
        let sum = &(&(&sx * &sx) + &(&sy * &sy)) + &(&sz * &sz);
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(3).scale_real(2.0)) < 1e-15);
    }

    #[test]
    fn casimir_values() {
        let c = casimir(&ObservableBasis::spin1());
        assert!(c.is_scalar && (c.value - 2.0).abs() < 1e-14);
        let c = casimir(&ObservableBasis::gell_mann());
        assert!(c.is_scalar && (c.value - 16.0 / 3.0).abs() < 1e-14);
        let c = casimir(&ObservableBasis::pauli(2).unwrap());
        assert!(c.is_scalar && (c.value - 6.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_catalog() {
        assert_eq!(ObservableBasis::pauli(1).unwrap().len(), 3);
        let b = ObservableBasis::pauli(2).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.parts(), Some(&[0, 0, 0, 1, 1, 1][..]));
        for x in b.operators() {
            assert!((x * x).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        }
        assert!(ObservableBasis::pauli(5).is_err());
        assert!(matches!(ObservableBasis::by_name("su4"), Err(Error::UnknownBasis(_))));
    }

    #[test]
    fn lowest_weight_moments() {
        let [sx, sy, sz] = spin1_matrices();
        let low = qutrit(0.0, 0.0, 1.0);
        assert_eq!(expectation(&sz, &low).unwrap(), -1.0);
        assert_eq!(expectation(&sx, &low).unwrap(), 0.0);
        assert_eq!(variance(&sz, &low).unwrap(), 0.0);
        assert!((variance(&sx, &low).unwrap() - 0.5).abs() < 1e-15);
        assert!((variance(&sy, &low).unwrap() - 0.5).abs() < 1e-15);
        let basis = ObservableBasis::spin1();
        assert!((total_variance(&basis, &low).unwrap() - 1.0).abs() < 1e-15);
        assert!((total_variance(&basis, &qutrit(0.0, 1.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
        for e in expectations(&basis, &qutrit(0.0, 1.0, 0.0)).unwrap() {
            assert_eq!(e, 0.0);
        }
    }

    #[test]
    fn bell_state_local_variance_and_correlation() {
        let [_, _, z] = pauli_matrices();
        let za = local_operator(&z, 0, &[2, 2]).unwrap();
        let zb = local_operator(&z, 1, &[2, 2]).unwrap();
        assert!((variance(&za, &bell()).unwrap() - 1.0).abs() < 1e-15);
        assert!((correlation_function(&za, &zb, &bell()).unwrap() - 1.0).abs() < 1e-15);
        let up_up = StateVector::basis(vec![2, 2], 0).unwrap();
        assert_eq!(correlation_function(&za, &zb, &up_up).unwrap(), 0.0);
    }

    #[test]
    fn correlation_requires_commuting_operators() {
        let [x, _, z] = pauli_matrices();
        let xa = local_operator(&x, 0, &[2, 2]).unwrap();
        let za = local_operator(&z, 0, &[2, 2]).unwrap();
        assert!(matches!(correlation_function(&xa, &za, &bell()), Err(Error::NotCommuting(_))));
    }

    #[test]
    fn non_hermitian_expectation_is_an_error() {
        let raising = spin1_raising();
        let s = qutrit(1.0, 1.0, 0.0);
        assert!(matches!(expectation(&raising.scale(c64(0.0, 1.0)), &s), Err(Error::NonRealExpectation(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let [_, _, z] = pauli_matrices();
        let low = qutrit(0.0, 0.0, 1.0);
        assert!(matches!(expectation(&z, &low), Err(Error::DimensionMismatch { .. })));
        assert!(total_variance(&ObservableBasis::pauli(2).unwrap(), &low).is_err());
    }

    #[test]
    fn skew_information_of_maximally_mixed_vanishes() {
        let rho = DensityOperator::maximally_mixed(vec![3]).unwrap();
        for x in spin1_matrices() {
            assert!(skew_information(&x, &rho).unwrap() < 1e-15);
        }
    }
}
