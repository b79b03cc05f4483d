//! Factories and classifiers for named states.
//!
//! Single spin-1 amplitudes are in `(|+1>, |0>, |-1>)` order. Multi-qubit
//! amplitudes are lexicographic with `|0> = |↑>` first.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_eigendecomposition, matrix_exp, ComplexMatrix, DensityOperator, QuantumState,
    StateVector, C64,
};
use crate::observables::{expectation, spin1_lowering, spin1_matrices, spin1_raising};

/// Displacement parameter of a spin coherent state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentParams {
    pub alpha: C64,
}

impl CoherentParams {
    pub fn new(alpha: C64) -> Self {
        Self { alpha }
    }

    pub fn from_polar(magnitude: f64, phase: f64) -> Self {
        Self { alpha: C64::from_polar(magnitude, phase) }
    }
}

/// Parameter of the one-axis squeezing operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParams {
    pub xi: C64,
}

impl SqueezeParams {
    pub fn new(xi: C64) -> Self {
        Self { xi }
    }

    pub fn from_polar(magnitude: f64, phase: f64) -> Self {
        Self { xi: C64::from_polar(magnitude, phase) }
    }
}

fn zero() -> C64 {
    C64::default()
}

fn real(x: f64) -> C64 {
    c64(x, 0.0)
}

/// The lowest-weight state `|-1>`.
pub fn lowest_weight() -> StateVector {
    StateVector::basis(vec![3], 2).expect("valid qutrit basis index")
}

/// Spin-1 coherent state `D(α)|-1>` in closed form.
pub fn coherent_state(p: CoherentParams) -> StateVector {
    let a = p.alpha.norm();
    let phi = p.alpha.arg();
    let (s2, c2) = (2.0 * a).sin_cos();
    let amps = vec![
        C64::from_polar(0.5 * (1.0 - c2), 2.0 * phi),
        C64::from_polar(FRAC_1_SQRT_2 * s2, phi),
        real(0.5 * (1.0 + c2)),
    ];
    StateVector::normalized(vec![3], amps).expect("coherent amplitudes are normalized")
}

/// Displacement operator `exp(α S_+ − α* S_-)`.
pub fn displacement_operator(p: CoherentParams) -> ComplexMatrix {
    let gen = &spin1_raising().scale(p.alpha) - &spin1_lowering().scale(p.alpha.conj());
    matrix_exp(&gen).expect("square generator")
}

/// Spin-1 squeezed state `S(ξ)|-1>` in closed form.
pub fn squeezed_state(p: SqueezeParams) -> StateVector {
    let r = p.xi.norm();
    let phi = p.xi.arg();
    let amps = vec![-C64::from_polar(r.sin(), phi), zero(), real(r.cos())];
    StateVector::normalized(vec![3], amps).expect("squeezed amplitudes are normalized")
}

/// Squeezing operator `exp[(ξ* S_-² − ξ S_+²)/2]`.
pub fn squeezing_operator(p: SqueezeParams) -> ComplexMatrix {
    let up = spin1_raising();
    let down = spin1_lowering();
    let gen = (&(&down * &down).scale(p.xi.conj()) - &(&up * &up).scale(p.xi)).scale_real(0.5);
    matrix_exp(&gen).expect("square generator")
}

/// Rotation `exp(−i θ n·S)` of a spin 1 about the unit axis `n`.
pub fn spin1_rotation(axis: [f64; 3], angle: f64) -> ComplexMatrix {
    let s = spin1_matrices();
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    let gen = s
        .iter()
        .zip(axis)
        .fold(ComplexMatrix::zeros(3, 3), |acc, (op, n)| &acc + &op.scale_real(n / norm));
    matrix_exp(&gen.scale(c64(0.0, -angle))).expect("square generator")
}

/// Rotation carrying the mean spin of `|-1>` (that is, `-ẑ`) onto `target`.
pub fn rotation_from_lowest_weight(target: [f64; 3]) -> ComplexMatrix {
    let norm = target.iter().map(|x| x * x).sum::<f64>().sqrt();
    let t = target.map(|x| x / norm);
    let from = [0.0, 0.0, -1.0];
    let axis = cross(from, t);
    let sin = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    let cos = dot(from, t);
    if sin < 1e-12 {
        return if cos > 0.0 {
            ComplexMatrix::identity(3)
        } else {
            spin1_rotation([1.0, 0.0, 0.0], std::f64::consts::PI)
        };
    }
    spin1_rotation(axis, sin.atan2(cos))
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

/// Kitagawa-Ueda squeezing diagnostics of a spin-1 state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingReport {
    /// `(<S_x>, <S_y>, <S_z>)`.
    pub mean_spin: [f64; 3],
    /// Smallest `V(S_r)` over unit `r ⊥ <S>` (over all unit `r` when the
    /// mean spin vanishes).
    pub min_transverse_variance: f64,
    pub is_squeezed: bool,
    /// `V_x + V_y` in the frame whose z axis is along the mean spin; the
    /// laboratory frame when the mean spin vanishes.
    pub transverse_sum: f64,
}

/// Spin length of the spin-1 representation.
const SPIN: f64 = 1.0;

pub fn squeezing_report(psi: &StateVector) -> Result<SqueezingReport> {
    if psi.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: psi.dim() });
    }
    let ops = spin1_matrices();
    let mut mean = [0.0; 3];
    for (m, op) in mean.iter_mut().zip(&ops) {
        *m = expectation(op, psi)?;
    }
    // Symmetrized covariance C_ab = Re<{S_a, S_b}>/2 − <S_a><S_b>.
    let mut cov = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let anti = &(&ops[a] * &ops[b]) + &(&ops[b] * &ops[a]);
            cov[a][b] = 0.5 * psi.raw_expectation(&anti).re - mean[a] * mean[b];
        }
    }
    let form = |u: [f64; 3], v: [f64; 3]| -> f64 {
        (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| u[a] * cov[a][b] * v[b]).sum()
    };

    let length = dot(mean, mean).sqrt();
    let (min_var, transverse_sum) = if length > 1e-9 {
        let n = mean.map(|x| x / length);
        // Orthonormal pair spanning the plane orthogonal to the mean spin.
        let seed = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let u = {
            let c = cross(n, seed);
            let l = dot(c, c).sqrt();
            c.map(|x| x / l)
        };
        let w = cross(n, u);
        let (p, q, r) = (form(u, u), form(u, w), form(w, w));
        let half_tr = 0.5 * (p + r);
        let disc = (0.25 * (p - r) * (p - r) + q * q).sqrt();
        (half_tr - disc, p + r)
    } else {
        let m = ComplexMatrix::from_fn(3, 3, |a, b| real(cov[a][b]));
        let eig = hermitian_eigendecomposition(&m)?;
        (eig.values[0], cov[0][0] + cov[1][1])
    };
    let min_transverse_variance = min_var.max(0.0);
    Ok(SqueezingReport {
        mean_spin: mean,
        min_transverse_variance,
        is_squeezed: min_transverse_variance < SPIN / 2.0 - 1e-12,
        transverse_sum,
    })
}

/// The 4×3 isometry onto the triplet sector, columns `|↑↑>`, `(|↑↓> + |↓↑>)/√2`,
/// `|↓↓>`.
pub fn symmetric_isometry() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(4, 3, |i, j| match (i, j) {
        (0, 0) | (3, 2) => real(1.0),
        (1, 1) | (2, 1) => real(h),
        _ => zero(),
    })
}

/// The antisymmetric singlet `(|↑↓> − |↓↑>)/√2`.
pub fn singlet() -> StateVector {
    let h = FRAC_1_SQRT_2;
    StateVector::new(vec![2, 2], vec![zero(), real(h), real(-h), zero()]).expect("normalized")
}

/// Maps a spin-1 state into the symmetric (triplet) sector of two qubits:
/// `|+1> -> |↑↑>`, `|0> -> (|↑↓> + |↓↑>)/√2`, `|-1> -> |↓↓>`.
pub fn embed_symmetric(psi: &StateVector) -> Result<StateVector> {
    if psi.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: psi.dim() });
    }
    let amps = symmetric_isometry().apply(psi.amplitudes())?;
    StateVector::normalized(vec![2, 2], amps)
}

/// Splits a two-qubit state into its renormalized triplet component (as a
/// spin-1 state) and the weight of the singlet.
pub fn project_symmetric(psi: &StateVector) -> Result<(StateVector, f64)> {
    if psi.dims() != [2, 2] {
        return Err(Error::DimensionMismatch { expected: 4, found: psi.dim() });
    }
    let sym = symmetric_isometry().dagger().apply(psi.amplitudes())?;
    let sym_norm = sym.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if sym_norm < 1e-12 {
        return Err(Error::FullyAntisymmetric);
    }
    let anti_weight = singlet().inner(psi).norm_sqr().clamp(0.0, 1.0);
    Ok((StateVector::normalized(vec![3], sym)?, anti_weight))
}

fn three_qubit(entries: &[(usize, f64)]) -> StateVector {
    let mut amps = vec![zero(); 8];
    for &(idx, a) in entries {
        amps[idx] = real(a);
    }
    StateVector::normalized(vec![2, 2, 2], amps).expect("nonzero amplitudes")
}

/// `(|000> + |111>)/√2`.
pub fn ghz_state() -> StateVector {
    three_qubit(&[(0b000, FRAC_1_SQRT_2), (0b111, FRAC_1_SQRT_2)])
}

/// `(|011> + |101> + |110>)/√3`.
pub fn w_state() -> StateVector {
    let a = 1.0 / 3f64.sqrt();
    three_qubit(&[(0b011, a), (0b101, a), (0b110, a)])
}

/// `(|011> + |101>)/√2`.
pub fn bi_state() -> StateVector {
    three_qubit(&[(0b011, FRAC_1_SQRT_2), (0b101, FRAC_1_SQRT_2)])
}

/// `x|000> + √(1−x²)|111>` for `0 <= x <= 1`.
pub fn ghz_type_state(x: f64) -> Result<StateVector> {
    check_unit_interval("x", x)?;
    Ok(three_qubit(&[(0b000, x), (0b111, (1.0 - x * x).max(0.0).sqrt())]))
}

fn check_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange { name, value: x, range: "[0, 1]" });
    }
    Ok(())
}

/// `(x/3) I + (1−x)|0><0|` on a single spin 1.
pub fn werner_qutrit(x: f64) -> Result<DensityOperator> {
    check_unit_interval("x", x)?;
    let d = [x / 3.0, x / 3.0 + 1.0 - x, x / 3.0].map(real);
    DensityOperator::new(vec![3], ComplexMatrix::from_diag(&d))
}

/// `(x/4) I + (1−x)|Φ><Φ|` with `|Φ> = (|↑↑> + |↓↓>)/√2`.
pub fn werner_two_qubit(x: f64) -> Result<DensityOperator> {
    check_unit_interval("x", x)?;
    let phi = bell_phi_plus();
    let m = &ComplexMatrix::identity(4).scale_real(x / 4.0)
        + &phi.projector().matrix().scale_real(1.0 - x);
    DensityOperator::new(vec![2, 2], m)
}

/// `(|↑↑> + |↓↓>)/√2`.
pub fn bell_phi_plus() -> StateVector {
    let h = FRAC_1_SQRT_2;
    StateVector::new(vec![2, 2], vec![real(h), zero(), zero(), real(h)]).expect("normalized")
}

/// Atom-field state after one photon emission from the excited level of a
/// λ atom: `(g1|+>⊗|1_1> + g2|->⊗|1_2>)/√(g1²+g2²)`.
///
/// The first qubit is the atom (`|+> -> 0`, `|-> -> 1`), the second records
/// which cavity mode holds the photon (`|1_1> -> 0`, `|1_2> -> 1`).
pub fn atom_field_state(g1: f64, g2: f64) -> Result<StateVector> {
    if g1 == 0.0 && g2 == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    StateVector::normalized(vec![2, 2], vec![real(g1), zero(), zero(), real(g2)])
}

/// Interaction Hamiltonian `g1 R_{0+} a_1 + g2 R_{0-} a_2 + h.c.` on the
/// one-excitation subspace `{|0,vac>, |+,1_1>, |-,1_2>}`.
pub fn lambda_hamiltonian(g1: f64, g2: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0.0, g1, g2], [g1, 0.0, 0.0], [g2, 0.0, 0.0]])
}

/// `|0, vac>`: excited atom, empty cavity.
pub fn lambda_initial_state() -> [C64; 3] {
    [real(1.0), zero(), zero()]
}

/// Reads the photon-emitted components of a one-excitation vector as a
/// two-qubit amplitude vector (the `|0,vac>` component has no image).
pub fn lambda_to_qubits(v: &[C64]) -> [C64; 4] {
    [v[1], zero(), zero(), v[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn coherent_zero_is_lowest_weight() {
        let s = coherent_state(CoherentParams::new(zero()));
        assert_eq!(s, lowest_weight());
    }

    #[test]
    fn coherent_quarter_pi() {
        let s = coherent_state(CoherentParams::from_polar(FRAC_PI_4, 0.0));
        let want = [0.5, FRAC_1_SQRT_2, 0.5];
        for (z, w) in s.amplitudes().iter().zip(want) {
            assert!((z - real(w)).norm() < 1e-15);
        }
    }

    #[test]
    fn coherent_matches_displacement() {
        for &(m, ph) in &[(0.3, 0.2), (1.1, -2.0), (2.7, 0.9)] {
            let p = CoherentParams::from_polar(m, ph);
            let via_exp = lowest_weight().evolve(&displacement_operator(p)).unwrap();
            let closed = coherent_state(p);
            let diff = via_exp
                .amplitudes()
                .iter()
                .zip(closed.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "{m} {ph}: {diff}");
        }
    }

    #[test]
    fn squeezed_matches_operator() {
        for &(m, ph) in &[(0.0, 0.0), (0.4, 1.0), (FRAC_PI_4, 0.0), (2.0, -0.3)] {
            let p = SqueezeParams::from_polar(m, ph);
            let via_exp = lowest_weight().evolve(&squeezing_operator(p)).unwrap();
            let diff = via_exp
                .amplitudes()
                .iter()
                .zip(squeezed_state(p).amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12);
        }
        let s = squeezed_state(SqueezeParams::new(zero()));
        assert_eq!(s, lowest_weight());
    }

    #[test]
    fn squeezing_of_named_states() {
        let low = squeezing_report(&lowest_weight()).unwrap();
        assert!(!low.is_squeezed);
        assert!((low.min_transverse_variance - 0.5).abs() < 1e-15);
        assert!((low.transverse_sum - 1.0).abs() < 1e-15);

        let zero_state = StateVector::basis(vec![3], 1).unwrap();
        let r = squeezing_report(&zero_state).unwrap();
        assert!(r.is_squeezed);
        assert!(r.transverse_sum >= SPIN);

        let h = FRAC_1_SQRT_2;
        let even = StateVector::qutrit(real(h), zero(), real(h)).unwrap();
        let r = squeezing_report(&even).unwrap();
        assert!(r.is_squeezed && r.min_transverse_variance < 1e-15);
        assert!(r.transverse_sum >= SPIN);
    }

    #[test]
    fn rotation_reproduces_coherent_states() {
        let p = CoherentParams::from_polar(0.8, 2.2);
        let target = coherent_state(p);
        let mut mean = [0.0; 3];
        for (m, op) in mean.iter_mut().zip(spin1_matrices()) {
            *m = expectation(&op, &target).unwrap();
        }
        let rotated = lowest_weight().evolve(&rotation_from_lowest_weight(mean)).unwrap();
        assert!(rotated.phase_distance(&target) < 1e-12);
        // Antipodal target.
        let up = lowest_weight().evolve(&rotation_from_lowest_weight([0.0, 0.0, 1.0])).unwrap();
        assert!(up.phase_distance(&StateVector::basis(vec![3], 0).unwrap()) < 1e-12);
    }

    #[test]
    fn symmetric_embedding() {
        let zero_state = StateVector::basis(vec![3], 1).unwrap();
        let e = embed_symmetric(&zero_state).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_eq!(e.amplitudes(), &[zero(), real(h), real(h), zero()]);
        let plus = StateVector::basis(vec![3], 0).unwrap();
        assert_eq!(embed_symmetric(&plus).unwrap(), StateVector::basis(vec![2, 2], 0).unwrap());
        assert!(singlet().inner(&e).norm() < 1e-16);
    }

    #[test]
    fn symmetric_projection() {
        assert_eq!(project_symmetric(&singlet()), Err(Error::FullyAntisymmetric));
        let (s, w) = project_symmetric(&StateVector::basis(vec![2, 2], 0).unwrap()).unwrap();
        assert_eq!(s, StateVector::basis(vec![3], 0).unwrap());
        assert_eq!(w, 0.0);
        let (s, w) = project_symmetric(&StateVector::basis(vec![2, 2], 1).unwrap()).unwrap();
        assert!(s.phase_distance(&StateVector::basis(vec![3], 1).unwrap()) < 1e-15);
        assert!((w - 0.5).abs() < 1e-15);
    }

    #[test]
    fn three_qubit_generators() {
        let g = ghz_state();
        assert!((g.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-16);
        assert!((g.amplitudes()[7].re - FRAC_1_SQRT_2).abs() < 1e-16);
        let w = w_state();
        for idx in [0b011, 0b101, 0b110] {
            assert!((w.amplitudes()[idx].re - 1.0 / 3f64.sqrt()).abs() < 1e-16);
        }
        let b = bi_state();
        assert!(b.amplitudes()[0b110].norm() == 0.0 && (b.amplitudes()[0b011].re - FRAC_1_SQRT_2).abs() < 1e-16);
        assert!(ghz_type_state(1.2).is_err());
    }

    #[test]
    fn werner_endpoints() {
        let w0 = werner_qutrit(0.0).unwrap();
        assert_eq!(w0.matrix(), StateVector::basis(vec![3], 1).unwrap().projector().matrix());
        let w1 = werner_qutrit(1.0).unwrap();
        assert!(w1.matrix().max_abs_diff(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0)) < 1e-16);
        assert!(matches!(werner_qutrit(-0.1), Err(Error::OutOfRange { .. })));
        let b0 = werner_two_qubit(0.0).unwrap();
        assert!(b0.matrix().max_abs_diff(bell_phi_plus().projector().matrix()) < 1e-16);
        assert!(werner_two_qubit(1.5).is_err());
    }

    #[test]
    fn atom_field_and_hamiltonian() {
        assert_eq!(atom_field_state(0.0, 0.0), Err(Error::ZeroCoupling));
        let s = atom_field_state(1.0, 1.0).unwrap();
        assert!(s.phase_distance(&bell_phi_plus()) < 1e-15);
        let s = atom_field_state(2.0, 0.0).unwrap();
        assert_eq!(s, StateVector::basis(vec![2, 2], 0).unwrap());

        assert_eq!(lambda_hamiltonian(0.0, 0.0), ComplexMatrix::zeros(3, 3));
        let h = lambda_hamiltonian(0.3, -1.7);
        assert!(h.is_hermitian(1e-12));
        let out = h.apply(&lambda_initial_state()).unwrap();
        assert_eq!(out, vec![zero(), real(0.3), real(-1.7)]);
    }
}
