//! Spin 1 as a complexified real 3-vector, and the pentagram test.
//!
//! In the vector representation a state is `ψ ∈ ℝ³ ⊗ ℂ` and `S_ℓ ψ = i ℓ × ψ`.
//! For a unit vector ℓ the observable `R_ℓ = 2S_ℓ² − 1 = 1 − 2|ℓ><ℓ|` has
//! eigenvalues ±1, and `R_ℓ`, `R_m` commute exactly when `ℓ ⊥ m`. Five unit
//! vectors with cyclically orthogonal neighbours (a pentagram) give the
//! inequality `Σ <R_i R_{i+1}> + 3 ≥ 0` for any noncontextual ±1 assignment,
//! equivalently `Σ |<ℓ_i, ψ>|² ≤ 2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, StateVector, C64};
use crate::optim::{nelder_mead, SimplexSettings};
use crate::random::substream;

pub type Vec3 = [f64; 3];

const UNIT_TOL: f64 = 1e-10;
const ORTHO_TOL: f64 = 1e-9;
/// Largest neighbour overlap repaired (with a warning) in user-supplied geometry.
pub const INPUT_ORTHO_TOL: f64 = 1e-6;
const VIOLATION_MARGIN: f64 = 1e-9;
const CLOSURE_PENALTY: f64 = 1e3;
pub const DEFAULT_RESTARTS: usize = 64;

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scaled(a: Vec3, s: f64) -> Vec3 {
    a.map(|x| x * s)
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn unit(a: Vec3) -> Result<Vec3> {
    let n = norm(a);
    if !(n > 1e-300) || !n.is_finite() {
        return Err(Error::InvalidState("zero or non-finite direction".into()));
    }
    Ok(scaled(a, 1.0 / n))
}

fn rotate(r: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    [dot(r[0], v), dot(r[1], v), dot(r[2], v)]
}

/// Columns are the images of `|+1>`, `|0>`, `|-1>`: `e_{±1} = ∓(x̂ ± iŷ)/√2`,
/// `e_0 = ẑ`.
fn dictionary() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows([
        [c64(-h, 0.0), c64(0.0, 0.0), c64(h, 0.0)],
        [c64(0.0, -h), c64(0.0, 0.0), c64(0.0, -h)],
        [c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
    ])
}

/// A normalized spin-1 state in Cartesian components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorRepState {
    components: [C64; 3],
}

impl VectorRepState {
    pub fn new(components: [C64; 3]) -> Result<Self> {
        let n2: f64 = components.iter().map(|z| z.norm_sqr()).sum();
        if components.iter().any(|z| !z.is_finite()) || (n2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("vector-rep norm² {n2}, expected 1")));
        }
        Ok(Self { components })
    }

    pub fn normalized(components: [C64; 3]) -> Result<Self> {
        let n = components.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new(components.map(|z| z / n))
    }

    /// A real direction `v`, the state `|0>` along `v`.
    pub fn real(v: Vec3) -> Result<Self> {
        let u = unit(v)?;
        Ok(Self { components: u.map(|x| c64(x, 0.0)) })
    }

    /// `(m + i n)/√2` for orthonormal `m`, `n`: the spin coherent state with
    /// spin +1 along `m × n`.
    pub fn coherent(m: Vec3, n: Vec3) -> Result<Self> {
        Self::normalized([0, 1, 2].map(|k| c64(m[k], n[k])))
    }

    pub fn components(&self) -> [C64; 3] {
        self.components
    }

    pub fn real_part(&self) -> Vec3 {
        self.components.map(|z| z.re)
    }

    pub fn imag_part(&self) -> Vec3 {
        self.components.map(|z| z.im)
    }

    /// `|<ℓ, ψ>|²` for a real vector ℓ.
    pub fn overlap_sqr(&self, l: Vec3) -> f64 {
        let z: C64 = (0..3).map(|k| self.components[k] * l[k]).sum();
        z.norm_sqr()
    }

    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Self {
        let re = rotate(r, self.real_part());
        let im = rotate(r, self.imag_part());
        Self { components: [0, 1, 2].map(|k| c64(re[k], im[k])) }
    }
}

pub fn to_vector_rep(psi: &StateVector) -> Result<VectorRepState> {
    if psi.dims() != [3] {
        return Err(Error::DimensionMismatch { expected: 3, found: psi.dim() });
    }
    let v = dictionary().apply(psi.amplitudes())?;
    VectorRepState::normalized([v[0], v[1], v[2]])
}

pub fn from_vector_rep(psi: &VectorRepState) -> StateVector {
    let v = dictionary().dagger().apply(&psi.components).expect("3-vector");
    StateVector::normalized(vec![3], v).expect("unitary image of a unit vector")
}

/// `S_ℓ ψ = i ℓ × ψ` (not normalized).
pub fn spin_projection_vector_rep(l: Vec3, psi: &VectorRepState) -> [C64; 3] {
    let re = cross(l, psi.real_part());
    let im = cross(l, psi.imag_part());
    [0, 1, 2].map(|k| c64(-im[k], re[k]))
}

/// Matrix of `S_ℓ` in the Cartesian basis: `(S_ℓ)_{jk} = i Σ_a ε_{jak} ℓ_a`.
pub fn spin_operator_vector_rep(l: Vec3) -> ComplexMatrix {
    let i = c64(0.0, 1.0);
    ComplexMatrix::from_rows([
        [C64::default(), -i * l[2], i * l[1]],
        [i * l[2], C64::default(), -i * l[0]],
        [-i * l[1], i * l[0], C64::default()],
    ])
}

/// `R_ℓ = 1 − 2|ℓ><ℓ|`.
pub fn r_operator(l: Vec3) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, 3, |j, k| {
        let delta = if j == k { 1.0 } else { 0.0 };
        c64(delta - 2.0 * l[j] * l[k], 0.0)
    })
}

/// `R_ℓ = 2S_ℓ² − 1`, the same operator built from the spin projection.
pub fn r_operator_from_spin(l: Vec3) -> ComplexMatrix {
    let s = spin_operator_vector_rep(l);
    &(&s * &s).scale_real(2.0) - &ComplexMatrix::identity(3)
}

/// Five real unit vectors with `ℓ_i ⊥ ℓ_{i+1}` (indices mod 5).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Vec3; 5]", into = "[Vec3; 5]")]
pub struct Pentagram {
    vertices: [Vec3; 5],
}

impl TryFrom<[Vec3; 5]> for Pentagram {
    type Error = Error;

    fn try_from(v: [Vec3; 5]) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Pentagram> for [Vec3; 5] {
    fn from(p: Pentagram) -> Self {
        p.vertices
    }
}

impl Pentagram {
    pub fn new(vertices: [Vec3; 5]) -> Result<Self> {
        let p = Self { vertices };
        p.validate(UNIT_TOL, ORTHO_TOL)?;
        Ok(p)
    }

    /// Accepts hand-entered geometry. Vectors are normalized, and neighbour
    /// overlaps up to [`INPUT_ORTHO_TOL`] are removed by Gram-Schmidt on the
    /// offending pair. Every repair is reported in the returned warnings.
    pub fn from_input(vertices: [Vec3; 5]) -> Result<(Self, Vec<String>)> {
        let mut warnings = Vec::new();
        let mut v = vertices;
        for (i, l) in v.iter_mut().enumerate() {
            let n = norm(*l);
            if (n - 1.0).abs() > UNIT_TOL {
                warnings.push(format!("vertex {i} had norm {n}; normalized"));
            }
            *l = unit(*l)?;
        }
        for i in 0..5 {
            let j = (i + 1) % 5;
            let d = dot(v[i], v[j]);
            if d.abs() > INPUT_ORTHO_TOL {
                return Err(Error::NotOrthogonal(i, j, d));
            }
        }
        // Each pass shrinks the overlaps by roughly the size of the repair,
        // so a couple of passes reach rounding level.
        for _ in 0..4 {
            let mut changed = false;
            for i in 0..5 {
                let j = (i + 1) % 5;
                let d = dot(v[i], v[j]);
                if d.abs() > 1e-15 {
                    if d.abs() > ORTHO_TOL {
                        warnings.push(format!("vertices {i},{j} overlap {d:.3e}; re-orthogonalized"));
                    }
                    v[j] = unit(add(v[j], scaled(v[i], -d)))?;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok((Self::new(v)?, warnings))
    }

    pub fn vertices(&self) -> &[Vec3; 5] {
        &self.vertices
    }

    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Self {
        Self { vertices: self.vertices.map(|l| rotate(r, l)) }
    }

    fn validate(&self, unit_tol: f64, ortho_tol: f64) -> Result<()> {
        for (i, l) in self.vertices.iter().enumerate() {
            let n = norm(*l);
            if !n.is_finite() || (n - 1.0).abs() > unit_tol {
                return Err(Error::InvalidState(format!("vertex {i} has norm {n}")));
            }
        }
        for i in 0..5 {
            let j = (i + 1) % 5;
            let d = dot(self.vertices[i], self.vertices[j]);
            if d.abs() > ortho_tol {
                return Err(Error::NotOrthogonal(i, j, d));
            }
        }
        Ok(())
    }
}

/// Regular pentagram around `axis`: a common polar angle with
/// `cos²θ = cos(π/5) / (1 + cos(π/5))` and azimuths `4πk/5`.
pub fn regular_pentagram(axis: Vec3) -> Result<Pentagram> {
    let a = unit(axis)?;
    let helper = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = unit(cross(a, helper))?;
    let w = cross(a, u);
    let c = (PI / 5.0).cos();
    let cos_t = (c / (1.0 + c)).sqrt();
    let sin_t = (1.0 / (1.0 + c)).sqrt();
    let vertices = [0, 1, 2, 3, 4].map(|k| {
        let phi = 4.0 * PI * k as f64 / 5.0;
        let side = add(scaled(u, phi.cos()), scaled(w, phi.sin()));
        add(scaled(a, cos_t), scaled(side, sin_t))
    });
    Pentagram::new(vertices)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PentagramReport {
    /// `Σ |<ℓ_i, ψ>|²`; noncontextual models give at most 2.
    pub geometric_value: f64,
    /// `Σ <R_i R_{i+1}> + 3`; noncontextual models give at least 0.
    pub bell_lhs: f64,
    pub violated: bool,
}

pub fn pentagram_value(p: &Pentagram, psi: &VectorRepState) -> Result<PentagramReport> {
    p.validate(UNIT_TOL, ORTHO_TOL)?;
    let geometric_value: f64 = p.vertices.iter().map(|&l| psi.overlap_sqr(l)).sum();
    let r: Vec<ComplexMatrix> = p.vertices.iter().map(|&l| r_operator(l)).collect();
    let mut bell_lhs = 3.0;
    for i in 0..5 {
        bell_lhs += (&r[i] * &r[(i + 1) % 5]).sandwich(&psi.components).re;
    }
    Ok(PentagramReport {
        geometric_value,
        bell_lhs,
        violated: geometric_value > 2.0 + VIOLATION_MARGIN,
    })
}

/// `Σ r_i r_{i+1} + 3` for all 32 deterministic assignments `r_i = ±1`.
pub fn classical_bell_values() -> Vec<([i8; 5], i32)> {
    (0..32u32)
        .map(|bits| {
            let r: [i8; 5] = [0, 1, 2, 3, 4].map(|k| if bits >> k & 1 == 1 { -1 } else { 1 });
            let s: i32 = (0..5).map(|i| i32::from(r[i]) * i32::from(r[(i + 1) % 5])).sum();
            (r, s + 3)
        })
        .collect()
}

/// Six angles to five vectors. `ℓ_1` comes from spherical angles, `ℓ_2` from
/// one angle in the plane orthogonal to `ℓ_1`, and each later vector from one
/// angle in the plane orthogonal to its predecessor. Only `ℓ_5 ⊥ ℓ_1` is left
/// unconstrained.
fn open_chain(x: &[f64]) -> [Vec3; 5] {
    let (th, ph) = (x[0], x[1]);
    let l1 = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
    let e_th = [th.cos() * ph.cos(), th.cos() * ph.sin(), -th.sin()];
    let e_ph = [-ph.sin(), ph.cos(), 0.0];
    let l2 = add(scaled(e_th, x[2].cos()), scaled(e_ph, x[2].sin()));
    let mut v = [l1, l2, [0.0; 3], [0.0; 3], [0.0; 3]];
    for i in 2..5 {
        let (prev, cur) = (v[i - 2], v[i - 1]);
        v[i] = add(scaled(prev, x[i + 1].cos()), scaled(cross(cur, prev), x[i + 1].sin()));
    }
    v
}

/// Replaces `ℓ_5` by the unit vector orthogonal to both `ℓ_4` and `ℓ_1`
/// that is closest to it.
fn close_chain(mut v: [Vec3; 5]) -> [Vec3; 5] {
    let c = cross(v[3], v[0]);
    let n = norm(c);
    if n > 1e-12 {
        let c = scaled(c, 1.0 / n);
        v[4] = if dot(c, v[4]) >= 0.0 { c } else { scaled(c, -1.0) };
    }
    v
}

fn chain_value(v: &[Vec3; 5], psi: &VectorRepState) -> f64 {
    v.iter().map(|&l| psi.overlap_sqr(l)).sum()
}

struct Candidate {
    vertices: [Vec3; 5],
    value: f64,
}

fn search_once(psi: &VectorRepState, seed: u64, index: usize) -> Result<Candidate> {
    let mut rng = substream(seed, index as u64);
    let x0: Vec<f64> = (0..6)
        .map(|k| if k == 0 { rng.random::<f64>() * PI } else { rng.random::<f64>() * TAU })
        .collect();
    let settings = SimplexSettings::default();
    let penalized = |x: &[f64]| {
        let v = open_chain(x);
        -chain_value(&v, psi) + CLOSURE_PENALTY * dot(v[4], v[0]).powi(2)
    };
    let (x1, _) = nelder_mead(penalized, &x0, &settings)?;
    let feasible = |x: &[f64]| -chain_value(&close_chain(open_chain(x)), psi);
    let polish = SimplexSettings { step: 0.05, ..settings };
    let (x2, _) = nelder_mead(feasible, &x1, &polish)?;
    let vertices = close_chain(open_chain(&x2));
    Ok(Candidate { value: chain_value(&vertices, psi), vertices })
}

/// Searches for the pentagram with the largest geometric value for `psi`.
///
/// Each restart runs Nelder-Mead on the six chain angles with a quadratic
/// penalty on `ℓ_5 · ℓ_1`, projects onto the constraint and polishes on the
/// projected objective. Restarts use independent seeded streams; the best
/// value wins, ties going to the lower restart index.
pub fn optimize_pentagram(
    psi: &VectorRepState,
    restarts: usize,
    seed: u64,
) -> Result<(Pentagram, PentagramReport)> {
    if restarts == 0 {
        return Err(Error::NoConvergence("at least one restart is required".into()));
    }
    let runs: Vec<Result<Candidate>> =
        (0..restarts).into_par_iter().map(|r| search_once(psi, seed, r)).collect();
    let mut best: Option<Candidate> = None;
    let mut last_err = None;
    for run in runs {
        match run {
            Ok(c) if c.value.is_finite() => {
                if best.as_ref().is_none_or(|b| c.value > b.value) {
                    best = Some(c);
                }
            }
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    let best = best.ok_or_else(|| {
        last_err.unwrap_or_else(|| Error::NoConvergence("no finite pentagram value".into()))
    })?;
    let p = Pentagram::new(best.vertices)?;
    let report = pentagram_value(&p, psi)?;
    Ok((p, report))
}
