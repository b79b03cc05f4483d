//! Extremizing the total variance over pure states.
//!
//! The objective `Σ_i V(X_i; ψ)` is smooth on the unit sphere of the state
//! space. We run projected (Riemannian) gradient steps with renormalization
//! as the retraction, from several seeded random starts, and keep the best
//! result. Restarts are independent and run in parallel; the merge is by
//! value with ties going to the lower restart index, so the output depends
//! only on the seed.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, StateVector, C64};
use crate::observables::{expectations, ObservableBasis, VarianceRange};
use crate::random::{random_state, substream};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Riemannian gradient norm at which a run is considered converged.
    pub grad_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: 32, seed: 0, max_iter: 10_000, grad_tol: 1e-10 }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarianceExtremum {
    pub state: StateVector,
    pub value: f64,
    /// `max_i |<X_i>|` at the returned state.
    pub residual: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
}

/// Runs that end with a gradient above this count as stalled.
const STALL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    Ascent,
    Descent,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Ascent => 1.0,
            Direction::Descent => -1.0,
        }
    }
}

/// Maximum of the total variance; for a scalar Casimir this is the same as
/// minimizing `Σ <X_i>²`.
pub fn maximize_total_variance(
    basis: &ObservableBasis,
    config: &OptimizerConfig,
) -> Result<VarianceExtremum> {
    extremize(basis, config, Direction::Ascent)
}

/// Minimum of the total variance (the unentangled value).
pub fn minimize_total_variance(
    basis: &ObservableBasis,
    config: &OptimizerConfig,
) -> Result<VarianceExtremum> {
    extremize(basis, config, Direction::Descent)
}

/// Both extremes, from independent optimizer runs.
pub fn variance_range(basis: &ObservableBasis, config: &OptimizerConfig) -> Result<VarianceRange> {
    let hi = maximize_total_variance(basis, config)?;
    let lo = minimize_total_variance(basis, config)?;
    Ok(VarianceRange::new(lo.value, hi.value))
}

type RangeCache = Mutex<HashMap<(String, usize, usize), VarianceRange>>;

fn range_cache() -> &'static RangeCache {
    static CACHE: OnceLock<RangeCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Returns the basis with a variance range attached: the known one when the
/// basis carries it, otherwise computed once with the default optimizer
/// settings and cached per (name, dimension, operator count).
pub fn resolve_range(basis: &ObservableBasis) -> Result<ObservableBasis> {
    if basis.range().is_some() {
        return Ok(basis.clone());
    }
    let key = (basis.name().to_string(), basis.dim(), basis.len());
    if let Some(r) = range_cache().lock().expect("range cache poisoned").get(&key) {
        return Ok(basis.clone().with_range(*r));
    }
    let range = variance_range(basis, &OptimizerConfig::default())?;
    range_cache().lock().expect("range cache poisoned").insert(key, range);
    Ok(basis.clone().with_range(range))
}

struct Objective {
    ops: Vec<ComplexMatrix>,
    casimir: ComplexMatrix,
}

impl Objective {
    fn new(basis: &ObservableBasis) -> Self {
        let n = basis.dim();
        let ops = basis.operators().to_vec();
        let casimir = ops.iter().fold(ComplexMatrix::zeros(n, n), |acc, x| &acc + &(x * x));
        Self { ops, casimir }
    }

    fn value(&self, psi: &[C64]) -> f64 {
        let second = self.casimir.sandwich(psi).re;
        let means: f64 = self.ops.iter().map(|x| x.sandwich(psi).re.powi(2)).sum();
        second - means
    }

    /// Value and Riemannian gradient (Euclidean gradient in real
    /// coordinates, projected onto the tangent space of the sphere).
    fn value_and_gradient(&self, psi: &[C64]) -> (f64, Vec<C64>) {
        let q_psi = self.casimir.apply(psi).expect("shape checked");
        let mut grad: Vec<C64> = q_psi.iter().map(|z| z * 2.0).collect();
        let mut value = psi.iter().zip(&q_psi).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        for x in &self.ops {
            let x_psi = x.apply(psi).expect("shape checked");
            let mean: f64 = psi.iter().zip(&x_psi).map(|(a, b)| (a.conj() * b).re).sum();
            value -= mean * mean;
            for (g, xp) in grad.iter_mut().zip(&x_psi) {
                *g -= xp * (4.0 * mean);
            }
        }
        let radial: f64 = psi.iter().zip(&grad).map(|(a, g)| (a.conj() * g).re).sum();
        for (g, a) in grad.iter_mut().zip(psi) {
            *g -= a * radial;
        }
        (value, grad)
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [C64]) {
    let n = norm(v);
    for z in v.iter_mut() {
        *z /= n;
    }
}

/// Fixes the global phase so the largest amplitude is real and positive.
fn canonical_phase(v: &mut [C64]) {
    if let Some(big) = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())) {
        if big.norm() > 0.0 {
            let phase = big.conj() / big.norm();
            for z in v.iter_mut() {
                *z *= phase;
            }
        }
    }
}

struct RunResult {
    amps: Vec<C64>,
    value: f64,
    gradient_norm: f64,
    iterations: usize,
}

fn run_once(obj: &Objective, start: Vec<C64>, config: &OptimizerConfig, dir: Direction) -> RunResult {
    let sign = dir.sign();
    let mut psi = start;
    let mut step = 0.1;
    let (mut value, mut grad) = obj.value_and_gradient(&psi);
    let mut gnorm = norm(&grad);
    let mut iterations = 0;
    while iterations < config.max_iter && gnorm > config.grad_tol {
        iterations += 1;
        let mut accepted = false;
        while step > 1e-14 {
            let mut trial: Vec<C64> =
                psi.iter().zip(&grad).map(|(a, g)| a + g * (sign * step)).collect();
            normalize(&mut trial);
            let trial_value = obj.value(&trial);
            if sign * (trial_value - value) > 0.0 {
                psi = trial;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // No representable improvement left along the gradient.
            break;
        }
        (value, grad) = obj.value_and_gradient(&psi);
        gnorm = norm(&grad);
    }
    RunResult { amps: psi, value, gradient_norm: gnorm, iterations }
}

fn extremize(
    basis: &ObservableBasis,
    config: &OptimizerConfig,
    dir: Direction,
) -> Result<VarianceExtremum> {
    if config.restarts == 0 {
        return Err(Error::NoConvergence("at least one restart is required".into()));
    }
    let obj = Objective::new(basis);
    let dims = basis.dims().to_vec();
    let runs: Vec<RunResult> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = substream(config.seed, r as u64);
            let start = random_state(&dims, &mut rng).into_amplitudes();
            run_once(&obj, start, config, dir)
        })
        .collect();

    if runs.iter().all(|r| r.gradient_norm > STALL_TOL) {
        let best = runs.iter().map(|r| r.gradient_norm).fold(f64::INFINITY, f64::min);
        return Err(Error::NoConvergence(format!(
            "all {} restarts stalled (smallest gradient norm {best:.3e})",
            config.restarts
        )));
    }

    let sign = dir.sign();
    let best = runs
        .into_iter()
        .enumerate()
        .filter(|(_, r)| r.gradient_norm <= STALL_TOL)
        .fold(None::<(usize, RunResult)>, |acc, (i, r)| match acc {
            Some((j, b)) if sign * (b.value - r.value) >= 0.0 => Some((j, b)),
            _ => Some((i, r)),
        })
        .map(|(_, r)| r)
        .expect("at least one converged run");

    let mut amps = best.amps;
    canonical_phase(&mut amps);
    let state = StateVector::normalized(dims, amps)?;
    let residual = expectations(basis, &state)?.iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok(VarianceExtremum {
        value: crate::observables::total_variance(basis, &state)?,
        state,
        residual,
        gradient_norm: best.gradient_norm,
        iterations: best.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> OptimizerConfig {
        OptimizerConfig::with_seed(7).restarts(8)
    }

    #[test]
    fn spin1_extremes() {
        let b = ObservableBasis::spin1();
        let hi = maximize_total_variance(&b, &quick()).unwrap();
        assert!((hi.value - 2.0).abs() < 1e-9, "{}", hi.value);
        assert!(hi.residual < 1e-7);
        let lo = minimize_total_variance(&b, &quick()).unwrap();
        assert!((lo.value - 1.0).abs() < 1e-9, "{}", lo.value);
    }

    #[test]
    fn deterministic_for_seed() {
        let b = ObservableBasis::pauli(2).unwrap();
        let a = maximize_total_variance(&b, &quick()).unwrap();
        let c = maximize_total_variance(&b, &quick()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn zero_restarts_is_an_error() {
        let b = ObservableBasis::spin1();
        let cfg = OptimizerConfig { restarts: 0, ..OptimizerConfig::default() };
        assert!(matches!(maximize_total_variance(&b, &cfg), Err(Error::NoConvergence(_))));
    }

    #[test]
    fn starved_iterations_report_stall() {
        let b = ObservableBasis::spin1();
        let cfg = OptimizerConfig { restarts: 2, seed: 1, max_iter: 1, grad_tol: 1e-10 };
        assert!(matches!(maximize_total_variance(&b, &cfg), Err(Error::NoConvergence(_))));
    }

    #[test]
    fn resolve_range_uses_catalog_then_cache() {
        let spin = resolve_range(&ObservableBasis::spin1()).unwrap();
        assert_eq!(spin.range(), Some(VarianceRange::new(1.0, 2.0)));
        let q1 = resolve_range(&ObservableBasis::pauli(1).unwrap()).unwrap();
        let r = q1.range().unwrap();
        assert!(r.is_degenerate() && (r.v_max - 2.0).abs() < 1e-9);
    }
}
