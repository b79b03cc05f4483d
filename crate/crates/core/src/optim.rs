//! Derivative-free minimization for the low-dimensional searches in this crate.

use argmin::core::{CostFunction, Executor, State};
use argmin::solver::neldermead::NelderMead;

use crate::error::{Error, Result};

struct Cost<F>(F);

impl<F: Fn(&[f64]) -> f64> CostFunction for Cost<F> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok((self.0)(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexSettings {
    /// Edge length of the initial simplex around the start point.
    pub step: f64,
    pub max_iter: u64,
    /// Stop when the standard deviation of simplex values drops below this.
    pub tol: f64,
}

impl Default for SimplexSettings {
    fn default() -> Self {
        Self { step: 0.3, max_iter: 4000, tol: 1e-13 }
    }
}

/// Minimizes `f` with Nelder-Mead from `x0`, returning the best point and value.
pub fn nelder_mead<F>(f: F, x0: &[f64], settings: &SimplexSettings) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    let mut simplex = vec![x0.to_vec()];
    for i in 0..x0.len() {
        let mut v = x0.to_vec();
        v[i] += settings.step;
        simplex.push(v);
    }
    let fail = |e: argmin::core::Error| Error::NoConvergence(format!("nelder-mead: {e}"));
    let solver = NelderMead::new(simplex).with_sd_tolerance(settings.tol).map_err(fail)?;
    let res = Executor::new(Cost(f), solver)
        .configure(|s| s.max_iters(settings.max_iter))
        .run()
        .map_err(fail)?;
    let state = res.state();
    let best = state
        .get_best_param()
        .cloned()
        .ok_or_else(|| Error::NoConvergence("nelder-mead returned no point".into()))?;
    Ok((best, state.get_best_cost()))
}
