//! Serializable summary of a state against an observable basis.

use serde::{Deserialize, Serialize};

use crate::entanglement::{assess, resolve_range};
use crate::error::Result;
use crate::linalg::{DensityOperator, StateVector};
use crate::observables::{expectations, total_variance, variances, ObservableBasis};
use crate::states::{squeezing_report, SqueezingReport};

/// Where the variance range used for the measure came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeSource {
    /// Known in closed form for the basis.
    Catalog,
    /// Found by the total-variance optimizer.
    Optimizer,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub basis: String,
    pub dims: Vec<usize>,
    pub labels: Vec<String>,
    pub expectations: Vec<f64>,
    pub variances: Vec<f64>,
    pub total_variance: f64,
    pub pure: bool,
    pub v_min: Option<f64>,
    pub v_max: Option<f64>,
    pub range_source: Option<RangeSource>,
    /// Only defined for pure states.
    pub mu: Option<f64>,
    pub completely_entangled: Option<bool>,
    /// `max_i |<X_i>|`.
    pub residual: f64,
    /// Spin-1 states only.
    pub squeezing: Option<SqueezingReport>,
}

impl AnalysisReport {
    /// Full report for a pure state; `tol` bounds the residual for the
    /// complete-entanglement flag.
    pub fn pure(psi: &StateVector, basis: &ObservableBasis, tol: f64) -> Result<Self> {
        let range_source =
            if basis.range().is_some() { RangeSource::Catalog } else { RangeSource::Optimizer };
        let basis = resolve_range(basis)?;
        let a = assess(psi, &basis)?;
        let squeezing = if psi.dims() == [3] { Some(squeezing_report(psi)?) } else { None };
        Ok(Self {
            basis: basis.name().to_string(),
            dims: psi.dims().to_vec(),
            labels: basis.labels().to_vec(),
            expectations: expectations(&basis, psi)?,
            variances: variances(&basis, psi)?,
            total_variance: a.total_variance,
            pure: true,
            v_min: Some(a.v_min),
            v_max: Some(a.v_max),
            range_source: Some(range_source),
            mu: Some(a.mu),
            completely_entangled: Some(a.residual < tol),
            residual: a.residual,
            squeezing,
        })
    }

    /// Mixed states get the raw functionals only: the measure is defined
    /// through pure-state extremes.
    pub fn mixed(rho: &DensityOperator, basis: &ObservableBasis) -> Result<Self> {
        let means = expectations(basis, rho)?;
        Ok(Self {
            basis: basis.name().to_string(),
            dims: rho.dims().to_vec(),
            labels: basis.labels().to_vec(),
            residual: means.iter().map(|x| x.abs()).fold(0.0, f64::max),
            expectations: means,
            variances: variances(basis, rho)?,
            total_variance: total_variance(basis, rho)?,
            pure: false,
            v_min: None,
            v_max: None,
            range_source: None,
            mu: None,
            completely_entangled: None,
            squeezing: None,
        })
    }
}
