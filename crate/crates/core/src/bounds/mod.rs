//! Volume bounds for canonical-lift complements, the Lambert W function and
//! the regular ideal tetrahedron volume.

mod formulas;
mod lambert;
mod tetrahedron;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use formulas::{
    coro2_bounds, coro_nub_upper, d_sigma, pib2_lower, thm1_lower, thm_seq_upper, thm_ub_bounds,
    thm_ub_ratio, tps_bounds, tps_constants,
};
pub use lambert::{lambert_w0, BRANCH_POINT};
pub use tetrahedron::{v3, v3_by_quadrature, v3_self_test, V3};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("Lambert W is undefined at {0} (principal branch needs x >= -1/e)")]
    OutOfDomain(f64),
    #[error("{formula}: W argument {argument} is not positive")]
    WArgumentNonpositive {
        formula: &'static str,
        argument: f64,
    },
    #[error("surface of genus {g} with {k} punctures is not hyperbolic")]
    NotHyperbolicSurface { g: u64, k: u64 },
    #[error("genus {g} needs k = 2 mod g, got k = {k}")]
    CongruenceViolated { g: u64, k: u64 },
    #[error("{0}")]
    InvalidInput(String),
}

/// Metric constants `C`, `δ` and the covering degree `d_Σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub c_rho: f64,
    pub delta_rho: f64,
    pub d_sigma: u64,
}

impl BoundParams {
    pub fn new(c_rho: f64, delta_rho: f64, d_sigma: u64) -> Result<Self, BoundsError> {
        if !(c_rho.is_finite() && c_rho > 0.0) {
            return Err(BoundsError::InvalidInput(format!(
                "C must be positive, got {c_rho}"
            )));
        }
        if !(delta_rho.is_finite() && delta_rho >= 0.0) {
            return Err(BoundsError::InvalidInput(format!(
                "delta must be nonnegative, got {delta_rho}"
            )));
        }
        if d_sigma == 0 {
            return Err(BoundsError::InvalidInput("d_sigma must be positive".into()));
        }
        Ok(BoundParams {
            c_rho,
            delta_rho,
            d_sigma,
        })
    }
}

/// An input value as recorded in a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputValue {
    Int(i64),
    Real(f64),
}

impl fmt::Display for InputValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputValue::Int(v) => write!(f, "{v}"),
            InputValue::Real(v) => write!(f, "{v}"),
        }
    }
}

impl From<u64> for InputValue {
    fn from(v: u64) -> Self {
        InputValue::Int(v as i64)
    }
}

impl From<f64> for InputValue {
    fn from(v: f64) -> Self {
        InputValue::Real(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "formula")]
    pub formula_name: String,
    pub inputs: BTreeMap<String, InputValue>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub valid: bool,
    pub reason: Option<String>,
}

impl BoundReport {
    /// Builds a report; `valid` is true only when every present bound is
    /// finite and `lower ≤ upper` whenever both are present.
    pub fn new(
        formula_name: &str,
        inputs: BTreeMap<String, InputValue>,
        lower: Option<f64>,
        upper: Option<f64>,
    ) -> Self {
        let reason = match (lower, upper) {
            (None, None) => Some("no bound evaluated".to_string()),
            (Some(l), _) if !l.is_finite() => Some(format!("lower bound is not finite ({l})")),
            (_, Some(u)) if !u.is_finite() => Some(format!("upper bound is not finite ({u})")),
            (Some(l), Some(u)) if l > u => Some(format!("lower bound {l} exceeds upper bound {u}")),
            _ => None,
        };
        let report = BoundReport {
            formula_name: formula_name.to_string(),
            inputs,
            lower,
            upper,
            valid: reason.is_none(),
            reason,
        };
        debug_assert!(report.sandwich_consistent());
        report
    }

    /// A report known to be invalid for the given reason.
    pub fn invalid(
        formula_name: &str,
        inputs: BTreeMap<String, InputValue>,
        lower: Option<f64>,
        upper: Option<f64>,
        reason: String,
    ) -> Self {
        BoundReport {
            formula_name: formula_name.to_string(),
            inputs,
            lower,
            upper,
            valid: false,
            reason: Some(reason),
        }
    }

    /// `valid ⟹ lower ≤ upper`.
    pub fn sandwich_consistent(&self) -> bool {
        match (self.valid, self.lower, self.upper) {
            (true, Some(l), Some(u)) => l <= u,
            _ => true,
        }
    }
}
