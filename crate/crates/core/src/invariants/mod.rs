//! Obstruction checks and stability quantities.
//!
//! Every check returns an [`ObstructionReport`]: a pass/fail verdict, a
//! signed margin (positive means satisfied with room to spare) and a map of
//! the intermediate quantities, serialized as JSON.

mod beta;
mod product;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functionals::futaki_with;
use crate::integrate::{integrate_weight, IntegrationConfig};
use crate::polytope::{dot, AffineFn, Polytope};
use crate::weights::{self, Weight};

pub use beta::{beta_v, truncation_bound_check, Valuation};
pub use product::product_cy_pipeline;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Lichnerowicz,
    Fujita,
    FutakiVanishing,
    Beta,
    CoercivityRadius,
    #[serde(rename = "product_cy")]
    ProductCY,
    /// `Vol(t) >= Vol(0) - t^n` along a truncation family.
    TruncationBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub kind: ReportKind,
    pub passed: bool,
    pub margin: f64,
    pub details: BTreeMap<String, Value>,
}

impl ObstructionReport {
    fn new(kind: ReportKind, passed: bool, margin: f64) -> Self {
        Self {
            kind,
            passed,
            margin,
            details: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report JSON is infallible")
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `min_V n (<xi, V> + 1) - <tau, V>`, which must be strictly positive.
/// With `xi = None` this is `n - <tau, V>`.
pub fn lichnerowicz_check(p: &Polytope, tau: &[f64], xi: Option<&[f64]>) -> Result<ObstructionReport> {
    if !p.is_canonical() {
        return Err(Error::NotCanonical("the bound is stated for canonical polytopes".into()));
    }
    let n = p.dim();
    if tau.len() != n || xi.is_some_and(|x| x.len() != n) {
        return Err(Error::InvalidInput("tau and xi must have the polytope's dimension".into()));
    }
    let zero = vec![0.0; n];
    let xi = xi.unwrap_or(&zero);
    if !p.dual_contains(xi) {
        return Err(Error::DomainViolation(format!("xi = {xi:?} is not in the interior of the dual polytope")));
    }
    // affine in V, so the minimum over P is attained at a vertex
    let bound = AffineFn::new(
        xi.iter().zip(tau).map(|(a, t)| n as f64 * a - t).collect(),
        n as f64,
    );
    let per_vertex: Vec<Value> = p
        .vertices_f64()
        .iter()
        .map(|v| json!({"vertex": v, "margin": bound.eval(v)}))
        .collect();
    let (margin, at) = p.min_affine(&bound);
    Ok(ObstructionReport::new(ReportKind::Lichnerowicz, margin > 0.0, margin)
        .with("n", n)
        .with("tau", tau)
        .with("xi", xi)
        .with("argmin_vertex", at)
        .with("vertex_margins", per_vertex))
}

/// Equality tolerance of the Fujita bound.
pub const FUJITA_TOL: f64 = 1e-10;

/// `((n+1) / m_v)^n - n! vol(P)` with `v` rescaled so that `int_P v = vol(P)`
/// and `m_v` its minimum over P.
pub fn fujita_check(p: &Polytope, v: &Weight, cfg: &IntegrationConfig) -> Result<ObstructionReport> {
    let n = p.dim();
    let mass = integrate_weight(p, v, 0, cfg)?.mass;
    let vol = p.volume_f64();
    let scale = vol / mass;
    let min = weights::minimum_on(v, p)?;
    let m_v = scale * min.value;
    let bound = ((n as f64 + 1.0) / m_v).powi(n as i32);
    let c1n = factorial(n) * vol;
    let margin = bound - c1n;
    Ok(ObstructionReport::new(ReportKind::Fujita, margin >= -FUJITA_TOL, margin)
        .with("c1n", c1n)
        .with("m_v", m_v)
        .with("argmin", min.point)
        .with("bound", bound)
        .with("normalization", scale))
}

/// `lambda_0 = weight_gap(v0, v1)` against a user-supplied slope `lambda_cap`.
pub fn coercivity_radius(
    v0: &Weight,
    v1: &Weight,
    p: &Polytope,
    lambda_cap: f64,
    cfg: &IntegrationConfig,
) -> Result<ObstructionReport> {
    if !(lambda_cap > 0.0) {
        return Err(Error::InvalidInput(format!("the slope must be positive, got {lambda_cap}")));
    }
    let lambda0 = weights::weight_gap(v0, v1, p, cfg)?;
    let fut = futaki_with(p, v1, cfg)?;
    let margin = lambda_cap - lambda0;
    Ok(ObstructionReport::new(ReportKind::CoercivityRadius, lambda0 < lambda_cap, margin)
        .with("lambda0", lambda0)
        .with("slope_input", lambda_cap)
        .with("slope_source", "user supplied; never estimated")
        .with("new_slope", margin)
        .with("futaki_v1", &fut)
        .with("futaki_v1_norm", norm(&fut)))
}

/// `tol - |Fut_v|`; a vanishing Futaki vector predicts existence of a
/// `v`-soliton in the toric setting.
pub fn futaki_vanishing_report(p: &Polytope, v: &Weight, tol: f64, cfg: &IntegrationConfig) -> Result<ObstructionReport> {
    let fut = futaki_with(p, v, cfg)?;
    let r = norm(&fut);
    let margin = tol - r;
    let vanishes = margin >= 0.0;
    Ok(ObstructionReport::new(ReportKind::FutakiVanishing, vanishes, margin)
        .with("futaki", &fut)
        .with("norm", r)
        .with("tolerance", tol)
        .with("existence_predicted", vanishes))
}

/// Pairing helper for callers that only need `Fut_v(zeta)`.
pub fn futaki_value(p: &Polytope, v: &Weight, zeta: &[f64], cfg: &IntegrationConfig) -> Result<f64> {
    Ok(dot(&futaki_with(p, v, cfg)?, zeta))
}
