//! Convex functionals on the Lie algebra of the torus and their derivatives.
//!
//! Each functional is an integral over P of a weight depending on the point
//! `y` at which it is evaluated. Differentiating under the integral sign
//! turns value, gradient and Hessian into the mass, first and second moments
//! of three related weights, listed in [`ConvexFunctional::weights`]. With
//! `n = dim P`, `ell = <xi, x> + 1` and `q = 1 - <x, xi> / N`:
//!
//! | functional        | variable | value weight             | gradient weight                | Hessian weight                    |
//! |-------------------|----------|--------------------------|--------------------------------|-----------------------------------|
//! | `TianZhu`         | zeta     | `e^<zeta,x>`             | `e^<zeta,x>`                   | `e^<zeta,x>`                      |
//! | `VN { n: N }`     | xi       | `q^(1-N)`                | `(N-1)/N * q^(-N)`             | `(N-1)/N * q^(-N-1)`              |
//! | `Msy`             | xi       | `ell^-(n+1)`             | `-(n+1) * ell^-(n+2)`          | `(n+1)(n+2) * ell^-(n+3)`         |
//! | `SasakiSoliton`   | a        | `e^(<a,x>/ell) ell^-(n+1)` | `e^(<a,x>/ell) ell^-(n+2)`   | `e^(<a,x>/ell) ell^-(n+3)`        |
//!
//! The gradient is the first moment of the gradient weight and the Hessian
//! the second moment of the Hessian weight.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrate::{integrate_weight, IntegrationConfig};
use crate::polytope::{dot, AffineFn, Polytope};
use crate::weights::Weight;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionalKind {
    TianZhu,
    #[serde(rename = "vn")]
    VN {
        #[serde(rename = "N")]
        n: f64,
    },
    Msy,
    SasakiSoliton {
        xi: Vec<f64>,
    },
}

/// Value, gradient and Hessian at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<Vec<f64>>,
}

#[derive(Clone, Debug)]
pub struct ConvexFunctional<'a> {
    pub kind: FunctionalKind,
    pub polytope: &'a Polytope,
    pub integration: IntegrationConfig,
    /// Points closer than this to the domain boundary count as outside.
    pub domain_margin: f64,
}

/// `(weight, factor)`: the integrand is `factor * weight`.
type Scaled = (Weight, f64);

impl<'a> ConvexFunctional<'a> {
    pub fn new(kind: FunctionalKind, polytope: &'a Polytope) -> Result<Self> {
        match &kind {
            FunctionalKind::VN { n } if !(*n > 1.0 && n.is_finite()) => {
                return Err(Error::InvalidInput(format!("V_N needs N > 1, got {n}")));
            }
            FunctionalKind::SasakiSoliton { xi } => {
                if xi.len() != polytope.dim() {
                    return Err(Error::InvalidInput("xi has the wrong dimension".into()));
                }
                if !polytope.dual_contains(xi) {
                    return Err(Error::DomainViolation(format!("xi = {xi:?} is not in the interior of the dual polytope")));
                }
            }
            _ => {}
        }
        Ok(Self {
            kind,
            polytope,
            integration: IntegrationConfig::default(),
            domain_margin: 1e-9,
        })
    }

    pub fn with_integration(mut self, cfg: IntegrationConfig) -> Self {
        self.integration = cfg;
        self
    }

    pub fn with_domain_margin(mut self, margin: f64) -> Self {
        self.domain_margin = margin;
        self
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Smallest value over P of the affine factor that must stay positive,
    /// or `+inf` when the domain is all of the space.
    pub fn domain_slack(&self, y: &[f64]) -> f64 {
        match &self.kind {
            FunctionalKind::TianZhu | FunctionalKind::SasakiSoliton { .. } => f64::INFINITY,
            FunctionalKind::VN { n } => {
                let ell = AffineFn::new(y.iter().map(|a| -a / n).collect(), 1.0);
                self.polytope.min_affine(&ell).0
            }
            FunctionalKind::Msy => self.polytope.dual_margin(y),
        }
    }

    pub fn in_domain(&self, y: &[f64]) -> bool {
        y.len() == self.dim() && y.iter().all(|c| c.is_finite()) && self.domain_slack(y) > self.domain_margin
    }

    /// The three weights of the table in the module docs.
    pub fn weights(&self, y: &[f64]) -> [Scaled; 3] {
        let n = self.dim() as f64;
        match &self.kind {
            FunctionalKind::TianZhu => {
                let w = Weight::exp_linear(y);
                [(w.clone(), 1.0), (w.clone(), 1.0), (w, 1.0)]
            }
            FunctionalKind::VN { n: big } => {
                let slope: Vec<f64> = y.iter().map(|a| -a / big).collect();
                let q = |p: f64| Weight::PowAffine {
                    xi: slope.clone(),
                    constant: 1.0,
                    p,
                };
                let c = (big - 1.0) / big;
                [(q(1.0 - big), 1.0), (Weight::qn(y, *big), c), (q(-big - 1.0), c)]
            }
            FunctionalKind::Msy => [
                (Weight::pow_dual(y, -(n + 1.0)), 1.0),
                (Weight::pow_dual(y, -(n + 2.0)), -(n + 1.0)),
                (Weight::pow_dual(y, -(n + 3.0)), (n + 1.0) * (n + 2.0)),
            ],
            FunctionalKind::SasakiSoliton { xi } => [
                (Weight::tkrs(xi, y, -(n + 1.0)), 1.0),
                (Weight::tkrs(xi, y, -(n + 2.0)), 1.0),
                (Weight::tkrs(xi, y, -(n + 3.0)), 1.0),
            ],
        }
    }

    fn check(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "point has dimension {}, expected {}",
                y.len(),
                self.dim()
            )));
        }
        if !self.in_domain(y) {
            return Err(Error::DomainViolation(format!("{y:?} is outside the open domain of {:?}", self.kind)));
        }
        Ok(())
    }

    pub fn value(&self, y: &[f64]) -> Result<f64> {
        self.check(y)?;
        let [(w, c), _, _] = self.weights(y);
        Ok(c * integrate_weight(self.polytope, &w, 0, &self.integration)?.mass)
    }

    pub fn gradient(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check(y)?;
        let [_, (w, c), _] = self.weights(y);
        let m = integrate_weight(self.polytope, &w, 1, &self.integration)?;
        Ok(m.first.iter().map(|f| c * f).collect())
    }

    pub fn hessian(&self, y: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.check(y)?;
        let [_, _, (w, c)] = self.weights(y);
        let m = integrate_weight(self.polytope, &w, 2, &self.integration)?;
        Ok(m.second
            .iter()
            .map(|row| row.iter().map(|s| c * s).collect())
            .collect())
    }

    pub fn evaluate(&self, y: &[f64]) -> Result<Evaluation> {
        Ok(Evaluation {
            value: self.value(y)?,
            gradient: self.gradient(y)?,
            hessian: self.hessian(y)?,
        })
    }

    /// The weight whose Futaki invariant vanishes exactly at the critical point.
    pub fn residual_weight(&self, y: &[f64]) -> Weight {
        let [_, (w, _), _] = self.weights(y);
        w
    }
}

pub fn evaluate_functional(f: &ConvexFunctional<'_>, point: &[f64]) -> Result<Evaluation> {
    f.evaluate(point)
}

/// `int_P x v dx`; pairing with `zeta` gives the Futaki invariant.
pub fn futaki(p: &Polytope, v: &Weight) -> Result<Vec<f64>> {
    futaki_with(p, v, &IntegrationConfig::default())
}

pub fn futaki_with(p: &Polytope, v: &Weight, cfg: &IntegrationConfig) -> Result<Vec<f64>> {
    Ok(integrate_weight(p, v, 1, cfg)?.first)
}

/// `Fut_v(zeta)`.
pub fn futaki_pairing(p: &Polytope, v: &Weight, zeta: &[f64]) -> Result<f64> {
    Ok(dot(&futaki(p, v)?, zeta))
}

pub fn weighted_volume(p: &Polytope, v: &Weight) -> Result<f64> {
    crate::integrate::weighted_volume(p, v, &IntegrationConfig::default())
}
