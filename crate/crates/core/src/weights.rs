//! Symbolic weight functions on a momentum polytope.
//!
//! Every weight is a closed-form positive function of `x` built from affine
//! and exponential pieces, so it can be evaluated, differentiated, serialized,
//! and (for the single-linear-form families) integrated in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremum;
use crate::integrate::{self, IntegrationConfig};
use crate::polytope::{dot, AffineFn, Polytope};

fn one() -> f64 {
    1.0
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

/// JSON form: `{"kind": "const" | "exp_linear" | "pow_affine" | "tkrs" | "qn" | "scaled", ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Weight {
    /// `c > 0`.
    #[serde(rename = "const")]
    Constant { c: f64 },
    /// `exp(<tau, x>)`.
    #[serde(rename = "exp_linear")]
    ExpLinear { tau: Vec<f64> },
    /// `(<xi, x> + constant)^p`.
    #[serde(rename = "pow_affine")]
    PowAffine {
        xi: Vec<f64>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        constant: f64,
        p: f64,
    },
    /// `exp(<tau, x> / ell_xi(x)) * ell_xi(x)^p` with `ell_xi = <xi, x> + 1`.
    #[serde(rename = "tkrs")]
    Tkrs { xi: Vec<f64>, tau: Vec<f64>, p: f64 },
    /// `(1 - <x, xi> / N)^(-N)`.
    #[serde(rename = "qn")]
    Qn {
        xi: Vec<f64>,
        #[serde(rename = "N")]
        n: f64,
    },
    /// `lambda * inner`.
    #[serde(rename = "scaled")]
    Scaled { lambda: f64, inner: Box<Weight> },
}

/// `coef * h(<slope, x> + constant)` for one of the profiles `h`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct LinearProfile {
    pub coef: f64,
    pub shape: Shape,
    pub slope: Vec<f64>,
    pub constant: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Shape {
    Const,
    Exp,
    /// `t^p` on `t > 0`.
    Power(f64),
}

impl Weight {
    pub fn constant(c: f64) -> Self {
        Weight::Constant { c }
    }

    pub fn exp_linear(tau: &[f64]) -> Self {
        Weight::ExpLinear { tau: tau.to_vec() }
    }

    /// `ell(x)^p` for an arbitrary affine `ell`.
    pub fn pow_affine(ell: &AffineFn, p: f64) -> Self {
        Weight::PowAffine {
            xi: ell.slope.clone(),
            constant: ell.constant,
            p,
        }
    }

    /// `ell_xi(x)^p` with `ell_xi = <xi, x> + 1`.
    pub fn pow_dual(xi: &[f64], p: f64) -> Self {
        Self::pow_affine(&AffineFn::dual(xi), p)
    }

    pub fn tkrs(xi: &[f64], tau: &[f64], p: f64) -> Self {
        Weight::Tkrs {
            xi: xi.to_vec(),
            tau: tau.to_vec(),
            p,
        }
    }

    pub fn qn(xi: &[f64], n: f64) -> Self {
        Weight::Qn { xi: xi.to_vec(), n }
    }

    pub fn scaled(lambda: f64, inner: Weight) -> Self {
        Weight::Scaled {
            lambda,
            inner: Box::new(inner),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w: Weight = serde_json::from_str(text)?;
        w.validate()?;
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weight JSON is infallible")
    }

    /// Parameter sanity independent of any polytope.
    pub fn validate(&self) -> Result<()> {
        match self {
            Weight::Constant { c } if !(*c > 0.0 && c.is_finite()) => {
                Err(Error::InvalidInput(format!("constant weight must be positive, got {c}")))
            }
            Weight::Qn { n, .. } if !(*n > 0.0 && n.is_finite()) => {
                Err(Error::InvalidInput(format!("N must be positive, got {n}")))
            }
            Weight::Tkrs { xi, tau, .. } if xi.len() != tau.len() => {
                Err(Error::InvalidInput("tkrs: xi and tau differ in length".into()))
            }
            Weight::Scaled { lambda, inner } => {
                if !(*lambda > 0.0 && lambda.is_finite()) {
                    return Err(Error::InvalidInput(format!("scale must be positive, got {lambda}")));
                }
                inner.validate()
            }
            _ => Ok(()),
        }
    }

    /// Dimension of the vector data, `None` for constants.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Weight::Constant { .. } => None,
            Weight::ExpLinear { tau } => Some(tau.len()),
            Weight::PowAffine { xi, .. } | Weight::Tkrs { xi, .. } | Weight::Qn { xi, .. } => Some(xi.len()),
            Weight::Scaled { inner, .. } => inner.dim(),
        }
    }

    /// The affine factor that must stay positive, if any.
    fn affine_factor(&self) -> Option<AffineFn> {
        match self {
            Weight::PowAffine { xi, constant, .. } => Some(AffineFn::new(xi.clone(), *constant)),
            Weight::Tkrs { xi, .. } => Some(AffineFn::dual(xi)),
            Weight::Qn { xi, n } => Some(AffineFn::new(xi.iter().map(|a| -a / n).collect(), 1.0)),
            Weight::Scaled { inner, .. } => inner.affine_factor(),
            _ => None,
        }
    }

    /// `log v(x)`, or `None` where the affine factor is not positive.
    pub fn log_value(&self, x: &[f64]) -> Option<f64> {
        match self {
            Weight::Constant { c } => Some(c.ln()),
            Weight::ExpLinear { tau } => Some(dot(tau, x)),
            Weight::PowAffine { xi, constant, p } => {
                let l = constant + dot(xi, x);
                if l > 0.0 {
                    Some(if *p == 0.0 { 0.0 } else { p * l.ln() })
                } else {
                    None
                }
            }
            Weight::Tkrs { xi, tau, p } => {
                let l = 1.0 + dot(xi, x);
                (l > 0.0).then(|| dot(tau, x) / l + p * l.ln())
            }
            Weight::Qn { xi, n } => {
                let u = -dot(xi, x) / n;
                (u > -1.0).then(|| -n * u.ln_1p())
            }
            Weight::Scaled { lambda, inner } => inner.log_value(x).map(|l| l + lambda.ln()),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.log_value(x)
            .map(f64::exp)
            .ok_or_else(|| Error::DomainViolation(format!("weight affine factor is not positive at {x:?}")))
    }

    /// `grad log v(x)`.
    pub fn log_gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Weight::Constant { .. } => vec![0.0; x.len()],
            Weight::ExpLinear { tau } => tau.clone(),
            Weight::PowAffine { xi, constant, p } => {
                let l = constant + dot(xi, x);
                xi.iter().map(|a| p * a / l).collect()
            }
            Weight::Tkrs { xi, tau, p } => {
                let l = 1.0 + dot(xi, x);
                let t = dot(tau, x);
                xi.iter()
                    .zip(tau)
                    .map(|(a, b)| b / l - t * a / (l * l) + p * a / l)
                    .collect()
            }
            Weight::Qn { xi, n } => {
                let q = 1.0 - dot(xi, x) / n;
                xi.iter().map(|a| a / q).collect()
            }
            Weight::Scaled { inner, .. } => inner.log_gradient(x),
        }
    }

    /// Verifies positivity of the affine factor at every vertex (hence on P).
    pub fn check_positive_on(&self, p: &Polytope) -> Result<()> {
        if let Some(d) = self.dim() {
            if d != p.dim() {
                return Err(Error::InvalidInput(format!(
                    "weight has dimension {d}, polytope has dimension {}",
                    p.dim()
                )));
            }
        }
        self.validate()?;
        if let Some(ell) = self.affine_factor() {
            if !p.is_empty() {
                let (m, at) = p.min_affine(&ell);
                if !(m > 0.0) {
                    return Err(Error::DomainViolation(format!(
                        "weight affine factor reaches {m:.6e} at vertex {at:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn linear_profile(&self) -> Option<LinearProfile> {
        match self {
            Weight::Constant { c } => Some(LinearProfile {
                coef: *c,
                shape: Shape::Const,
                slope: Vec::new(),
                constant: 0.0,
            }),
            Weight::ExpLinear { tau } => Some(LinearProfile {
                coef: 1.0,
                shape: Shape::Exp,
                slope: tau.clone(),
                constant: 0.0,
            }),
            Weight::PowAffine { xi, constant, p } => Some(LinearProfile {
                coef: 1.0,
                shape: if *p == 0.0 { Shape::Const } else { Shape::Power(*p) },
                slope: xi.clone(),
                constant: *constant,
            }),
            Weight::Qn { xi, n } => Some(LinearProfile {
                coef: 1.0,
                shape: Shape::Power(-n),
                slope: xi.iter().map(|a| -a / n).collect(),
                constant: 1.0,
            }),
            Weight::Tkrs { .. } => None,
            Weight::Scaled { lambda, inner } => inner.linear_profile().map(|mut lp| {
                lp.coef *= lambda;
                lp
            }),
        }
    }

    /// `v / int_P v dx`.
    pub fn normalize(&self, p: &Polytope, cfg: &IntegrationConfig) -> Result<NormalizedWeight> {
        let m = integrate::integrate_weight(p, self, 0, cfg)?;
        if !(m.mass > 0.0 && m.mass.is_finite()) {
            return Err(Error::IntegrationFailure(format!("weight mass {} is not positive", m.mass)));
        }
        Ok(NormalizedWeight {
            inner: self.clone(),
            norm_constant: m.mass,
        })
    }
}

/// A weight divided by its integral over the polytope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedWeight {
    pub inner: Weight,
    pub norm_constant: f64,
}

impl NormalizedWeight {
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok(self.inner.evaluate(x)? / self.norm_constant)
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.inner.log_value(x).map_or(f64::NAN, |l| l.exp() / self.norm_constant)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let v = self.value(x);
        self.inner.log_gradient(x).into_iter().map(|g| g * v).collect()
    }
}

/// `max(0, -inf_P (v1 / int v1 - v0 / int v0))`.
pub fn weight_gap(v0: &Weight, v1: &Weight, p: &Polytope, cfg: &IntegrationConfig) -> Result<f64> {
    let n0 = v0.normalize(p, cfg)?;
    let n1 = v1.normalize(p, cfg)?;
    let inf = extremum::minimize(
        p,
        |x| n1.value(x) - n0.value(x),
        |x| {
            let a = n1.gradient(x);
            let b = n0.gradient(x);
            a.iter().zip(&b).map(|(s, t)| s - t).collect()
        },
    )?;
    Ok((-inf.value).max(0.0))
}

/// `sup_P |a - b|`, unnormalized.
pub fn sup_distance(a: &Weight, b: &Weight, p: &Polytope) -> Result<f64> {
    a.check_positive_on(p)?;
    b.check_positive_on(p)?;
    let diff = |x: &[f64]| a.log_value(x).unwrap_or(f64::NAN).exp() - b.log_value(x).unwrap_or(f64::NAN).exp();
    let grad = |x: &[f64], sign: f64| -> Vec<f64> {
        let va = a.log_value(x).unwrap_or(f64::NAN).exp();
        let vb = b.log_value(x).unwrap_or(f64::NAN).exp();
        a.log_gradient(x)
            .iter()
            .zip(b.log_gradient(x))
            .map(|(ga, gb)| sign * (ga * va - gb * vb))
            .collect()
    };
    let lo = extremum::minimize(p, diff, |x| grad(x, 1.0))?;
    let hi = extremum::minimize(p, |x| -diff(x), |x| grad(x, -1.0))?;
    Ok(lo.value.abs().max(hi.value.abs()))
}

/// Minimum of `v` over P with its location.
pub fn minimum_on(v: &Weight, p: &Polytope) -> Result<extremum::Extremum> {
    v.check_positive_on(p)?;
    extremum::minimize(
        p,
        |x| v.log_value(x).map_or(f64::NAN, f64::exp),
        |x| {
            let val = v.log_value(x).map_or(f64::NAN, f64::exp);
            v.log_gradient(x).into_iter().map(|g| g * val).collect()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn closed_form_evaluations() {
        assert_eq!(Weight::exp_linear(&[0.0, 0.0]).evaluate(&[0.3, -0.7]).unwrap(), 1.0);
        assert_eq!(Weight::pow_dual(&[0.0], -4.0).evaluate(&[0.5]).unwrap(), 1.0);
        let q = Weight::qn(&[1.0], 2.0).evaluate(&[1.0]).unwrap();
        assert!((q - 4.0).abs() < 1e-14);
    }

    #[test]
    fn domain_violation_outside_positivity() {
        assert!(matches!(
            Weight::pow_dual(&[1.0], -2.0).evaluate(&[-1.0]),
            Err(Error::DomainViolation(_))
        ));
        let p1 = catalog::get("p1").unwrap();
        assert!(Weight::pow_dual(&[1.0], -2.0).check_positive_on(&p1).is_err());
        assert!(Weight::pow_dual(&[0.5], -2.0).check_positive_on(&p1).is_ok());
    }

    #[test]
    fn json_descriptors() {
        let w = Weight::from_json(r#"{"kind":"qn","xi":[0.1,0.2],"N":64}"#).unwrap();
        assert_eq!(w, Weight::qn(&[0.1, 0.2], 64.0));
        let w = Weight::from_json(r#"{"kind":"pow_affine","xi":[0.5],"p":-4.0}"#).unwrap();
        assert_eq!(w, Weight::pow_dual(&[0.5], -4.0));
        assert_eq!(w.to_json(), r#"{"kind":"pow_affine","xi":[0.5],"p":-4.0}"#);
        assert!(Weight::from_json(r#"{"kind":"const","c":-1.0}"#).is_err());
        let s = Weight::scaled(2.0, Weight::constant(1.0));
        assert_eq!(Weight::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn log_gradient_matches_finite_differences() {
        let x = [0.2, -0.3];
        let cases = [
            Weight::exp_linear(&[0.4, -1.0]),
            Weight::pow_dual(&[0.1, 0.2], -4.0),
            Weight::tkrs(&[0.1, -0.2], &[0.3, 0.5], -4.0),
            Weight::qn(&[0.7, 0.1], 8.0),
        ];
        for w in &cases {
            let g = w.log_gradient(&x);
            for k in 0..2 {
                let mut xp = x;
                let mut xm = x;
                xp[k] += 1e-6;
                xm[k] -= 1e-6;
                let fd = (w.log_value(&xp).unwrap() - w.log_value(&xm).unwrap()) / 2e-6;
                assert!((fd - g[k]).abs() < 1e-8, "{w:?} {k}: {fd} vs {}", g[k]);
            }
        }
    }

    #[test]
    fn gap_is_scale_invariant_and_zero_on_the_diagonal() {
        let p = catalog::get("p1").unwrap();
        let cfg = IntegrationConfig::default();
        let c1 = Weight::constant(1.0);
        assert_eq!(weight_gap(&c1, &c1, &p, &cfg).unwrap(), 0.0);
        assert_eq!(weight_gap(&c1, &Weight::constant(2.0), &p, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn gap_constant_vs_exponential_on_interval() {
        // oracle: v1/int v1 - v0/int v0 = e^x/(e - 1/e) - 1/2 is increasing,
        // so its infimum is at x = -1
        let p = catalog::get("p1").unwrap();
        let cfg = IntegrationConfig::default();
        let gap = weight_gap(&Weight::constant(1.0), &Weight::exp_linear(&[1.0]), &p, &cfg).unwrap();
        let e = 1f64.exp();
        let expected = 0.5 - (1.0 / e) / (e - 1.0 / e);
        assert!((gap - expected).abs() < 1e-12, "{gap} vs {expected}");
    }
}
