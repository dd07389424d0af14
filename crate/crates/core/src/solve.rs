//! Damped Newton minimization over open polytopal domains, and the named
//! critical points built on it.
//!
//! Iterates always stay strictly inside the domain: a step that would leave
//! it is halved until it does not. Each named solver finishes by recomputing
//! its defining Futaki residual with an independent integration route
//! (positive-weight cubature at twice the degree) for dimensions up to
//! [`SolverConfig::verify_max_dim`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{futaki_with, ConvexFunctional, FunctionalKind};
use crate::integrate::IntegrationConfig;
use crate::polytope::Polytope;

/// Largest `N` used by [`xi_n`]; larger requests are clamped.
pub const MAX_N: f64 = 65536.0;

/// Extra Newton steps taken after the gradient tolerance is met.
const POLISH_STEPS: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grad_tol: f64,
    pub max_iter: usize,
    pub shrink: f64,
    pub armijo: f64,
    pub domain_margin: f64,
    pub integration: IntegrationConfig,
    /// Re-verify residuals with the independent route up to this dimension.
    pub verify_max_dim: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grad_tol: 1e-10,
            max_iter: 200,
            shrink: 0.5,
            armijo: 1e-4,
            domain_margin: 1e-9,
            integration: IntegrationConfig::default(),
            verify_max_dim: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub point: Vec<f64>,
    pub value: f64,
    pub gradient_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub minimizer: Vec<f64>,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    /// Ratio of extreme Hessian eigenvalues at the last iterate.
    pub hessian_condition: f64,
    pub trace: Vec<TraceEntry>,
    pub converged: bool,
    /// A singular Hessian was regularized at some iterate.
    pub regularized: bool,
    /// Norm of the defining Futaki vector at the minimizer.
    pub residual: Option<f64>,
    /// Whether `residual` came from the independent verification route.
    pub residual_verified: bool,
    pub notes: Vec<String>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn condition(h: &DMatrix<f64>) -> f64 {
    let eig = SymmetricEigen::new(h.clone());
    let max = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Newton direction, regularizing `H` by `1e-12 tr(H) I` when it is not
/// positive definite. Returns `(direction, regularized)`.
fn newton_direction(h: &DMatrix<f64>, g: &DVector<f64>) -> (DVector<f64>, bool) {
    if let Some(ch) = h.clone().cholesky() {
        return (-ch.solve(g), false);
    }
    let n = h.nrows();
    let shift = 1e-12 * h.trace().abs().max(f64::MIN_POSITIVE);
    let mut reg = h.clone();
    for k in 0..n {
        reg[(k, k)] += shift;
    }
    if let Some(ch) = reg.clone().cholesky() {
        return (-ch.solve(g), true);
    }
    // indefinite beyond the shift: fall back to steepest descent
    (-g.clone(), true)
}

pub fn newton_minimize(f: &ConvexFunctional<'_>, start: &[f64], cfg: &SolverConfig) -> Result<SolveReport> {
    let f = f.clone().with_domain_margin(cfg.domain_margin);
    if !f.in_domain(start) {
        return Err(Error::DomainViolation(format!("start point {start:?} is not strictly feasible")));
    }
    let n = start.len();
    let mut x = start.to_vec();
    let mut value = f.value(&x)?;
    let mut trace = Vec::new();
    let mut regularized = false;
    let mut hessian_condition = f64::NAN;
    let mut converged = false;
    let mut iterations = 0;
    let mut gnorm;

    loop {
        let grad = f.gradient(&x)?;
        gnorm = norm(&grad);
        trace.push(TraceEntry {
            point: x.clone(),
            value,
            gradient_norm: gnorm,
        });
        if gnorm <= cfg.grad_tol {
            converged = true;
        }
        if converged || iterations >= cfg.max_iter {
            if hessian_condition.is_nan() {
                let h = f.hessian(&x)?;
                hessian_condition = condition(&DMatrix::from_fn(n, n, |i, j| h[i][j]));
            }
            break;
        }
        let h = f.hessian(&x)?;
        let hm = DMatrix::from_fn(n, n, |i, j| h[i][j]);
        hessian_condition = condition(&hm);
        let g = DVector::from_vec(grad);
        let (d, reg) = newton_direction(&hm, &g);
        regularized |= reg;
        let slope = g.dot(&d);
        // squared Newton decrement; below the accuracy of the value (rounding,
        // or the cubature tolerance) the Armijo test cannot discriminate and
        // the full step is taken
        let noise = cfg.integration.rel_tol.max(1e-13);
        let tiny = -slope <= noise * value.abs().max(1e-300);

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..80 {
            let xt: Vec<f64> = x.iter().zip(d.iter()).map(|(a, b)| a + t * b).collect();
            if f.in_domain(&xt) {
                let vt = f.value(&xt)?;
                if tiny || vt <= value + cfg.armijo * t * slope {
                    x = xt;
                    value = vt;
                    accepted = true;
                    break;
                }
            }
            t *= cfg.shrink;
        }
        iterations += 1;
        if !accepted {
            break;
        }
    }

    // polish: full Newton steps kept only while they shrink the gradient
    if converged {
        for _ in 0..POLISH_STEPS {
            if gnorm == 0.0 {
                break;
            }
            let h = f.hessian(&x)?;
            let hm = DMatrix::from_fn(n, n, |i, j| h[i][j]);
            let g = DVector::from_vec(f.gradient(&x)?);
            let (d, _) = newton_direction(&hm, &g);
            let xt: Vec<f64> = x.iter().zip(d.iter()).map(|(a, b)| a + b).collect();
            if !f.in_domain(&xt) {
                break;
            }
            let gt = norm(&f.gradient(&xt)?);
            if !(gt < gnorm) {
                break;
            }
            x = xt;
            value = f.value(&x)?;
            gnorm = gt;
            iterations += 1;
            trace.push(TraceEntry {
                point: x.clone(),
                value,
                gradient_norm: gnorm,
            });
        }
    }

    let report = SolveReport {
        minimizer: x,
        value,
        gradient_norm: gnorm,
        iterations,
        hessian_condition,
        trace,
        converged,
        regularized,
        residual: None,
        residual_verified: false,
        notes: Vec::new(),
    };
    if converged {
        Ok(report)
    } else {
        Err(Error::NotConverged(Box::new(report)))
    }
}

/// Minimizes `f` from the origin and attaches the defining residual.
fn solve_named(f: ConvexFunctional<'_>, cfg: &SolverConfig, notes: Vec<String>) -> Result<SolveReport> {
    let f = f.with_integration(cfg.integration.clone());
    let start = vec![0.0; f.dim()];
    let mut report = newton_minimize(&f, &start, cfg)?;
    report.notes = notes;
    let w = f.residual_weight(&report.minimizer);
    let p = f.polytope;
    let (route, verified) = if p.dim() <= cfg.verify_max_dim {
        (cfg.integration.verification(), true)
    } else {
        (cfg.integration.clone(), false)
    };
    report.residual = Some(norm(&futaki_with(p, &w, &route)?));
    report.residual_verified = verified;
    Ok(report)
}

fn require_canonical(p: &Polytope) -> Result<()> {
    if p.is_canonical() {
        Ok(())
    } else {
        Err(Error::NotCanonical("the solver needs a canonical polytope".into()))
    }
}

/// The unique `tau` with `int_P x e^{<tau, x>} dx = 0`.
pub fn tian_zhu_field(p: &Polytope, cfg: &SolverConfig) -> Result<SolveReport> {
    require_canonical(p)?;
    solve_named(ConvexFunctional::new(FunctionalKind::TianZhu, p)?, cfg, Vec::new())
}

/// The minimizer of `V_N` over `-N` times the open dual polytope. `N` above
/// [`MAX_N`] is clamped, which is noted in the report.
pub fn xi_n(p: &Polytope, n: f64, cfg: &SolverConfig) -> Result<SolveReport> {
    require_canonical(p)?;
    if !(n > 1.0) {
        return Err(Error::InvalidInput(format!("N must exceed 1, got {n}")));
    }
    let mut notes = Vec::new();
    let big = if n > MAX_N {
        notes.push(format!("N = {n} clamped to {MAX_N}"));
        MAX_N
    } else {
        n
    };
    solve_named(ConvexFunctional::new(FunctionalKind::VN { n: big }, p)?, cfg, notes)
}

/// The minimizer of `int_P ell_xi^{-(n+1)} dx` over the open dual polytope.
pub fn msy_reeb(p: &Polytope, cfg: &SolverConfig) -> Result<SolveReport> {
    require_canonical(p)?;
    solve_named(ConvexFunctional::new(FunctionalKind::Msy, p)?, cfg, Vec::new())
}

/// The unique `a` making the Futaki invariant of
/// `e^{<a, x> / ell_xi} ell_xi^{-(n+2)}` vanish.
pub fn soliton_pair(p: &Polytope, xi: &[f64], cfg: &SolverConfig) -> Result<SolveReport> {
    require_canonical(p)?;
    if xi.len() != p.dim() {
        return Err(Error::InvalidInput("xi has the wrong dimension".into()));
    }
    if !(p.dual_margin(xi) > cfg.domain_margin) {
        return Err(Error::DomainViolation(format!("xi = {xi:?} is not in the interior of the dual polytope")));
    }
    solve_named(
        ConvexFunctional::new(FunctionalKind::SasakiSoliton { xi: xi.to_vec() }, p)?,
        cfg,
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn symmetric_polytopes_have_zero_fields() {
        let cfg = SolverConfig::default();
        for name in ["p1", "p2", "p1xp1"] {
            let p = catalog::get(name).unwrap();
            let r = tian_zhu_field(&p, &cfg).unwrap();
            assert!(norm(&r.minimizer) < 1e-10, "{name}");
            assert!(r.iterations <= 1);
            assert!(r.residual.unwrap() < 1e-10);
        }
    }

    #[test]
    fn tian_zhu_on_a_noncentral_interval() {
        // oracle: tau solving int_{-1}^{2} x e^{tau x} dx = 0 (scipy brentq)
        use crate::polytope::Facet;
        let p = Polytope::from_facets(1, vec![Facet::from_ints(&[1], 1), Facet::from_ints(&[-1], 2)], false).unwrap();
        let f = ConvexFunctional::new(FunctionalKind::TianZhu, &p).unwrap();
        let r = newton_minimize(&f, &[0.0], &SolverConfig::default()).unwrap();
        let tau = r.minimizer[0];
        // check the defining equation in closed form
        let prim = |x: f64| (x / tau - 1.0 / (tau * tau)) * (tau * x).exp();
        assert!((prim(2.0) - prim(-1.0)).abs() < 1e-10);
        assert!(tau < 0.0);
    }

    #[test]
    fn msy_iterates_stay_feasible_from_near_the_boundary() {
        let p = catalog::get("bl1p2").unwrap();
        let f = ConvexFunctional::new(FunctionalKind::Msy, &p).unwrap();
        let start = [0.45, 0.45];
        assert!(f.in_domain(&start));
        let r = newton_minimize(&f, &start, &SolverConfig::default()).unwrap();
        assert!(r.trace.iter().all(|t| p.dual_margin(&t.point) > 0.0));
        let from_origin = msy_reeb(&p, &SolverConfig::default()).unwrap();
        assert!(norm(&r.minimizer.iter().zip(&from_origin.minimizer).map(|(a, b)| a - b).collect::<Vec<_>>()) < 1e-8);
    }

    #[test]
    fn infeasible_inputs_are_rejected() {
        let p = catalog::get("p1").unwrap();
        let cfg = SolverConfig::default();
        assert!(matches!(soliton_pair(&p, &[1.0], &cfg), Err(Error::DomainViolation(_))));
        assert!(xi_n(&p, 1.0, &cfg).is_err());
        let r = xi_n(&p, 1e7, &cfg).unwrap();
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn non_convergence_carries_the_report() {
        let p = catalog::get("bl1p2").unwrap();
        let cfg = SolverConfig {
            max_iter: 1,
            grad_tol: 1e-30,
            ..SolverConfig::default()
        };
        match tian_zhu_field(&p, &cfg) {
            Err(Error::NotConverged(r)) => {
                assert!(!r.converged);
                assert_eq!(r.iterations, 1);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }
}
