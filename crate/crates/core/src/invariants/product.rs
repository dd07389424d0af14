//! Product construction: a minimizer of `V_N` on P gives the Reeb field of
//! the canonical cone over `X x P^k` when `N = n + k + 2`.

use super::{norm, ObstructionReport, ReportKind};
use crate::catalog;
use crate::error::{Error, Result};
use crate::functionals::futaki_with;
use crate::polytope::Polytope;
use crate::solve::{msy_reeb, xi_n, SolverConfig};
use crate::weights::Weight;

/// Futaki residual tolerance for the candidate Reeb field.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Distance tolerance between the candidate and the computed Reeb field.
pub const REEB_TOL: f64 = 1e-8;

/// Runs the three sub-checks; failures of sub-checks are reported, not raised.
pub fn product_cy_pipeline(p: &Polytope, k: usize, cfg: &SolverConfig) -> Result<ObstructionReport> {
    if !p.is_canonical() {
        return Err(Error::NotCanonical("the product construction needs a canonical polytope".into()));
    }
    let n = p.dim();
    let big_n = (n + k + 2) as f64;
    let xi_report = xi_n(p, big_n, cfg)?;
    let xi_big = xi_report.minimizer.clone();

    let pz = if k == 0 { p.clone() } else { p.product(&catalog::projective_space(k)?)? };
    let dim_z = pz.dim();
    let mut xi_z: Vec<f64> = xi_big.iter().map(|a| -a / big_n).collect();
    xi_z.resize(dim_z, 0.0);

    // (a) the candidate lies in the open dual polytope
    let dual_margin = pz.dual_margin(&xi_z);
    let a_ok = dual_margin > 0.0;

    // (b) its Futaki residual for ell^{-(dim Z + 2)} vanishes
    let (residual_b, b_ok) = if a_ok {
        let w = Weight::pow_dual(&xi_z, -(dim_z as f64 + 2.0));
        let route = if dim_z <= cfg.verify_max_dim {
            cfg.integration.verification()
        } else {
            cfg.integration.clone()
        };
        let r = norm(&futaki_with(&pz, &w, &route)?);
        (r, r <= RESIDUAL_TOL)
    } else {
        (f64::INFINITY, false)
    };

    // (c) it agrees with the volume minimizer of the product
    let (reeb, reeb_err, c_ok, c_note) = match msy_reeb(&pz, cfg) {
        Ok(r) => {
            let d: Vec<f64> = r.minimizer.iter().zip(&xi_z).map(|(a, b)| a - b).collect();
            let e = norm(&d);
            (Some(r.minimizer), e, e <= REEB_TOL, None)
        }
        Err(Error::NotConverged(r)) => (Some(r.minimizer.clone()), f64::INFINITY, false, Some("Reeb solve did not converge")),
        Err(e) => return Err(e),
    };

    let margin = dual_margin.min(RESIDUAL_TOL - residual_b).min(REEB_TOL - reeb_err);
    let simplex_vol = if k == 0 {
        1.0
    } else {
        catalog::projective_space(k)?.volume_f64()
    };
    Ok(ObstructionReport::new(ReportKind::ProductCY, a_ok && b_ok && c_ok, margin)
        .with("k", k)
        .with("N", big_n)
        .with("xi_N", &xi_big)
        .with("xi_N_residual", xi_report.residual)
        .with("xi_Z", &xi_z)
        .with("dim_Z", dim_z)
        .with("dual_margin", dual_margin)
        .with("check_a_dual_contains", a_ok)
        .with("residual_b", residual_b)
        .with("check_b_futaki", b_ok)
        .with("residual_bound_b", xi_report.residual.map(|r| r * simplex_vol))
        .with("reeb", reeb)
        .with("reeb_error", reeb_err)
        .with("check_c_reeb", c_ok)
        .with("note", c_note))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_factor_gives_zero_reeb_field() {
        let r = product_cy_pipeline(&catalog::get("p1").unwrap(), 1, &SolverConfig::default()).unwrap();
        assert!(r.passed, "{}", r.to_json());
        let xi_z: Vec<f64> = serde_json::from_value(r.details["xi_Z"].clone()).unwrap();
        assert!(norm(&xi_z) < 1e-12);
    }
}
