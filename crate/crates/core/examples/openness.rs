//! Openness of soliton weights: the gap between the soliton weight and
//! q_N at xi_N, compared against a user-supplied coercivity slope.
//!
//!     cargo run --release --example openness

use soliton_polytope::invariants::coercivity_radius;
use soliton_polytope::solve::{tian_zhu_field, xi_n};
use soliton_polytope::weights::weight_gap;
use soliton_polytope::{catalog, SolverConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    let p = catalog::get("bl1p2")?;
    let cfg = SolverConfig::default();
    let v0 = Weight::exp_linear(&tian_zhu_field(&p, &cfg)?.minimizer);
    let mut last = None;
    for n in [8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0] {
        let v1 = Weight::qn(&xi_n(&p, n, &cfg)?.minimizer, n);
        let gap = weight_gap(&v0, &v1, &p, &cfg.integration)?;
        println!("N = {n:5}: lambda_0 = {gap:.4e}");
        last = Some(v1);
    }

    // the slope is an input; it is never estimated
    let v1 = last.expect("nonempty sweep");
    for slope in [0.1, 1e-4] {
        let r = coercivity_radius(&v0, &v1, &p, slope, &cfg.integration)?;
        println!("slope {slope}: passed {} margin {:+.4e}", r.passed, r.margin);
    }
    Ok(())
}
