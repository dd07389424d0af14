//! Reeb field of the canonical cone over a product X x P^k obtained from
//! the minimizer xi_N of V_N on X.
//!
//!     cargo run --release --example product_cone

use soliton_polytope::invariants::product_cy_pipeline;
use soliton_polytope::{catalog, SolverConfig};

fn main() -> soliton_polytope::Result<()> {
    let cfg = SolverConfig::default();
    let p = catalog::get("bl1p2")?;
    for k in [0, 1, 2] {
        let r = product_cy_pipeline(&p, k, &cfg)?;
        println!(
            "k = {k}: N = {}  xi_Z = {}  residual {:.1e}  reeb error {:.1e}  passed {}",
            r.details["N"],
            r.details["xi_Z"],
            r.details["residual_b"].as_f64().unwrap_or(f64::NAN),
            r.details["reeb_error"].as_f64().unwrap_or(f64::NAN),
            r.passed
        );
    }
    Ok(())
}
