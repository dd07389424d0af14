//! Soliton vector fields of every catalog entry, with the independently
//! re-verified Futaki residual.
//!
//!     cargo run --release --example soliton_fields

use soliton_polytope::solve::tian_zhu_field;
use soliton_polytope::{catalog, SolverConfig};

fn main() -> soliton_polytope::Result<()> {
    let cfg = SolverConfig::default();
    for e in catalog::ENTRIES {
        let r = tian_zhu_field(&e.polytope(), &cfg)?;
        println!(
            "{:6} ({:14}) tau = {:+.12?}  iterations {:2}  residual {:.1e}  cond {:.2}",
            e.name,
            e.notes,
            r.minimizer,
            r.iterations,
            r.residual.unwrap_or(f64::NAN),
            r.hessian_condition
        );
    }
    Ok(())
}
