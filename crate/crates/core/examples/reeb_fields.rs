//! Reeb fields minimizing the Sasaki volume, and soliton fields paired with
//! a given Reeb field.
//!
//!     cargo run --release --example reeb_fields

use soliton_polytope::solve::{msy_reeb, soliton_pair};
use soliton_polytope::{catalog, Error, SolverConfig};

fn main() -> soliton_polytope::Result<()> {
    let cfg = SolverConfig::default();
    for e in catalog::ENTRIES {
        let p = e.polytope();
        let r = msy_reeb(&p, &cfg)?;
        println!("{:6} Reeb xi0 = {:+.12?}  residual {:.1e}", e.name, r.minimizer, r.residual.unwrap_or(f64::NAN));
    }

    let p = catalog::get("bl1p2")?;
    println!("\nsoliton fields of bl1p2 along the diagonal xi = (s, s):");
    for s in [-0.2, -0.1, 0.0, 0.1, 0.2] {
        let r = soliton_pair(&p, &[s, s], &cfg)?;
        println!("  s = {s:+.2}: tau(xi) = {:+.10?}", r.minimizer);
    }

    // outside the dual polytope the pair is undefined
    match soliton_pair(&p, &[1.5, 0.0], &cfg) {
        Err(Error::DomainViolation(msg)) => println!("\nrejected: {msg}"),
        other => println!("\nunexpected: {other:?}"),
    }
    Ok(())
}
