//! Vertex bound on soliton fields and the weighted volume bound.
//!
//!     cargo run --release --example obstructions

use soliton_polytope::invariants::{fujita_check, lichnerowicz_check};
use soliton_polytope::solve::{soliton_pair, tian_zhu_field};
use soliton_polytope::{catalog, SolverConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    let cfg = SolverConfig::default();
    println!("vertex bound n - <tau, V> > 0:");
    for e in catalog::ENTRIES {
        let p = e.polytope();
        let tau = tian_zhu_field(&p, &cfg)?.minimizer;
        let r = lichnerowicz_check(&p, &tau, None)?;
        let tau10: Vec<f64> = tau.iter().map(|t| 10.0 * t).collect();
        let r10 = lichnerowicz_check(&p, &tau10, None)?;
        println!("  {:6} margin {:.6}  (10 tau: {:+.6})", e.name, r.margin, r10.margin);
    }

    let p = catalog::get("bl2p2")?;
    let xi = [0.05, -0.1];
    let tau = soliton_pair(&p, &xi, &cfg)?.minimizer;
    let r = lichnerowicz_check(&p, &tau, Some(&xi))?;
    println!("  bl2p2 at xi = {xi:?}: margin {:.6}", r.margin);

    println!("\nweighted volume bound ((n+1)/m_v)^n - c1^n:");
    for name in ["p1", "p2", "p3", "p1xp1", "bl1p2"] {
        let p = catalog::get(name)?;
        let tau = tian_zhu_field(&p, &cfg)?.minimizer;
        for (label, w) in [("const", Weight::constant(1.0)), ("soliton", Weight::exp_linear(&tau))] {
            let r = fujita_check(&p, &w, &cfg.integration)?;
            println!("  {name:6} {label:8} margin {:+.3e}  passed {}", r.margin, r.passed);
        }
    }
    Ok(())
}
