//! Futaki invariants and the convex functionals whose critical points are
//! soliton fields.
//!
//!     cargo run --example futaki

use soliton_polytope::functionals::{evaluate_functional, futaki};
use soliton_polytope::invariants::futaki_vanishing_report;
use soliton_polytope::{catalog, ConvexFunctional, FunctionalKind, IntegrationConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    let one = Weight::constant(1.0);
    for e in catalog::ENTRIES {
        let p = e.polytope();
        let r = futaki_vanishing_report(&p, &one, 1e-10, &IntegrationConfig::default())?;
        println!("{:6} Fut = {:+.6?}  vanishes: {}", e.name, futaki(&p, &one)?, r.passed);
    }

    let p = catalog::get("bl1p2")?;
    for kind in [
        FunctionalKind::TianZhu,
        FunctionalKind::VN { n: 16.0 },
        FunctionalKind::Msy,
        FunctionalKind::SasakiSoliton { xi: vec![0.1, 0.1] },
    ] {
        let f = ConvexFunctional::new(kind.clone(), &p)?;
        let e = evaluate_functional(&f, &[0.05, -0.02])?;
        println!("\n{kind:?}\n  value {:.10}\n  gradient {:.10?}\n  hessian {:.6?}", e.value, e.gradient, e.hessian);
    }
    Ok(())
}
