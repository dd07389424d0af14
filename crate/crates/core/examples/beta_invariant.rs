//! Weighted beta invariants of divisorial valuations given by affine
//! functions on the polytope.
//!
//!     cargo run --release --example beta_invariant

use soliton_polytope::invariants::{beta_v, truncation_bound_check, Valuation};
use soliton_polytope::{catalog, IntegrationConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    let cfg = IntegrationConfig::default();
    let one = Weight::constant(1.0);
    let cases = [
        ("p1", Valuation::new(&[1], 1.0, 1.0), "point"),
        ("p2", Valuation::new(&[1, 0], 1.0, 1.0), "fan ray"),
        ("p2", Valuation::new(&[1, 1], 2.0, 2.0), "corner blow-up"),
        ("bl1p2", Valuation::new(&[1, 1], 1.0, 1.0), "exceptional curve"),
        ("bl1p2", Valuation::new(&[-1, -1], 1.0, 1.0), "line at infinity"),
    ];
    for (name, val, label) in cases {
        let p = catalog::get(name)?;
        let r = beta_v(&p, &val, &one, &cfg)?;
        println!(
            "{name:6} {label:18} beta = {:+.12}  t_max {}  simpson diff {:.1e}",
            r.margin,
            r.details["t_max"],
            r.details["simpson_halved_diff"].as_f64().unwrap_or(f64::NAN)
        );
    }

    // with the soliton weight the beta invariant of every ray of bl1p2 vanishes
    let p = catalog::get("bl1p2")?;
    let tau = [-0.5276195198969629, -0.5276195198969629];
    for u in [[1, 0], [0, 1], [-1, -1], [1, 1]] {
        let r = beta_v(&p, &Valuation::new(&u, 1.0, 1.0), &Weight::exp_linear(&tau), &cfg)?;
        println!("bl1p2 soliton weight, ray {u:?}: beta = {:+.3e}", r.margin);
    }

    // truncated volumes along a fan ray of P^2
    let xs: Vec<f64> = (0..=6).map(|k| 0.5 * k as f64).collect();
    let r = truncation_bound_check(&catalog::get("p2")?, &Valuation::new(&[1, 0], 1.0, 1.0), &xs, 1e-8)?;
    println!("\ntruncation bound on P^2: passed {} margin {:+.3e}", r.passed, r.margin);
    Ok(())
}
