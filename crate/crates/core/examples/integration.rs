//! Moments of weights: closed form, adaptive cubature, the independent
//! verification rule and Monte Carlo, side by side.
//!
//!     cargo run --release --example integration

use soliton_polytope::integrate::{monte_carlo_oracle, IntegrationMode};
use soliton_polytope::{catalog, integrate_weight, IntegrationConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    let p = catalog::get("bl2p2")?;
    let exact = IntegrationConfig::default();
    let adaptive = IntegrationConfig::adaptive();
    let verify = exact.verification();

    for w in [
        Weight::exp_linear(&[0.3, -0.7]),
        Weight::pow_dual(&[0.2, -0.1], -4.0),
        Weight::qn(&[-0.4, 0.3], 16.0),
        Weight::tkrs(&[0.1, 0.0], &[0.2, 0.3], -4.0),
    ] {
        println!("{}", w.to_json());
        for (label, cfg) in [("auto", &exact), ("adaptive", &adaptive), ("verify", &verify)] {
            let m = integrate_weight(&p, &w, 2, cfg)?;
            println!(
                "  {label:8} {:?}: mass {:.15} first {:.12?} err {:.1e}",
                m.route, m.mass, m.first, m.error_estimate
            );
        }
        let (mc, se) = monte_carlo_oracle(&p, &w, 1_000_000, 7)?;
        println!("  monte carlo       mass {mc:.6} +- {se:.1e}");
    }

    // Monte Carlo is reproducible from its seed
    let cfg = IntegrationConfig {
        mode: IntegrationMode::MonteCarlo { samples: 10_000, seed: 42 },
        ..IntegrationConfig::default()
    };
    let a = integrate_weight(&p, &Weight::constant(1.0), 1, &cfg)?;
    let b = integrate_weight(&p, &Weight::constant(1.0), 1, &cfg)?;
    assert_eq!(a, b);
    println!("\nseeded Monte Carlo area {:.4} (exact 3.5)", a.mass);
    Ok(())
}
