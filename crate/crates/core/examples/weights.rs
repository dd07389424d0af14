//! Weight functions: evaluation, JSON descriptors, normalization and the
//! weight gap between two weights.
//!
//!     cargo run --example weights

use soliton_polytope::weights::{minimum_on, sup_distance, weight_gap};
use soliton_polytope::{catalog, IntegrationConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    let p = catalog::get("bl1p2")?;
    let cfg = IntegrationConfig::default();
    let tau = [-0.5276195198969629, -0.5276195198969629];

    let exp = Weight::exp_linear(&tau);
    let pow = Weight::pow_dual(&[0.1, 0.1], -4.0);
    let tkrs = Weight::tkrs(&[0.1, 0.1], &[-0.12, -0.12], -4.0);
    for w in [&exp, &pow, &tkrs] {
        let m = minimum_on(w, &p)?;
        println!("{}\n  at origin {:.6}, minimum {:.6} at {:?}", w.to_json(), w.evaluate(&[0.0, 0.0])?, m.value, m.point);
    }

    // descriptors parse back to the same weight
    let parsed = Weight::from_json(r#"{"kind": "qn", "xi": [-0.5, -0.5], "N": 64}"#)?;
    println!("\nparsed {parsed:?}");

    // q_N at the exponent tau tends to the exponential weight as N grows
    for n in [8.0, 64.0, 512.0] {
        let q = Weight::qn(&tau, n);
        println!(
            "N = {n:4}: sup|q_N - e^tau| = {:.3e}, gap = {:.3e}",
            sup_distance(&q, &exp, &p)?,
            weight_gap(&exp, &q, &p, &cfg)?
        );
    }

    let normalized = exp.normalize(&p, &cfg)?;
    println!("\nnormalizing constant of e^<tau,x>: {:.12}", normalized.norm_constant);
    Ok(())
}
