//! Polytopes given as JSON, including non-catalog ones, run through the
//! same pipeline.
//!
//!     cargo run --release --example custom_polytope

use soliton_polytope::solve::{msy_reeb, tian_zhu_field};
use soliton_polytope::{futaki, Polytope, SolverConfig, Weight};

fn main() -> soliton_polytope::Result<()> {
    // the weighted projective plane P(1,1,2) is not smooth, but its polytope is canonical
    let text = r#"{
        "dim": 2,
        "canonical": true,
        "facets": [
            {"normal": [1, 0], "offset": 1},
            {"normal": [0, 1], "offset": 1},
            {"normal": [-1, -2], "offset": 1}
        ]
    }"#;
    let p = Polytope::from_json(text)?;
    println!("vertices {:?}, degree {}", p.vertices_f64(), p.degree());
    println!("Fut = {:?}", futaki(&p, &Weight::constant(1.0))?);

    let cfg = SolverConfig::default();
    println!("tau = {:.12?}", tian_zhu_field(&p, &cfg)?.minimizer);
    println!("xi0 = {:.12?}", msy_reeb(&p, &cfg)?.minimizer);

    // a non-canonical offset is rejected by the solvers' precondition
    let shifted = r#"{"dim": 1, "canonical": true, "facets": [{"normal": [1], "offset": 1}, {"normal": [-1], "offset": "1/2"}]}"#;
    println!("\nnon-canonical input: {}", Polytope::from_json(shifted).unwrap_err());
    Ok(())
}
