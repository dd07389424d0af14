//! Exact geometry of momentum polytopes: vertices, faces, volumes, products
//! and clipping.
//!
//!     cargo run --example polytope_geometry

use soliton_polytope::polytope::rational::int;
use soliton_polytope::{catalog, Facet, Polytope};

fn main() -> soliton_polytope::Result<()> {
    for e in catalog::ENTRIES {
        let p = e.polytope();
        let faces = p.faces()?;
        let mut f_vector = vec![0usize; p.dim() + 1];
        for f in faces {
            f_vector[f.dim] += 1;
        }
        println!(
            "{:6} dim {}  vertices {:2}  f-vector {:?}  vol {:>5}  degree {}",
            e.name,
            e.dim,
            p.vertices().len(),
            f_vector,
            p.volume().to_string(),
            p.degree()
        );
    }

    // the hexagon of the thrice blown-up plane, cut in half along x1 = 0
    let hex = catalog::get("bl3p2")?;
    let half = hex.clip(&Facet::new(vec![int(1), int(0)], int(0)))?;
    println!("\nhalf hexagon vertices {:?}, volume {}", half.vertices_f64(), half.volume());

    // products stay canonical: P^1 x P^2 from its factors
    let prod = catalog::get("p1")?.product(&catalog::get("p2")?)?;
    println!("P1 x P2 degree {} (reflexive: {})", prod.degree(), prod.is_reflexive());

    // the same polytope round-trips through JSON
    let json = prod.to_json();
    assert_eq!(Polytope::from_json(&json)?, prod);
    println!("JSON: {json}");

    // cells of the triangulation used by the integrators
    let cells = hex.triangulate()?;
    println!("\nhexagon is triangulated into {} simplices", cells.len());
    Ok(())
}
