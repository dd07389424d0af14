#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use soliton_polytope::polytope::rational::to_f64;
use soliton_polytope::Polytope;

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A point of the open dual polytope of a canonical P, which is the convex
/// hull of the facet normals: `shrink * sum_i w_i u_i` with random convex
/// weights `w`.
pub fn dual_point(p: &Polytope, shrink: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let w: Vec<f64> = p.facets().iter().map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = w.iter().sum();
    let mut xi = vec![0.0; p.dim()];
    for (f, wi) in p.facets().iter().zip(&w) {
        for (x, u) in xi.iter_mut().zip(&f.normal) {
            *x += shrink * wi / total * to_f64(u);
        }
    }
    xi
}
