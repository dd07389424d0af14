//! Structural invariants checked on randomized inputs.

mod common;

use common::{dist, dual_point, norm, rng};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use soliton_polytope::polytope::rational::{self, int};
use soliton_polytope::solve::{newton_minimize, tian_zhu_field};
use soliton_polytope::weights::{sup_distance, weight_gap};
use soliton_polytope::{
    catalog, integrate_weight, ConvexFunctional, Facet, FunctionalKind, IntegrationConfig, SolverConfig, Weight,
};

const NAMES_2D: [&str; 5] = ["p2", "p1xp1", "bl1p2", "bl2p2", "bl3p2"];

fn mass(p: &soliton_polytope::Polytope, w: &Weight) -> f64 {
    integrate_weight(p, w, 0, &IntegrationConfig::default()).unwrap().mass
}

fn small() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn clip_additivity(idx in 0..NAMES_2D.len(), a in -3i64..=3, b in -3i64..=3, off in -0.5..0.5f64,
                       t0 in small(), t1 in small()) {
        prop_assume!(a != 0 || b != 0);
        let p = catalog::get(NAMES_2D[idx]).unwrap();
        let h = Facet::new(vec![int(a), int(b)], rational::from_f64(off).unwrap());
        let w = Weight::exp_linear(&[t0, t1]);
        let whole = mass(&p, &w);
        let parts = mass(&p.clip(&h).unwrap(), &w) + mass(&p.clip(&h.flipped()).unwrap(), &w);
        prop_assert!((whole - parts).abs() <= 1e-12 * whole, "{whole} vs {parts}");
    }

    #[test]
    fn translation_equivariance(idx in 0..NAMES_2D.len(), s0 in -4i64..=4, s1 in -4i64..=4,
                                t0 in small(), t1 in small()) {
        let p = catalog::get(NAMES_2D[idx]).unwrap();
        let shift = [rational::ratio(s0, 3), rational::ratio(s1, 3)];
        let q = p.translate(&shift).unwrap();
        let w = Weight::exp_linear(&[t0, t1]);
        let factor = (t0 * s0 as f64 / 3.0 + t1 * s1 as f64 / 3.0).exp();
        let lhs = mass(&q, &w);
        let rhs = factor * mass(&p, &w);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs, "{lhs} vs {rhs}");
    }

    #[test]
    fn fubini_on_products(i in 0..NAMES_2D.len(), t in prop::collection::vec(small(), 3)) {
        let p = catalog::get("p1").unwrap();
        let q = catalog::get(NAMES_2D[i]).unwrap();
        let lhs = mass(&p.product(&q).unwrap(), &Weight::exp_linear(&t));
        let rhs = mass(&p, &Weight::exp_linear(&t[..1])) * mass(&q, &Weight::exp_linear(&t[1..]));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs, "{lhs} vs {rhs}");
    }

    #[test]
    fn hessians_are_positive_definite(idx in 0..NAMES_2D.len(), seed in any::<u64>(), kind in 0..4usize) {
        let p = catalog::get(NAMES_2D[idx]).unwrap();
        let mut r = rng(seed);
        let xi = dual_point(&p, 0.9, &mut r);
        let (k, y) = match kind {
            0 => (FunctionalKind::TianZhu, dual_point(&p, 2.0, &mut r)),
            1 => (FunctionalKind::VN { n: 12.0 }, dual_point(&p, -10.0, &mut r)),
            2 => (FunctionalKind::Msy, xi.clone()),
            _ => (FunctionalKind::SasakiSoliton { xi }, dual_point(&p, 1.0, &mut r)),
        };
        let f = ConvexFunctional::new(k, &p).unwrap();
        prop_assume!(f.in_domain(&y));
        let h = f.hessian(&y).unwrap();
        let eig = SymmetricEigen::new(DMatrix::from_fn(2, 2, |i, j| h[i][j]));
        prop_assert!(eig.eigenvalues.iter().all(|e| *e > 0.0), "{:?}", eig.eigenvalues);
    }

    #[test]
    fn weight_gap_is_nonnegative_and_scale_invariant(idx in 0..NAMES_2D.len(), a in prop::collection::vec(small(), 2),
                                                     b in prop::collection::vec(small(), 2), lambda in 0.1..10.0f64) {
        let p = catalog::get(NAMES_2D[idx]).unwrap();
        let cfg = IntegrationConfig::default();
        let (v0, v1) = (Weight::exp_linear(&a), Weight::exp_linear(&b));
        let g = weight_gap(&v0, &v1, &p, &cfg).unwrap();
        prop_assert!(g >= 0.0);
        let gs = weight_gap(&Weight::scaled(lambda, v0.clone()), &v1, &p, &cfg).unwrap();
        prop_assert!((g - gs).abs() <= 1e-9 * g.max(1e-6), "{g} vs {gs}");
        prop_assert_eq!(weight_gap(&v0, &v0, &p, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn minimizer_is_independent_of_the_start(idx in 0..NAMES_2D.len(), seed in any::<u64>()) {
        let p = catalog::get(NAMES_2D[idx]).unwrap();
        let cfg = SolverConfig::default();
        let tau = tian_zhu_field(&p, &cfg).unwrap().minimizer;
        let start = dual_point(&p, 3.0, &mut rng(seed));
        let f = ConvexFunctional::new(FunctionalKind::TianZhu, &p).unwrap();
        let r = newton_minimize(&f, &start, &cfg).unwrap();
        prop_assert!(dist(&r.minimizer, &tau) < 1e-10, "{:?} vs {tau:?}", r.minimizer);
    }
}

#[test]
fn soliton_field_is_equivariant_under_lattice_automorphisms() {
    // x -> M x sends tau to M^{-T} tau
    let cfg = SolverConfig::default();
    let p = catalog::get("bl2p2").unwrap();
    let tau = tian_zhu_field(&p, &cfg).unwrap().minimizer;
    for m in [[[0i64, 1], [1, 0]], [[1, 1], [0, 1]], [[2, 1], [1, 1]], [[-1, 0], [0, -1]]] {
        let mq: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let q = p.linear_image(&mq).unwrap();
        let image = tian_zhu_field(&q, &cfg).unwrap().minimizer;
        // M^T image = tau
        let back = [
            m[0][0] as f64 * image[0] + m[1][0] as f64 * image[1],
            m[0][1] as f64 * image[0] + m[1][1] as f64 * image[1],
        ];
        assert!(dist(&back, &tau) < 1e-10, "{m:?}: {image:?}");
    }
}

#[test]
fn qn_tends_to_the_exponential_uniformly() {
    let p = catalog::get("bl1p2").unwrap();
    let tau = [-0.5276195198969629; 2];
    let exp = Weight::exp_linear(&tau);
    let mut last = f64::INFINITY;
    for n in [8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0] {
        let d = sup_distance(&Weight::qn(&tau, n), &exp, &p).unwrap();
        assert!(d < last, "N = {n}: {d} >= {last}");
        // e^t - (1 - t/N)^{-N} = O(t^2 e^t / N)
        assert!(d * n < 0.3, "N = {n}: {d}");
        last = d;
    }
}

#[test]
fn truncation_volumes_are_nonincreasing() {
    use soliton_polytope::invariants::{beta_v, Valuation};
    let cfg = IntegrationConfig::default();
    for name in NAMES_2D {
        let p = catalog::get(name).unwrap();
        let u: Vec<i64> = p.facets()[0].normal.iter().map(|q| rational::to_f64(q) as i64).collect();
        let r = beta_v(&p, &Valuation::new(&u, 1.0, 1.0), &Weight::exp_linear(&[0.3, -0.2]), &cfg).unwrap();
        assert_eq!(r.details["monotone_nonincreasing"], serde_json::json!(true), "{name}");
        assert!(norm(&[r.margin]).is_finite());
    }
}

#[test]
fn pair_converges_when_the_value_is_only_cubature_accurate() {
    // the Newton decrement drops below the cubature tolerance before the
    // gradient tolerance is met
    let p = catalog::get("p3").unwrap();
    let xi = [0.0924317918424603, 0.08662306114375261, 0.017354140559413214];
    let r = soliton_polytope::solve::soliton_pair(&p, &xi, &SolverConfig::default()).unwrap();
    assert!(r.converged && r.residual.unwrap() < 1e-10, "{:?}", r.residual);
}
