//! Global minimization of a smooth function over a polytope.
//!
//! A grid scan over the bounding box gives coarse seeds; then a damped
//! Newton iteration runs inside the affine hull of every face (vertices are
//! candidates on their own). Steps are shortened so iterates never leave
//! the polytope, which keeps each run on its face.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::polytope::Polytope;

#[derive(Clone, Debug, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub point: Vec<f64>,
}

const SEEDS: usize = 6;
const NEWTON_STEPS: usize = 60;

fn grid_points_per_axis(n: usize) -> usize {
    let target = 10usize.pow(4usize.saturating_sub(n).max(1) as u32);
    // keep the full grid below ~2e5 points
    let cap = (2.0e5f64).powf(1.0 / n as f64).floor() as usize;
    target.min(cap).max(2)
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

pub fn minimize<F, G>(p: &Polytope, f: F, grad: G) -> Result<Extremum>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let n = p.dim();
    let f = |x: &[f64]| finite_or_inf(f(x));
    let mut best = Extremum {
        value: f64::INFINITY,
        point: Vec::new(),
    };
    let consider = |x: Vec<f64>, v: f64, best: &mut Extremum| {
        if v < best.value {
            *best = Extremum { value: v, point: x };
        }
    };

    for v in p.vertices_f64() {
        consider(v.clone(), f(v), &mut best);
    }

    // grid seeds
    let (lo, hi) = p.bounding_box();
    let g = grid_points_per_axis(n);
    let mut seeds: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<f64> = (0..n)
            .map(|k| lo[k] + (hi[k] - lo[k]) * (idx[k] as f64 + 0.5) / g as f64)
            .collect();
        if p.contains(&x, 0.0) {
            let v = f(&x);
            seeds.push((v, x));
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < g {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    seeds.truncate(SEEDS);
    for (v, x) in &seeds {
        consider(x.clone(), *v, &mut best);
    }

    let verts = p.vertices_f64();
    let faces = p.faces()?;
    for face in faces.iter().filter(|fc| fc.dim >= 1) {
        let pts: Vec<&Vec<f64>> = face.vertices.iter().map(|&i| &verts[i]).collect();
        let centroid: Vec<f64> = (0..n)
            .map(|c| pts.iter().map(|v| v[c]).sum::<f64>() / pts.len() as f64)
            .collect();
        let basis = affine_basis(&pts, face.dim);
        let mut starts = vec![centroid];
        if face.dim == n {
            starts.extend(seeds.iter().map(|(_, x)| x.clone()));
        }
        for s in starts {
            let (x, v) = newton_on_face(p, &f, &grad, &s, &basis);
            consider(x, v, &mut best);
        }
    }

    if !best.value.is_finite() {
        return Err(Error::IntegrationFailure(
            "objective is not finite anywhere on the polytope".into(),
        ));
    }
    Ok(best)
}

/// Orthonormal columns spanning the directions of the given points.
fn affine_basis(pts: &[&Vec<f64>], dim: usize) -> DMatrix<f64> {
    let n = pts[0].len();
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for q in &pts[1..] {
        let mut d = DVector::from_fn(n, |c, _| q[c] - pts[0][c]);
        for b in &cols {
            let proj = b.dot(&d);
            d -= b * proj;
        }
        let norm = d.norm();
        if norm > 1e-9 {
            cols.push(d / norm);
            if cols.len() == dim {
                break;
            }
        }
    }
    DMatrix::from_columns(&cols)
}

fn newton_on_face<F, G>(p: &Polytope, f: &F, grad: &G, start: &[f64], basis: &DMatrix<f64>) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let n = start.len();
    let k = basis.ncols();
    let to_x = |x0: &DVector<f64>, y: &DVector<f64>| -> Vec<f64> { (x0 + basis * y).iter().copied().collect() };
    let x0 = DVector::from_column_slice(start);
    let reduced_grad = |x: &[f64]| -> DVector<f64> { basis.transpose() * DVector::from_vec(grad(x)) };

    let mut y = DVector::zeros(k);
    let mut x = start.to_vec();
    let mut fx = f(&x);
    if !fx.is_finite() {
        return (x, fx);
    }
    let scale = p.radius();
    for _ in 0..NEWTON_STEPS {
        let g = reduced_grad(&x);
        if g.norm() < 1e-14 {
            break;
        }
        let h = 1e-5 * scale;
        let mut hess = DMatrix::zeros(k, k);
        for c in 0..k {
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[c] += h;
            ym[c] -= h;
            let gp = reduced_grad(&to_x(&x0, &yp));
            let gm = reduced_grad(&to_x(&x0, &ym));
            hess.set_column(c, &((gp - gm) / (2.0 * h)));
        }
        let hess = 0.5 * (&hess + hess.transpose());
        let newton = hess
            .clone()
            .cholesky()
            .map(|ch| -ch.solve(&g))
            .filter(|d| d.iter().all(|v| v.is_finite()));
        let dir = newton.unwrap_or_else(|| -&g * (scale / g.norm().max(1e-300)));

        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..60 {
            let yt = &y + &dir * t;
            let xt = to_x(&x0, &yt);
            if p.contains(&xt, 1e-14 * scale) {
                let ft = f(&xt);
                if ft < fx {
                    y = yt;
                    x = xt;
                    fx = ft;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }
    debug_assert_eq!(x.len(), n);
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn quadratic_interior_minimum() {
        let p = catalog::get("p1xp1").unwrap();
        let c = [0.3, -0.2];
        let m = minimize(
            &p,
            |x| (x[0] - c[0]).powi(2) + 2.0 * (x[1] - c[1]).powi(2),
            |x| vec![2.0 * (x[0] - c[0]), 4.0 * (x[1] - c[1])],
        )
        .unwrap();
        assert!(m.value < 1e-20);
        assert!((m.point[0] - c[0]).abs() < 1e-9 && (m.point[1] - c[1]).abs() < 1e-9);
    }

    #[test]
    fn minimum_on_an_edge() {
        // oracle: (x - 3)^2 + y^2 on the square is minimized at (1, 0) on the edge x = 1
        let p = catalog::get("p1xp1").unwrap();
        let m = minimize(
            &p,
            |x| (x[0] - 3.0).powi(2) + x[1] * x[1],
            |x| vec![2.0 * (x[0] - 3.0), 2.0 * x[1]],
        )
        .unwrap();
        assert!((m.value - 4.0).abs() < 1e-12, "{m:?}");
        assert!((m.point[0] - 1.0).abs() < 1e-12 && m.point[1].abs() < 1e-7);
    }
}
