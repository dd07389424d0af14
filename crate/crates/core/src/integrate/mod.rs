//! Moments of positive weights over polytopes.
//!
//! `integrate_weight` returns `int_P v`, `int_P x v` and `int_P x x^T v`
//! (Lebesgue measure) up to the requested order. Weights of the form
//! `coef * h(<slope, x> + constant)` with `h` exponential, a power, or
//! constant are integrated in closed form on every cell of the
//! triangulation. Everything else goes through adaptive cubature with
//! longest-edge bisection. Per-cell results are reduced by a fixed pairwise
//! tree, so the output does not depend on the number of threads.

mod divdiff;
pub(crate) mod rules;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{dot, Polytope, Simplex};
use crate::weights::{LinearProfile, Shape, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrationMode {
    /// Closed form when available, adaptive cubature otherwise.
    Auto,
    Exact,
    Adaptive,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    GrundmannMoller,
    /// Positive-weight conical product rule.
    ConicalGauss,
}

/// Missing fields take their default values when deserializing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegrationConfig {
    pub quadrature_degree: usize,
    pub max_subdivision_depth: usize,
    pub rel_tol: f64,
    pub mode: IntegrationMode,
    pub rule: QuadratureRule,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            quadrature_degree: 20,
            max_subdivision_depth: 12,
            rel_tol: 1e-11,
            mode: IntegrationMode::Auto,
            rule: QuadratureRule::GrundmannMoller,
        }
    }
}

impl IntegrationConfig {
    pub fn adaptive() -> Self {
        Self {
            mode: IntegrationMode::Adaptive,
            ..Self::default()
        }
    }

    /// An independent route for re-checking results: adaptive cubature with
    /// the positive conical rule at twice the degree.
    pub fn verification(&self) -> Self {
        Self {
            quadrature_degree: 2 * self.quadrature_degree,
            mode: IntegrationMode::Adaptive,
            rule: QuadratureRule::ConicalGauss,
            ..self.clone()
        }
    }
}

/// Which route actually produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Exact,
    Adaptive,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentData {
    pub order: usize,
    pub mass: f64,
    /// `int x_j v`, empty for order 0.
    pub first: Vec<f64>,
    /// `int x_j x_k v`, empty below order 2.
    pub second: Vec<Vec<f64>>,
    /// Estimated absolute error of `mass` (zero for the closed form).
    pub error_estimate: f64,
    /// False when the subdivision depth ran out before the tolerance was met.
    pub tolerance_met: bool,
    pub route: Route,
}

impl MomentData {
    fn from_flat(n: usize, order: usize, flat: &[f64], error_estimate: f64, tolerance_met: bool, route: Route) -> Self {
        let first = if order >= 1 { flat[1..=n].to_vec() } else { Vec::new() };
        let second = if order >= 2 {
            let mut s = vec![vec![0.0; n]; n];
            let mut idx = 1 + n;
            for j in 0..n {
                for k in j..n {
                    s[j][k] = flat[idx];
                    s[k][j] = flat[idx];
                    idx += 1;
                }
            }
            s
        } else {
            Vec::new()
        };
        Self {
            order,
            mass: flat[0],
            first,
            second,
            error_estimate,
            tolerance_met,
            route,
        }
    }

    /// `int x v / int v`.
    pub fn barycenter(&self) -> Vec<f64> {
        self.first.iter().map(|f| f / self.mass).collect()
    }
}

fn flat_len(n: usize, order: usize) -> usize {
    match order {
        0 => 1,
        1 => 1 + n,
        _ => 1 + n + n * (n + 1) / 2,
    }
}

/// Adds `w * (1, x, x x^T)` into `acc` in the flat layout.
fn accumulate(acc: &mut [f64], x: &[f64], w: f64, order: usize) {
    acc[0] += w;
    if order >= 1 {
        let n = x.len();
        for j in 0..n {
            acc[1 + j] += w * x[j];
        }
        if order >= 2 {
            let mut idx = 1 + n;
            for j in 0..n {
                let wj = w * x[j];
                for k in j..n {
                    acc[idx] += wj * x[k];
                    idx += 1;
                }
            }
        }
    }
}

/// Pairwise sum over a fixed binary tree.
pub(crate) fn pairwise_sum(items: &[Vec<f64>], len: usize) -> Vec<f64> {
    match items.len() {
        0 => vec![0.0; len],
        1 => items[0].clone(),
        k => {
            let (a, b) = items.split_at(k / 2);
            let mut s = pairwise_sum(a, len);
            for (x, y) in s.iter_mut().zip(pairwise_sum(b, len)) {
                *x += y;
            }
            s
        }
    }
}

pub fn integrate_weight(p: &Polytope, v: &Weight, moment_order: usize, cfg: &IntegrationConfig) -> Result<MomentData> {
    if moment_order > 2 {
        return Err(Error::InvalidInput(format!("moment order {moment_order} is not supported (0, 1 or 2)")));
    }
    v.check_positive_on(p)?;
    let n = p.dim();
    let len = flat_len(n, moment_order);
    if !p.is_full_dimensional() {
        return Ok(MomentData::from_flat(n, moment_order, &vec![0.0; len], 0.0, true, Route::Exact));
    }

    let profile = v.linear_profile();
    let result = match cfg.mode {
        IntegrationMode::MonteCarlo { samples, seed } => monte_carlo(p, v, moment_order, samples, seed),
        IntegrationMode::Exact => {
            let lp = profile.ok_or_else(|| Error::InvalidInput("weight has no closed-form integral".into()))?;
            exact(p, &lp, moment_order)?.ok_or_else(|| {
                Error::InvalidInput("closed form would need a logarithmic antiderivative".into())
            })?
        }
        IntegrationMode::Auto => match profile.map(|lp| exact(p, &lp, moment_order)).transpose()?.flatten() {
            Some(m) => m,
            None => adaptive(p, v, moment_order, cfg)?,
        },
        IntegrationMode::Adaptive => adaptive(p, v, moment_order, cfg)?,
    };
    let finite = result.mass.is_finite()
        && result.first.iter().all(|x| x.is_finite())
        && result.second.iter().flatten().all(|x| x.is_finite());
    if !finite {
        return Err(Error::IntegrationFailure("non-finite moment".into()));
    }
    Ok(result)
}

fn exact(p: &Polytope, lp: &LinearProfile, order: usize) -> Result<Option<MomentData>> {
    let n = p.dim();
    let len = flat_len(n, order);
    let cells = p.triangulate()?;
    let parts: Option<Vec<Vec<f64>>> = cells.par_iter().map(|s| exact_simplex(lp, s, order)).collect();
    Ok(parts.map(|parts| MomentData::from_flat(n, order, &pairwise_sum(&parts, len), 0.0, true, Route::Exact)))
}

/// Closed-form moments of `coef * h(lambda(x))` on one simplex, where
/// `lambda` is affine and takes the value `lambda_i` at vertex `i`.
fn exact_simplex(lp: &LinearProfile, s: &Simplex, order: usize) -> Option<Vec<f64>> {
    let n = s.dim();
    let verts = s.vertices();
    let lam: Vec<f64> = verts.iter().map(|v| lp.constant + dot(&lp.slope, v)).collect();
    if let Shape::Power(_) = lp.shape {
        if lam.iter().any(|&l| !(l > 0.0)) {
            return None;
        }
    }
    let factor = lp.coef * s.volume() * (1..=n).map(|k| k as f64).product::<f64>();
    let dd = |extra: &[f64]| -> Option<f64> {
        let mut nodes = lam.clone();
        nodes.extend_from_slice(extra);
        divdiff::divided_difference(lp.shape, &nodes)
    };

    let mut out = vec![0.0; flat_len(n, order)];
    out[0] = factor * dd(&[])?;
    if order >= 1 {
        let e1: Vec<f64> = lam.iter().map(|&li| dd(&[li])).collect::<Option<_>>()?;
        for j in 0..n {
            out[1 + j] = factor * verts.iter().zip(&e1).map(|(v, e)| v[j] * e).sum::<f64>();
        }
    }
    if order >= 2 {
        let m = n + 1;
        let mut e2 = vec![vec![0.0; m]; m];
        for i in 0..m {
            for l in i..m {
                let v = dd(&[lam[i], lam[l]])?;
                e2[i][l] = v;
                e2[l][i] = v;
            }
            // the diagonal carries an extra copy: int b_i^2 h = 2 E_ii
            e2[i][i] *= 2.0;
        }
        let mut idx = 1 + n;
        for j in 0..n {
            for k in j..n {
                let mut acc = 0.0;
                for i in 0..m {
                    let vij = verts[i][j];
                    for l in 0..m {
                        acc += vij * e2[i][l] * verts[l][k];
                    }
                }
                out[idx] = factor * acc;
                idx += 1;
            }
        }
    }
    Some(out)
}

/// `int_S exp(<zeta, x>) q(x) dx` for a quadratic `q(x) = c + <g, x> + x^T Q x`.
pub fn simplex_exp_poly(s: &Simplex, zeta: &[f64], q: &Quadratic) -> Result<f64> {
    let n = s.dim();
    if zeta.len() != n || q.linear.len() != n || (!q.quadratic.is_empty() && q.quadratic.len() != n) {
        return Err(Error::InvalidInput("dimension mismatch in simplex_exp_poly".into()));
    }
    let lp = LinearProfile {
        coef: 1.0,
        shape: Shape::Exp,
        slope: zeta.to_vec(),
        constant: 0.0,
    };
    let order = if !q.quadratic.is_empty() { 2 } else { 1 };
    let flat = exact_simplex(&lp, s, order).expect("the exponential profile is always closed-form");
    let m = MomentData::from_flat(n, order, &flat, 0.0, true, Route::Exact);
    let mut total = q.constant * m.mass + dot(&q.linear, &m.first);
    if order == 2 {
        for j in 0..n {
            for k in 0..n {
                total += q.quadratic[j][k] * m.second[j][k];
            }
        }
    }
    Ok(total)
}

/// `c + <g, x> + x^T Q x`; an empty `quadratic` means no quadratic part.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Quadratic {
    pub constant: f64,
    pub linear: Vec<f64>,
    pub quadratic: Vec<Vec<f64>>,
}

impl Quadratic {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut v = self.constant + dot(&self.linear, x);
        for (j, row) in self.quadratic.iter().enumerate() {
            v += x[j] * dot(row, x);
        }
        v
    }
}

struct Cubature {
    rule: rules::Rule,
    bisect_estimate: bool,
}

impl Cubature {
    fn new(n: usize, cfg: &IntegrationConfig) -> Self {
        match cfg.rule {
            QuadratureRule::GrundmannMoller => Cubature {
                rule: rules::grundmann_moller(n, cfg.quadrature_degree.max(2) / 2),
                bisect_estimate: false,
            },
            QuadratureRule::ConicalGauss => Cubature {
                rule: rules::conical_gauss(n, cfg.quadrature_degree / 2 + 1),
                bisect_estimate: true,
            },
        }
    }

    /// Returns `(Q, Q_embedded)` with the embedded rule when available.
    fn apply<F: Fn(&[f64]) -> f64>(&self, s: &Simplex, f: &F, order: usize, len: usize) -> (Vec<f64>, Option<Vec<f64>>) {
        let n = s.dim();
        let verts = s.vertices();
        let mut q = vec![0.0; len];
        let mut qe = self.rule.embedded.as_ref().map(|_| vec![0.0; len]);
        let mut x = vec![0.0; n];
        let mut tmp = vec![0.0; len];
        for (idx, bary) in self.rule.points.iter().enumerate() {
            x.iter_mut().for_each(|c| *c = 0.0);
            for (b, v) in bary.iter().zip(verts) {
                for k in 0..n {
                    x[k] += b * v[k];
                }
            }
            let fx = f(&x);
            tmp.iter_mut().for_each(|c| *c = 0.0);
            accumulate(&mut tmp, &x, fx, order);
            let w = self.rule.weights[idx];
            for (a, t) in q.iter_mut().zip(&tmp) {
                *a += w * t;
            }
            if let (Some(qe), Some(we)) = (qe.as_mut(), self.rule.embedded.as_ref()) {
                for (a, t) in qe.iter_mut().zip(&tmp) {
                    *a += we[idx] * t;
                }
            }
        }
        let vol = s.volume();
        q.iter_mut().for_each(|a| *a *= vol);
        if let Some(qe) = qe.as_mut() {
            qe.iter_mut().for_each(|a| *a *= vol);
        }
        (q, qe)
    }
}

struct Leaf {
    value: Vec<f64>,
    error: f64,
    met: bool,
}

fn scaled_error(a: &[f64], b: &[f64], scale: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(scale)
        .map(|((x, y), s)| (x - y).abs() / s)
        .fold(0.0, f64::max)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(&[f64]) -> f64>(
    cub: &Cubature,
    s: &Simplex,
    f: &F,
    order: usize,
    len: usize,
    scale: &[f64],
    tol: f64,
    depth: usize,
    max_depth: usize,
) -> Leaf {
    let (value, error) = if cub.bisect_estimate {
        let (q, _) = cub.apply(s, f, order, len);
        let (a, b) = s.bisect();
        let (qa, _) = cub.apply(&a, f, order, len);
        let (qb, _) = cub.apply(&b, f, order, len);
        let fine: Vec<f64> = qa.iter().zip(&qb).map(|(x, y)| x + y).collect();
        let err = scaled_error(&q, &fine, scale);
        (fine, err)
    } else {
        let (q, qe) = cub.apply(s, f, order, len);
        let err = qe.map_or(f64::INFINITY, |qe| scaled_error(&q, &qe, scale));
        (q, err)
    };
    if error <= tol {
        return Leaf { value, error, met: true };
    }
    if depth >= max_depth {
        return Leaf { value, error, met: false };
    }
    let (a, b) = s.bisect();
    let la = refine(cub, &a, f, order, len, scale, tol / 2.0, depth + 1, max_depth);
    let lb = refine(cub, &b, f, order, len, scale, tol / 2.0, depth + 1, max_depth);
    Leaf {
        value: la.value.iter().zip(&lb.value).map(|(x, y)| x + y).collect(),
        error: la.error + lb.error,
        met: la.met && lb.met,
    }
}

fn adaptive(p: &Polytope, v: &Weight, order: usize, cfg: &IntegrationConfig) -> Result<MomentData> {
    let n = p.dim();
    let len = flat_len(n, order);
    let cells = p.triangulate()?;
    let cub = Cubature::new(n, cfg);
    let f = |x: &[f64]| v.log_value(x).map_or(f64::NAN, f64::exp);

    // scale of each component from one coarse pass
    let coarse: Vec<Vec<f64>> = cells.par_iter().map(|s| cub.apply(s, &f, 0, 1).0).collect();
    let mass = pairwise_sum(&coarse, 1)[0].abs().max(f64::MIN_POSITIVE);
    let r = p.radius();
    let mut scale = vec![mass; len];
    for (i, s) in scale.iter_mut().enumerate().skip(1) {
        *s *= if i <= n { r } else { r * r };
    }
    let total_vol = p.volume_f64();

    let leaves: Vec<Leaf> = cells
        .par_iter()
        .map(|s| {
            let tol = cfg.rel_tol * s.volume() / total_vol;
            refine(&cub, s, &f, order, len, &scale, tol, 0, cfg.max_subdivision_depth)
        })
        .collect();
    let values: Vec<Vec<f64>> = leaves.iter().map(|l| l.value.clone()).collect();
    let flat = pairwise_sum(&values, len);
    let err: f64 = leaves.iter().map(|l| l.error).sum::<f64>() * mass;
    let met = leaves.iter().all(|l| l.met);
    Ok(MomentData::from_flat(n, order, &flat, err, met, Route::Adaptive))
}

/// Hit-or-miss sampling in the bounding box. `error_estimate` is one
/// standard error of the mass.
fn monte_carlo(p: &Polytope, v: &Weight, order: usize, samples: u64, seed: u64) -> MomentData {
    let n = p.dim();
    let len = flat_len(n, order);
    let (lo, hi) = p.bounding_box();
    let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = vec![0.0; len];
    let mut sum_sq = 0.0;
    let mut x = vec![0.0; n];
    for _ in 0..samples {
        for k in 0..n {
            x[k] = lo[k] + (hi[k] - lo[k]) * rng.random::<f64>();
        }
        if p.contains(&x, 0.0) {
            let fx = v.log_value(&x).map_or(f64::NAN, f64::exp);
            accumulate(&mut sum, &x, fx, order);
            sum_sq += fx * fx;
        }
    }
    let ns = samples.max(1) as f64;
    let flat: Vec<f64> = sum.iter().map(|s| box_vol * s / ns).collect();
    let mean = sum[0] / ns;
    let var = (sum_sq / ns - mean * mean).max(0.0);
    let stderr = box_vol * (var / ns).sqrt();
    MomentData::from_flat(n, order, &flat, stderr, true, Route::MonteCarlo)
}

/// `(estimate, standard error)` of `int_P v` by seeded sampling.
pub fn monte_carlo_oracle(p: &Polytope, v: &Weight, samples: u64, seed: u64) -> Result<(f64, f64)> {
    v.check_positive_on(p)?;
    let m = monte_carlo(p, v, 0, samples, seed);
    Ok((m.mass, m.error_estimate))
}

/// `n! int_P v`, so a constant weight 1 gives the degree.
pub fn weighted_volume(p: &Polytope, v: &Weight, cfg: &IntegrationConfig) -> Result<f64> {
    let m = integrate_weight(p, v, 0, cfg)?;
    let nf: f64 = (1..=p.dim()).map(|k| k as f64).product();
    Ok(nf * m.mass)
}
