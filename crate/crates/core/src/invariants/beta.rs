//! Weighted beta invariant of a divisorial valuation given by an affine
//! function `g(x) = <u, x> + c` that is nonnegative on P.
//!
//! The weighted volume of the truncation `{g >= t}` is a piecewise-smooth
//! function of `t` whose breakpoints are the values of `g` at vertices. The
//! outer integral uses composite Simpson on each piece, doubling the number
//! of panels until two successive totals agree.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{factorial, ObstructionReport, ReportKind};
use crate::error::{Error, Result};
use crate::integrate::{integrate_weight, IntegrationConfig};
use crate::polytope::rational::{self, Rational};
use crate::polytope::{Facet, Polytope};
use crate::weights::Weight;

const MAX_DOUBLINGS: usize = 12;

/// `(u, c, A)`: the valuation's affine function and its log discrepancy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Valuation {
    pub u: Vec<i64>,
    pub c: f64,
    #[serde(rename = "A")]
    pub a: f64,
}

impl Valuation {
    pub fn new(u: &[i64], c: f64, a: f64) -> Self {
        Self { u: u.to_vec(), c, a }
    }

    fn check(&self, p: &Polytope) -> Result<(Vec<Rational>, Rational)> {
        if self.u.len() != p.dim() {
            return Err(Error::InvalidValuationData(format!(
                "u has length {}, expected {}",
                self.u.len(),
                p.dim()
            )));
        }
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidValuationData(format!("A must be positive, got {}", self.a)));
        }
        let u: Vec<Rational> = self.u.iter().map(|&x| rational::int(x)).collect();
        let c = rational::from_f64(self.c)
            .ok_or_else(|| Error::InvalidValuationData(format!("c = {} is not finite", self.c)))?;
        let g = Facet::new(u.clone(), c.clone());
        if let Some(v) = p.vertices().iter().find(|v| g.eval(v).is_negative()) {
            let at: Vec<f64> = v.iter().map(rational::to_f64).collect();
            return Err(Error::InvalidValuationData(format!("g is negative at vertex {at:?}")));
        }
        Ok((u, c))
    }
}

/// `t -> n! int_{P cap {g >= t}} v dx`, memoized by the bit pattern of `t`.
struct TruncatedVolume<'a> {
    p: &'a Polytope,
    u: Vec<Rational>,
    c: Rational,
    v: &'a Weight,
    cfg: &'a IntegrationConfig,
    cache: BTreeMap<u64, f64>,
}

impl TruncatedVolume<'_> {
    fn at(&mut self, t: f64) -> Result<f64> {
        if let Some(&v) = self.cache.get(&t.to_bits()) {
            return Ok(v);
        }
        let tq = rational::from_f64(t).expect("finite t");
        let clipped = self.p.clip(&Facet::new(self.u.clone(), &self.c - tq))?;
        let vol = if clipped.is_full_dimensional() {
            factorial(self.p.dim()) * integrate_weight(&clipped, self.v, 0, self.cfg)?.mass
        } else {
            0.0
        };
        self.cache.insert(t.to_bits(), vol);
        Ok(vol)
    }
}

/// Composite Simpson with `2 k` subintervals per piece.
fn simpson(f: &mut TruncatedVolume<'_>, breaks: &[f64], k: usize) -> Result<f64> {
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = 2 * k;
        let h = (b - a) / m as f64;
        let mut s = f.at(a)? + f.at(b)?;
        for i in 1..m {
            let t = a + h * i as f64;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f.at(t)?;
        }
        total += s * h / 3.0;
    }
    Ok(total)
}

/// `beta = A Vol_v(P) - int_0^{t_max} Vol_v(P cap {g >= t}) dt`.
pub fn beta_v(p: &Polytope, val: &Valuation, v: &Weight, cfg: &IntegrationConfig) -> Result<ObstructionReport> {
    let (u, c) = val.check(p)?;
    let g = Facet::new(u.clone(), c.clone());
    let mut levels: Vec<f64> = p.vertices().iter().map(|x| rational::to_f64(&g.eval(x))).collect();
    levels.push(0.0);
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let t_max = *levels.last().expect("nonempty");

    let mut f = TruncatedVolume {
        p,
        u,
        c,
        v,
        cfg,
        cache: BTreeMap::new(),
    };
    let vol_v = f.at(0.0)?;

    let mut k = 1;
    let mut prev = simpson(&mut f, &levels, k)?;
    let mut halved_diff = f64::INFINITY;
    let mut converged = false;
    for _ in 0..MAX_DOUBLINGS {
        k *= 2;
        let cur = simpson(&mut f, &levels, k)?;
        halved_diff = (cur - prev).abs();
        prev = cur;
        if halved_diff <= cfg.rel_tol * cur.abs() + 1e-14 {
            converged = true;
            break;
        }
    }
    let integral = prev;
    let beta = val.a * vol_v - integral;

    let mut table: Vec<(f64, f64)> = f.cache.iter().map(|(bits, vol)| (f64::from_bits(*bits), *vol)).collect();
    table.sort_by(|x, y| x.0.total_cmp(&y.0));
    let slack = 1e-12 * vol_v.abs().max(1.0);
    let monotone = table.windows(2).all(|w| w[1].1 <= w[0].1 + slack);

    let tol = 1e-9 * (val.a * vol_v).abs().max(1.0);
    Ok(ObstructionReport::new(ReportKind::Beta, beta >= -tol, beta)
        .with("beta", beta)
        .with("A", val.a)
        .with("u", &val.u)
        .with("c", val.c)
        .with("vol_v", vol_v)
        .with("t_max", t_max)
        .with("breakpoints", &levels)
        .with("truncated_integral", integral)
        .with("simpson_halved_diff", halved_diff)
        .with("simpson_relative_diff", halved_diff / integral.abs().max(f64::MIN_POSITIVE))
        .with("simpson_converged", converged)
        .with("monotone_nonincreasing", monotone)
        .with(
            "table",
            table.iter().map(|(t, vol)| json!({"t": t, "vol_v": vol})).collect::<Vec<_>>(),
        ))
}

/// `Vol(P cap {g >= x}) >= Vol(P) - x^n` at the sample points (volumes are
/// `n!` times Lebesgue volumes). The margin is the smallest slack.
pub fn truncation_bound_check(p: &Polytope, val: &Valuation, xs: &[f64], tol: f64) -> Result<ObstructionReport> {
    let (u, c) = val.check(p)?;
    let cfg = IntegrationConfig::default();
    let one = Weight::constant(1.0);
    let mut f = TruncatedVolume {
        p,
        u,
        c,
        v: &one,
        cfg: &cfg,
        cache: BTreeMap::new(),
    };
    let vol = f.at(0.0)?;
    let n = p.dim() as i32;
    let mut rows = Vec::with_capacity(xs.len());
    let mut margin = f64::INFINITY;
    let mut worst = f64::NAN;
    for &x in xs {
        let lhs = f.at(x)?;
        let rhs = vol - x.powi(n);
        let slack = lhs - rhs;
        if slack < margin {
            margin = slack;
            worst = x;
        }
        rows.push(json!({"x": x, "vol_truncated": lhs, "lower_bound": rhs}));
    }
    Ok(ObstructionReport::new(ReportKind::TruncationBound, margin >= -tol, margin)
        .with("vol", vol)
        .with("tolerance", tol)
        .with("worst_x", worst)
        .with("rows", rows))
}
