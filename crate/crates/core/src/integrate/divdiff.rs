//! Divided differences of iterated antiderivatives.
//!
//! For `h` one of `exp`, `t^p` or `1`, and nodes `x_0..x_m`, this computes
//! `G[x_0, ..., x_m]` where `G` is an `m`-fold antiderivative of `h`. That is
//! the quantity `int_{Delta_m} h(sum s_i x_i) ds` up to the factor `1 / m!`.
//!
//! The table is filled bottom up. An entry whose nodes are clustered (relative
//! to the scale on which `h` varies) is computed from a Taylor expansion about
//! the cluster midpoint; the others use the usual recursion. Both branches use
//! the same antiderivative, so the entries are mutually consistent.

use crate::weights::Shape;

const MAX_TERMS: usize = 80;

/// `g_j(c) = G^{(j)}(c)` for `j = 0, 1, ...` and the ratio between successive
/// Taylor coefficients `g_{j}(c) / j!`.
#[derive(Clone, Copy, Debug)]
struct Antiderivative {
    shape: Shape,
    /// Number of integrations `m`.
    m: usize,
    /// `1 / prod_{r=1..m} (p + r)` for the power profile.
    c0: f64,
}

impl Antiderivative {
    fn new(shape: Shape, m: usize) -> Option<Self> {
        let c0 = match shape {
            Shape::Power(p) => {
                let mut prod = 1.0;
                for r in 1..=m {
                    let f = p + r as f64;
                    if f == 0.0 {
                        return None;
                    }
                    prod *= f;
                }
                1.0 / prod
            }
            _ => 1.0,
        };
        Some(Self { shape, m, c0 })
    }

    /// `G^{(j)}(c)`.
    fn derivative(&self, j: usize, c: f64) -> f64 {
        match self.shape {
            Shape::Exp => c.exp(),
            Shape::Power(p) => {
                let mut coef = self.c0;
                for i in 0..j {
                    coef *= p + self.m as f64 - i as f64;
                }
                coef * c.powf(p + self.m as f64 - j as f64)
            }
            Shape::Const => unreachable!("constant profile has a closed form"),
        }
    }

    /// Ratio `a_{t+1} / a_t` for `a_t = G^{(k+t)}(c) / (k+t)!`.
    fn taylor_ratio(&self, k: usize, t: usize, c: f64) -> f64 {
        let j = (k + t) as f64;
        match self.shape {
            Shape::Exp => 1.0 / (j + 1.0),
            Shape::Power(p) => (p + self.m as f64 - j) / (c * (j + 1.0)),
            Shape::Const => unreachable!("constant profile has a closed form"),
        }
    }

    /// Is a Taylor expansion of radius `r` about `c` fast enough?
    fn taylor_ok(&self, c: f64, r: f64) -> bool {
        match self.shape {
            Shape::Exp => r <= 1.5,
            Shape::Const => unreachable!("constant profile has a closed form"),
            Shape::Power(p) => c > 0.0 && r <= 0.5 * c && r * p.abs() <= 1.5 * c,
        }
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `G[nodes]` with `G` the `(nodes.len() - 1)`-fold antiderivative of `shape`.
/// Returns `None` when the power antiderivative hits `t^{-1}` (a logarithm).
pub(crate) fn divided_difference(shape: Shape, nodes: &[f64]) -> Option<f64> {
    let m = nodes.len() - 1;
    if let Shape::Const = shape {
        return Some(1.0 / factorial(m));
    }
    let g = Antiderivative::new(shape, m)?;
    let mut x = nodes.to_vec();
    x.sort_by(f64::total_cmp);

    // row[i] holds G[x_i .. x_{i+k}] for the current order k
    let mut row: Vec<f64> = x.iter().map(|&xi| g.derivative(0, xi)).collect();
    for k in 1..=m {
        let mut next = Vec::with_capacity(m + 1 - k);
        for i in 0..=m - k {
            let (a, b) = (x[i], x[i + k]);
            let c = 0.5 * (a + b);
            let r = 0.5 * (b - a);
            let v = if g.taylor_ok(c, r) {
                taylor(&g, k, c, &x[i..=i + k])
            } else {
                (row[i + 1] - row[i]) / (b - a)
            };
            next.push(v);
        }
        row = next;
    }
    Some(row[0])
}

/// `sum_t G^{(k+t)}(c) / (k+t)! * h_t(y)` with `y = nodes - c` and `h_t` the
/// complete homogeneous symmetric polynomials, generated one degree at a time
/// via `h_t(y_0..y_l) = h_t(y_0..y_{l-1}) + y_l h_{t-1}(y_0..y_l)`.
fn taylor(g: &Antiderivative, k: usize, c: f64, nodes: &[f64]) -> f64 {
    let y: Vec<f64> = nodes.iter().map(|v| v - c).collect();
    let mut prefix = vec![1.0; y.len()];
    let mut a = g.derivative(k, c) / factorial(k);
    let mut sum = a;
    let mut small = 0;
    for t in 1..=MAX_TERMS {
        a *= g.taylor_ratio(k, t - 1, c);
        if a == 0.0 {
            break;
        }
        let mut acc = 0.0;
        for (p, &yl) in prefix.iter_mut().zip(&y) {
            acc += yl * *p;
            *p = acc;
        }
        let term = a * acc;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}
