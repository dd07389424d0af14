//! Cubature rules on simplices, stored in barycentric form.
//!
//! Two rules are provided:
//!
//! * Grundmann-Moller of degree `2s + 1`. It carries an embedded rule of
//!   degree `2s - 1` on a subset of the same points, which gives an error
//!   estimate at no extra cost. Its weights alternate in sign, and the sum of
//!   their magnitudes grows quickly with `s`.
//! * The conical product of Gauss-Jacobi rules (collapsed coordinates). All
//!   weights are positive, so it stays stable at high degree. There is no
//!   embedded estimate; callers compare against a bisected evaluation.

use nalgebra::{DMatrix, SymmetricEigen};

/// Barycentric points with weights summing to one.
#[derive(Clone, Debug)]
pub(crate) struct Rule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// Weights of the embedded lower-degree rule (zero where unused).
    pub embedded: Option<Vec<f64>>,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// All `beta` in `N^parts` with `|beta| = total`, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Grundmann-Moller rule of degree `2s + 1` in dimension `n` with its
/// embedded degree `2s - 1` companion (for `s >= 1`).
pub(crate) fn grundmann_moller(n: usize, s: usize) -> Rule {
    let d = 2 * s + 1;
    let nf = factorial(n);
    let weight = |s: usize, i: usize| -> f64 {
        let d = 2 * s + 1;
        let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
        let denom = (d + n - 2 * i) as f64;
        sign * 2f64.powi(-2 * s as i32) * denom.powi(d as i32) / (factorial(i) * factorial(d + n - i)) * nf
    };
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut embedded = Vec::new();
    for i in 0..=s {
        let denom = (d + n - 2 * i) as f64;
        let w = weight(s, i);
        let we = if i >= 1 { weight(s - 1, i - 1) } else { 0.0 };
        for beta in compositions(s - i, n + 1) {
            points.push(beta.iter().map(|&b| (2 * b + 1) as f64 / denom).collect());
            weights.push(w);
            embedded.push(we);
        }
    }
    Rule {
        points,
        weights,
        embedded: (s >= 1).then_some(embedded),
    }
}

/// Gauss-Jacobi nodes and weights on `[0, 1]` for the weight `(1 - t)^alpha`,
/// by the Golub-Welsch eigenvalue method.
pub(crate) fn gauss_jacobi01(q: usize, alpha: usize) -> (Vec<f64>, Vec<f64>) {
    let a = alpha as f64;
    // Jacobi(alpha, 0) on [-1, 1]
    let mut jm = DMatrix::<f64>::zeros(q, q);
    for k in 0..q {
        let kf = k as f64;
        let s = 2.0 * kf + a;
        jm[(k, k)] = if k == 0 {
            -a / (a + 2.0)
        } else {
            -a * a / (s * (s + 2.0))
        };
        if k + 1 < q {
            let k1 = kf + 1.0;
            let s1 = 2.0 * k1 + a;
            let b = (4.0 * k1 * (k1 + a) * k1 * (k1 + a) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0))).sqrt();
            jm[(k, k + 1)] = b;
            jm[(k + 1, k)] = b;
        }
    }
    // mu0 = int_{-1}^{1} (1 - u)^a du = 2^{a+1} / (a + 1)
    let mu0 = 2f64.powf(a + 1.0) / (a + 1.0);
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..q)
        .map(|i| {
            let u = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            // map to [0, 1]: (1 - t)^a dt = 2^{-a-1} (1 - u)^a du
            ((1.0 + u) / 2.0, mu0 * v0 * v0 * 2f64.powf(-a - 1.0))
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

/// Conical product rule with `q` points per direction (degree `2q - 1`).
pub(crate) fn conical_gauss(n: usize, q: usize) -> Rule {
    let axes: Vec<(Vec<f64>, Vec<f64>)> = (1..=n).map(|k| gauss_jacobi01(q, n - k)).collect();
    let nf = factorial(n);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        // y_1 = t_1, y_k = prod_{j<k} (1 - t_j) t_k
        let mut bary = vec![0.0; n + 1];
        let mut rest = 1.0;
        let mut w = nf;
        for k in 0..n {
            let t = axes[k].0[idx[k]];
            w *= axes[k].1[idx[k]];
            bary[k + 1] = rest * t;
            rest *= 1.0 - t;
        }
        bary[0] = rest;
        points.push(bary);
        weights.push(w);

        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < q {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    Rule {
        points,
        weights,
        embedded: None,
    }
}
