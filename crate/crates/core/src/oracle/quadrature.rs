//! Gauss–Laguerre rules and orthonormal Laguerre values in log-scaled form.
//! Nodes reach ~4K, where e^{-x} underflows, so weights are kept as logarithms.

use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

const RESCALE: f64 = 1e100;
const LN_RESCALE: f64 = 230.25850929940458;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (e[i] couples i and i+1), ascending. Implicit QL.
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e: Vec<f64> = e.iter().copied().chain(core::iter::repeat(0.0)).take(n).collect();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::ConvergenceFailure {
                    basis_size: n,
                    estimate: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Orthonormal Laguerre polynomials for the weight x^α e^{-x} at one point,
/// as (ln|p_k|, sign) for k < count.
pub fn laguerre_log_values(alpha: f64, count: usize, x: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let p0 = (-0.5 * libm::lgamma(alpha + 1.0)).exp();
    let mut prev = 0.0;
    let mut cur = p0;
    let mut log_scale = 0.0;
    let push = |out: &mut Vec<(f64, f64)>, v: f64, ls: f64| {
        let lv = if v == 0.0 { f64::NEG_INFINITY } else { v.abs().ln() + ls };
        out.push((lv, if v < 0.0 { -1.0 } else { 1.0 }));
    };
    push(&mut out, cur, log_scale);
    for k in 0..count - 1 {
        let kf = k as f64;
        let back = if k == 0 { 0.0 } else { (kf * (kf + alpha)).sqrt() * prev };
        let next = ((2.0 * kf + alpha + 1.0 - x) * cur - back) / ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += LN_RESCALE;
        }
        push(&mut out, cur, log_scale);
    }
    out
}

/// K-point Gauss–Laguerre rule for x^α e^{-x}: nodes and ln(weights).
pub fn gauss_laguerre(alpha: f64, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let diag: Vec<f64> = (0..k).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..k).map(|i| (i as f64 * (i as f64 + alpha)).sqrt()).collect();
    let mut nodes = tridiagonal_eigenvalues(diag, &off)?;
    let mut log_w = vec![0.0; k];
    let kf = k as f64;
    let lead = (kf * (kf + alpha)).sqrt();
    for (x, lw) in nodes.iter_mut().zip(log_w.iter_mut()) {
        // Newton polish on p_K, x p_K' = K p_K − √(K(K+α)) p_{K−1}
        for _ in 0..2 {
            let v = laguerre_log_values(alpha, k + 1, *x);
            let (lk, sk) = v[k];
            let (lk1, sk1) = v[k - 1];
            let ratio = sk1 * sk * (lk1 - lk).exp();
            let step = *x / (kf - lead * ratio);
            if step.is_finite() && step.abs() < 1e-6 * x.abs() {
                *x -= step;
            }
        }
        // Christoffel: 1/w = Σ_{k<K} p_k(x)²
        let v = laguerre_log_values(alpha, k, *x);
        let top = v.iter().fold(f64::NEG_INFINITY, |m, &(l, _)| m.max(l));
        let sum: f64 = v.iter().map(|&(l, _)| (2.0 * (l - top)).exp()).sum();
        *lw = -(2.0 * top + sum.ln());
    }
    Ok((nodes, log_w))
}
