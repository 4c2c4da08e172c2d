use crate::error::{domain, Result};
use core::f64::consts::E;
#[allow(unused_imports)]
use num_traits::Float;

/// Secondary real branch W₋₁(x), x ∈ [−1/e, 0), w ≤ −1.
pub fn lambert_w_m1(x: f64) -> Result<f64> {
    if !(x < 0.0) {
        return Err(domain("x", x));
    }
    let q = E.mul_add(x, 1.0);
    if q < -4.0 * f64::EPSILON {
        return Err(domain("x", x));
    }
    if q < 0.5 {
        Ok(-1.0 + near_branch(q.max(0.0)))
    } else {
        Ok(halley(x))
    }
}

/// W₋₁ evaluated from the branch offset q = 1 + e·x ∈ [0, 1).
///
/// Near the branch point q carries the information that x = (q − 1)/e would lose
/// to rounding, so callers that know q directly should use this entry.
pub fn lambert_w_m1_offset(q: f64) -> Result<f64> {
    if !(q >= 0.0) || !(q < 1.0) {
        return Err(domain("q", q));
    }
    if q < 0.5 {
        Ok(-1.0 + near_branch(q))
    } else {
        Ok(halley((q - 1.0) / E))
    }
}

/// 1 + W₋₁ from the branch offset q, without the cancellation of adding 1 to W ≈ −1.
pub fn lambert_w_m1_offset_plus_one(q: f64) -> Result<f64> {
    if !(q >= 0.0) || !(q < 1.0) {
        return Err(domain("q", q));
    }
    if q < 0.5 {
        Ok(near_branch(q))
    } else {
        Ok(1.0 + halley((q - 1.0) / E))
    }
}

// Solve h(t) = q with w = −1 + t, t ≤ 0, where h(t) = w·e^{w+1} + 1 = t·e^t − (e^t − 1).
fn near_branch(q: f64) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    let p = -(2.0 * q).sqrt();
    let mut t = p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    for _ in 0..30 {
        let et = t.exp();
        let r = h(t) - q;
        let d1 = t * et;
        let d2 = (1.0 + t) * et;
        let step = r / (d1 - 0.5 * r * d2 / d1);
        if !step.is_finite() {
            break;
        }
        t -= step;
        if t > 0.0 {
            t = -1e-300;
        }
        if step.abs() <= 2.0 * f64::EPSILON * t.abs() {
            break;
        }
    }
    t
}

// Σ_{k≥2} (k−1) t^k / k! for small |t|, closed form otherwise.
fn h(t: f64) -> f64 {
    if t.abs() < 0.5 {
        let mut term = t;
        let mut sum = 0.0;
        for k in 2..40 {
            term *= t / k as f64;
            let add = (k - 1) as f64 * term;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        t * t.exp() - t.exp_m1()
    }
}

fn halley(x: f64) -> f64 {
    let l1 = (-x).ln();
    let l2 = (-l1).ln();
    let mut w = l1 - l2 + l2 / l1;
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= 2.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn branch_point() {
        assert!((lambert_w_m1(-1.0 / E).unwrap() + 1.0).abs() < 1e-7);
        assert_eq!(lambert_w_m1_offset(0.0).unwrap(), -1.0);
        assert_eq!(lambert_w_m1_offset_plus_one(0.0).unwrap(), 0.0);
        // 1 + W ≈ −√(2q) − 2q/3 near the branch point
        let q = 1e-200;
        let t = lambert_w_m1_offset_plus_one(q).unwrap();
        assert_relative_eq!(t, -(2.0 * q).sqrt(), max_relative = 1e-12);
        let q = 0.7;
        assert_relative_eq!(lambert_w_m1_offset_plus_one(q).unwrap(), 1.0 + lambert_w_m1_offset(q).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn exact_points() {
        assert_relative_eq!(lambert_w_m1(-2.0 * (-2.0f64).exp()).unwrap(), -2.0, max_relative = 1e-14);
        // Newton on w e^w + 0.1 = 0 from w = -3.5
        let mut w = -3.5f64;
        for _ in 0..50 {
            w -= (w * w.exp() + 0.1) / (w.exp() * (w + 1.0));
        }
        assert_relative_eq!(lambert_w_m1(-0.1).unwrap(), w, max_relative = 1e-14);
        assert!((w + 3.577152).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        assert!(lambert_w_m1(0.0).is_err());
        assert!(lambert_w_m1(0.1).is_err());
        assert!(lambert_w_m1(-0.5).is_err());
        assert!(lambert_w_m1_offset(1.0).is_err());
        assert!(lambert_w_m1_offset(-0.1).is_err());
    }

    #[test]
    fn offset_matches_plain_form() {
        for q in [1e-12, 1e-6, 0.01, 0.3, 0.49, 0.51, 0.9] {
            let a = lambert_w_m1_offset(q).unwrap();
            let b = lambert_w_m1((q - 1.0) / E).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
        // the offset form keeps full precision next to the branch point
        let t: f64 = -1e-6;
        let q = h(t);
        assert_relative_eq!(lambert_w_m1_offset(q).unwrap() + 1.0, t, max_relative = 1e-10);
    }

    proptest! {
        #[test]
        fn round_trip(w in -30.0f64..-1.0) {
            let x = w * w.exp();
            let back = lambert_w_m1(x).unwrap();
            // the condition number blows up at w = -1; scale the bound accordingly
            let tol = 1e-12_f64.max(4.0 * f64::EPSILON / (w + 1.0).abs());
            prop_assert!((back - w).abs() <= tol * w.abs(), "w={} back={}", w, back);
        }

        #[test]
        fn residual(x in -0.36787944f64..-1e-250) {
            let w = lambert_w_m1(x).unwrap();
            prop_assert!(w <= -1.0);
            prop_assert!((w * w.exp() - x).abs() <= 1e-13 * x.abs());
        }
    }
}
