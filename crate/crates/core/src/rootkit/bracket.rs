use crate::error::{Error, Result};

/// Search interval for [`bracketed_root`]. `tolerance` is absolute in x; the
/// solver always adds a few ulps of relative slack on top of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub tolerance: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64) -> Self {
        RootBracket {
            lo,
            hi,
            tolerance: 0.0,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

/// Brent's method: bisection with inverse-quadratic/secant steps that are only
/// accepted while they shrink the bracket fast enough.
pub fn bracketed_root<F: FnMut(f64) -> f64>(mut f: F, bracket: RootBracket) -> Result<f64> {
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo: a, hi: b });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..400 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * bracket.tolerance;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bracketed_root(|x| x * x - 2.0, RootBracket::new(1.0, 2.0)).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn endpoint_root() {
        let r = bracketed_root(|x| x - 1.0, RootBracket::new(1.0, 3.0)).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn no_sign_change() {
        let r = bracketed_root(|x| x * x + 1.0, RootBracket::new(-1.0, 1.0));
        assert!(matches!(r, Err(Error::Bracket { .. })));
    }

    #[test]
    fn loose_tolerance_is_respected() {
        let br = RootBracket::new(0.0, 10.0).with_tolerance(1e-3);
        let r = bracketed_root(|x| x - 2.71, br).unwrap();
        assert!((r - 2.71).abs() < 1e-3);
    }
}
