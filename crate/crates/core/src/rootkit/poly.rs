use crate::error::{domain, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Sign in x³ ± 3x − 2Y = 0 and 4x⁴ ± 8x − 3Y = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

// Above this the radical forms overflow; the asymptotic seed plus Newton is used instead.
const HUGE_Y: f64 = 1e60;

/// Unique positive root F±(Y) of x³ ± 3x − 2Y = 0.
pub fn cubic_f(sign: Sign, y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(domain("Y", y));
    }
    let s = sign.factor();
    let mut x = if y > HUGE_Y {
        (2.0 * y).cbrt()
    } else {
        match sign {
            Sign::Plus => {
                // t^{1/3} - t^{-1/3} without the cancellation at small Y
                let t = y + (y * y + 1.0).sqrt();
                let t23 = t.cbrt().powi(2);
                2.0 * y * t23 / (t23 * t23 + t23 + 1.0)
            }
            Sign::Minus if y < 1.0 => 2.0 * (y.acos() / 3.0).cos(),
            Sign::Minus => {
                let t = y + (y * y - 1.0).sqrt();
                let c = t.cbrt();
                c + 1.0 / c
            }
        }
    };
    for _ in 0..8 {
        let r = x * x * x + 3.0 * s * x - 2.0 * y;
        let dx = r / (3.0 * x * x + 3.0 * s);
        if !dx.is_finite() {
            break;
        }
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    Ok(x)
}

/// Unique nonnegative root G±(Y) of 4x⁴ ± 8x − 3Y = 0.
pub fn quartic_g(sign: Sign, y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(domain("Y", y));
    }
    if sign == Sign::Plus && y == 0.0 {
        return Ok(0.0);
    }
    let s = sign.factor();
    let mut x = if y > HUGE_Y {
        (0.75 * y).powf(0.25)
    } else {
        // V(Y) = s^{1/3} - Y s^{-1/3}, rewritten so nothing cancels
        let sy = 2.0 + (4.0 + y * y * y).sqrt();
        let s23 = sy.cbrt().powi(2);
        let v = 4.0 * s23 / (s23 * s23 + y * s23 + y * y);
        let rv = v.sqrt();
        -s * 0.5 * rv + 0.5 * (4.0 / rv - v).max(0.0).sqrt()
    };
    for _ in 0..8 {
        let r = 4.0 * x.powi(4) + 8.0 * s * x - 3.0 * y;
        let dx = r / (16.0 * x * x * x + 8.0 * s);
        if !dx.is_finite() {
            break;
        }
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    Ok(x)
}
