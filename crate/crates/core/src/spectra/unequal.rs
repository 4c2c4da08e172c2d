use crate::error::{domain, Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// |p| + √(p² + m²) − a/r: 2m√(a/(2N)·(1 − a/(2N))).
pub fn unequal_coulomb_massless_energy(a: f64, m: f64, n: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain("a", a));
    }
    if !(m >= 0.0) {
        return Err(domain("m", m));
    }
    if !(n > 0.0) {
        return Err(domain("N", n));
    }
    let t = a / (2.0 * n);
    if t >= 1.0 {
        return Err(Error::NoBoundState);
    }
    Ok(2.0 * m * (t * (1.0 - t)).sqrt())
}

/// Ground state of a mixed-mass pair is at least the mean of the two
/// symmetrized ground states.
pub fn two_body_average_lower_bound(e1: f64, e2: f64) -> f64 {
    0.5 * (e1 + e2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((unequal_coulomb_massless_energy(1.0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(unequal_coulomb_massless_energy(1.0, 0.0, 1.0).unwrap(), 0.0);
        assert!(unequal_coulomb_massless_energy(1e-12, 1.0, 1.0).unwrap() < 2e-6);
        assert_eq!(unequal_coulomb_massless_energy(2.0, 1.0, 1.0), Err(Error::NoBoundState));
        assert_eq!(two_body_average_lower_bound(1.5, 1.5), 1.5);
        assert_eq!(two_body_average_lower_bound(1.0, 2.0), 1.5);
    }
}
