use super::powerlaw::sr_powerlaw_energy;
use super::types::{AfmResult, Kinematics};
use crate::afm::PrincipalNumber;
use crate::error::{domain, Result};
#[allow(unused_imports)]
use num_traits::Float;

fn check(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("a", a));
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(domain("b", b));
    }
    Ok(())
}

/// p²/(2m) + √(a²r² + b²). In momentum space this is a semirelativistic
/// oscillator with σ' = (4a/m²)^{1/3}, mass b/σ' and strength σ'ma/8.
pub fn sqrt_potential_nr_energy(a: f64, b: f64, m_nr: f64, n: impl Into<PrincipalNumber>) -> Result<AfmResult> {
    check(a, b)?;
    if !(m_nr > 0.0) || !m_nr.is_finite() {
        return Err(domain("m_nr", m_nr));
    }
    let sigma = (4.0 * a / (m_nr * m_nr)).cbrt();
    let kin = Kinematics::new(sigma, b / sigma)?;
    let mut r = sr_powerlaw_energy(sigma * m_nr * a / 8.0, 2.0, kin, n)?;
    r.internals.push("sigma_dual", sigma);
    Ok(r)
}

/// σ|p| + √(a²r² + b²): the semirelativistic linear case at mass b/σ.
pub fn sqrt_potential_ur_energy(a: f64, b: f64, sigma: f64, n: impl Into<PrincipalNumber>) -> Result<AfmResult> {
    check(a, b)?;
    let kin = Kinematics::new(sigma, b / sigma)?;
    sr_powerlaw_energy(a, 1.0, kin, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let e = sqrt_potential_nr_energy(1.0, 0.0, 1.0, 1.5).unwrap().energy;
        assert_relative_eq!(e, 1.5 * 1.5f64.powf(2.0 / 3.0), max_relative = 1e-13);
        assert!((e - 1.96556).abs() < 1e-5);
        let r = sqrt_potential_ur_energy(1.0, 1.0, 2.0, 1.5).unwrap();
        assert_relative_eq!(r.internals.get("Y1").unwrap(), 3f64.sqrt() / 2.0, max_relative = 1e-14);
        // F₋(√3/2) = 2cos(π/18)
        let m: f64 = 0.5;
        let big_a = 0.75f64.powf(2.0 / 3.0);
        let x0 = 2.0 * (big_a / 12.0).sqrt() * 2.0 * (core::f64::consts::PI / 18.0).cos();
        let exact = 2.0 * (m * m + 2.0 * big_a * x0) / (m * m + big_a * x0).sqrt();
        assert_relative_eq!(r.energy, exact, max_relative = 1e-13);
        assert!((r.energy - 3.724591).abs() < 1e-6);
        let e0 = sqrt_potential_ur_energy(1.3, 0.0, 2.0, 2.5).unwrap().energy;
        assert_relative_eq!(e0, 2.0 * (1.3f64 * 2.0 * 2.5).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn y2_matches_direct_substitution() {
        let (a, b, m, n) = (1.0, 1.0, 1.0, 1.5);
        let r = sqrt_potential_nr_energy(a, b, m, n).unwrap();
        let y2 = b * b / 3.0 * (32.0 * m / (a * a * n * n)).powf(2.0 / 3.0);
        assert_relative_eq!(r.internals.get("Y2").unwrap(), y2, max_relative = 1e-13);
    }

    #[test]
    fn large_floor() {
        let mut prev = 0.0;
        for &b in &[0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0] {
            let e = sqrt_potential_nr_energy(1.0, b, 1.0, 1.5).unwrap().energy;
            assert!(e > prev);
            prev = e;
        }
        // b + 3/2 ω N-type oscillator term: √(a²/(mb)) N
        let b = 1e4;
        let e = sqrt_potential_nr_energy(1.0, b, 1.0, 1.5).unwrap().energy;
        assert_relative_eq!(e - b, (1.0 / b).sqrt() * 1.5, max_relative = 1e-3);
        let e = sqrt_potential_ur_energy(1.0, 1e6, 2.0, 1.5).unwrap().energy;
        assert_relative_eq!(e / 1e6, 1.0, max_relative = 1e-3);
    }

    proptest! {
        #[test]
        fn monotone_in_b(a in 0.1f64..5.0, b in 0.0f64..5.0, db in 0.01f64..2.0, sigma in 0.5f64..3.0, n in 0.8f64..6.0) {
            let lo = sqrt_potential_ur_energy(a, b, sigma, n).unwrap().energy;
            let hi = sqrt_potential_ur_energy(a, b + db, sigma, n).unwrap().energy;
            prop_assert!(hi > lo);
            let lo = sqrt_potential_nr_energy(a, b, 1.0, n).unwrap().energy;
            let hi = sqrt_potential_nr_energy(a, b + db, 1.0, n).unwrap().energy;
            prop_assert!(hi > lo);
        }
    }
}
