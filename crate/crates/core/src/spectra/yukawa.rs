use super::types::{AfmResult, Internals, Kinematics};
use crate::afm::{Bound, PrincipalNumber};
use crate::error::{domain, Error, Result};
use crate::rootkit::{bracketed_root, lambert_w_m1_offset_plus_one, RootBracket};
#[allow(unused_imports)]
use num_traits::Float;

/// Reduced-unit solution of √(q² + χ²) − g e^{−x}/x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YukawaReduced {
    pub chi: f64,
    pub g: f64,
    pub nu0: f64,
    pub energy: f64,
    /// χ√(1 − g²ν²/N²) − gν/W₋₁(−ν/e) at ν₀
    pub energy_alt: f64,
}

// √(1 − ρ²(1−η)²) without cancellation near ρ = 1, η = 0.
fn radical(rho: f64, eta: f64) -> f64 {
    ((1.0 - rho) * (1.0 + rho) + rho * rho * eta * (2.0 - eta)).max(0.0).sqrt()
}

// Stationarity condition in η = 1 − ν.
fn stationarity(chi: f64, g: f64, n: f64, eta: f64) -> f64 {
    let nu = 1.0 - eta;
    let w1 = lambert_w_m1_offset_plus_one(eta).unwrap_or(f64::NAN);
    w1 + n * n / (chi * nu * g) * radical(g / n, eta)
}

fn reduced_energy(chi: f64, g: f64, n: f64, nu: f64, s: f64) -> f64 {
    (chi * n * n + chi * chi * g * nu * s) / (chi * g * nu + n * n * s)
}

/// Yukawa levels in reduced units χ = m/β, g = α/σ.
pub fn yukawa_energy_reduced(chi: f64, g: f64, n: f64) -> Result<YukawaReduced> {
    if !(chi > 0.0) || !chi.is_finite() {
        return Err(domain("chi", chi));
    }
    if !(g > 0.0) || !g.is_finite() {
        return Err(domain("g", g));
    }
    if !(n > 0.0) {
        return Err(domain("N", n));
    }
    if chi < n {
        return Err(Error::NoSpectrum);
    }
    if g > n {
        return Err(Error::CriticalExceeded);
    }
    if g == n {
        return Ok(YukawaReduced {
            chi,
            g,
            nu0: 1.0,
            energy: n,
            energy_alt: n,
        });
    }
    // first sign change going down from ν = 1 is the physical root
    let mut prev = 1e-300f64;
    let mut found = None;
    let mut eta = prev;
    while eta < 1.0 - 1e-12 {
        if stationarity(chi, g, n, eta) < 0.0 {
            found = Some((prev, eta));
            break;
        }
        prev = eta;
        eta = if eta < 1e-3 { eta * 2.0 } else { (eta + 0.01 * (1.0 - eta)).min(1.0 - 1e-12) };
        if eta == prev {
            break;
        }
    }
    let (lo, hi) = found.ok_or(Error::NoBoundState)?;
    let eta0 = bracketed_root(|e| stationarity(chi, g, n, e), RootBracket::new(lo, hi).with_tolerance(0.0))?;
    let nu0 = 1.0 - eta0;
    let s = radical(g / n, eta0);
    let energy = reduced_energy(chi, g, n, nu0, s);
    if energy >= chi {
        return Err(Error::NoBoundState);
    }
    let w = lambert_w_m1_offset_plus_one(eta0)? - 1.0;
    let energy_alt = chi * s - g * nu0 / w;
    Ok(YukawaReduced {
        chi,
        g,
        nu0,
        energy,
        energy_alt,
    })
}

/// σ√(p² + m²) − α e^{−βr}/r, energy σβ·E_y.
pub fn yukawa_energy(alpha: f64, beta: f64, kin: Kinematics, n: impl Into<PrincipalNumber>) -> Result<AfmResult> {
    let n = n.into();
    kin.validate()?;
    if !(alpha > 0.0) {
        return Err(domain("alpha", alpha));
    }
    if !(beta > 0.0) {
        return Err(domain("beta", beta));
    }
    if !(kin.mass > 0.0) {
        return Err(domain("mass", kin.mass));
    }
    let chi = kin.mass / beta;
    let g = alpha / kin.sigma;
    let r = yukawa_energy_reduced(chi, g, n.value)?;
    let mut internals = Internals::default();
    internals.push("chi", chi);
    internals.push("g", g);
    internals.push("nu0", r.nu0);
    internals.push("E_y", r.energy);
    internals.push("E_alt", kin.sigma * beta * r.energy_alt);
    Ok(AfmResult {
        energy: kin.sigma * beta * r.energy,
        nu0: r.nu0,
        internals,
        bound: Bound::Unknown,
    })
}

/// Large-χ form g + (χ − N²/(2χ))√(1 − g²/N²).
pub fn yukawa_energy_largemass(chi: f64, g: f64, n: f64) -> f64 {
    let rho = g / n;
    g + (chi - n * n / (2.0 * chi)) * ((1.0 - rho) * (1.0 + rho)).max(0.0).sqrt()
}

/// f(y) = y e^{√(1−y²)}/(1 + √(1−y²)), increasing on [0, 1] from 0 to 1.
pub fn critical_height_ratio(y: f64) -> f64 {
    let s = ((1.0 - y) * (1.0 + y)).max(0.0).sqrt();
    y * s.exp() / (1.0 + s)
}

/// y with f(y) = r, r ∈ [0, 1].
pub fn critical_height_ratio_inverse(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain("ratio", r));
    }
    if r == 0.0 || r == 1.0 {
        return Ok(r);
    }
    bracketed_root(|y| critical_height_ratio(y) - r, RootBracket::new(0.0, 1.0).with_tolerance(0.0))
}

/// g above which the (n, l) level lies below the rest energy χ: N·f(N/χ).
pub fn yukawa_critical_height(chi: f64, n: f64) -> Result<f64> {
    if !(chi > 0.0) {
        return Err(domain("chi", chi));
    }
    if !(n > 0.0) {
        return Err(domain("N", n));
    }
    if chi < n {
        return Err(Error::NoSpectrum);
    }
    Ok(n * critical_height_ratio(n / chi))
}

/// Existence of the level with principal number `n` given the ground-state
/// number `n_ground`: m > βN/f⁻¹(N₀₀/N) and g_crit < α/σ < N₀₀.
pub fn yukawa_ground_state_exists(alpha: f64, beta: f64, kin: Kinematics, n: f64, n_ground: f64) -> bool {
    let ratio = (n_ground / n).min(1.0);
    let y = match critical_height_ratio_inverse(ratio) {
        Ok(y) if y > 0.0 => y,
        _ => return false,
    };
    if !(kin.mass > beta * n / y) {
        return false;
    }
    let g = alpha / kin.sigma;
    match yukawa_critical_height(kin.mass / beta, n) {
        Ok(gc) => gc < g && g < n_ground,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn reduced_example() {
        let r = yukawa_energy_reduced(10.0, 0.5, 1.0).unwrap();
        assert!((r.nu0 - 0.986).abs() < 1e-3);
        assert!((r.energy - 9.12).abs() < 5e-3);
        assert_relative_eq!(r.energy, r.energy_alt, max_relative = 1e-10);
        assert!((r.energy - yukawa_energy_largemass(10.0, 0.5, 1.0)).abs() < 0.01);
    }

    #[test]
    fn coulomb_limit() {
        let (alpha, sigma, m, n) = (1.0, 2.0, 1.0, 1.0);
        let k = Kinematics::new(sigma, m).unwrap();
        let r = yukawa_energy(alpha, 1e-9, k, n).unwrap();
        let c = sigma * m * (1.0 - alpha * alpha / (sigma * sigma * n * n)).sqrt();
        assert_relative_eq!(r.energy, c, max_relative = 1e-6);
    }

    #[test]
    fn critical_coupling_edges() {
        let r = yukawa_energy_reduced(5.0, 1.0, 1.0).unwrap();
        assert_eq!((r.nu0, r.energy), (1.0, 1.0));
        let r = yukawa_energy_reduced(5.0, 1.0 - 1e-9, 1.0).unwrap();
        assert!((r.energy - 1.0).abs() < 1e-3);
        assert_eq!(yukawa_energy_reduced(5.0, 1.1, 1.0), Err(Error::CriticalExceeded));
        assert_eq!(yukawa_energy_reduced(0.5, 0.3, 1.0), Err(Error::NoSpectrum));
        let gc = yukawa_critical_height(5.0, 1.0).unwrap();
        assert_eq!(yukawa_energy_reduced(5.0, 0.9 * gc, 1.0), Err(Error::NoBoundState));
        assert!(yukawa_energy_reduced(5.0, 1.1 * gc, 1.0).is_ok());
    }

    #[test]
    fn largemass_forms() {
        assert_relative_eq!(yukawa_energy_largemass(10.0, 0.0, 1.0), 10.0 - 0.05, max_relative = 1e-15);
        assert_eq!(yukawa_energy_largemass(10.0, 1.0, 1.0), 1.0);
        let r = yukawa_energy_reduced(100.0, 0.5, 1.0).unwrap();
        let a = yukawa_energy_largemass(100.0, 0.5, 1.0);
        assert!(((r.energy - a) / r.energy).abs() < 1e-3);
    }

    #[test]
    fn critical_heights() {
        assert_eq!(yukawa_critical_height(1.0, 1.0).unwrap(), 1.0);
        assert!((yukawa_critical_height(2.0, 1.0).unwrap() - 0.637034).abs() < 1e-6);
        let chi = 1e4;
        let g = yukawa_critical_height(chi, 1.0).unwrap();
        assert_relative_eq!(chi * g, core::f64::consts::E / 2.0, max_relative = 1e-3);
        assert_eq!(yukawa_critical_height(0.5, 1.0), Err(Error::NoSpectrum));
        assert_eq!(critical_height_ratio(0.0), 0.0);
        assert_eq!(critical_height_ratio(1.0), 1.0);
    }

    #[test]
    fn existence_predicate() {
        let k = Kinematics::new(1.0, 10.0).unwrap();
        assert!(yukawa_ground_state_exists(0.5, 1.0, k, 1.0, 1.0));
        assert!(!yukawa_ground_state_exists(1.5, 1.0, k, 1.0, 1.0));
        assert!(!yukawa_ground_state_exists(0.05, 1.0, k, 1.0, 1.0));
        let k = Kinematics::new(1.0, 0.5).unwrap();
        assert!(!yukawa_ground_state_exists(0.5, 1.0, k, 1.0, 1.0));
        // an excited level needs a larger χ
        let k = Kinematics::new(1.0, 2.5).unwrap();
        assert!(!yukawa_ground_state_exists(0.9, 1.0, k, 3.0, 1.0));
    }

    proptest! {
        #[test]
        fn ratio_monotone_and_invertible(y in 0.0f64..1.0, dy in 1e-6f64..0.1) {
            let y2 = (y + dy).min(1.0);
            prop_assert!(critical_height_ratio(y2) > critical_height_ratio(y));
            let r = critical_height_ratio(y);
            let yi = critical_height_ratio_inverse(r).unwrap();
            prop_assert!((yi - y).abs() <= 1e-9);
        }

        #[test]
        fn reduced_solution(chi_over_n in 1.05f64..1e3, t in 0.01f64..0.99, n in 0.8f64..5.0) {
            let chi = chi_over_n * n;
            let gc = yukawa_critical_height(chi, n).unwrap();
            let g = gc + t * (n - gc);
            let r = yukawa_energy_reduced(chi, g, n).unwrap();
            prop_assert!(r.nu0 > 0.0 && r.nu0 <= 1.0);
            prop_assert!(g * r.nu0 / n <= 1.0);
            prop_assert!((r.energy - r.energy_alt).abs() <= 1e-9 * r.energy);
            prop_assert!(r.energy < chi && r.energy >= n * (1.0 - 1e-12));
            let g2 = g + 0.5 * (n - g);
            let r2 = yukawa_energy_reduced(chi, g2, n).unwrap();
            prop_assert!(r2.energy < r.energy);
        }
    }
}
