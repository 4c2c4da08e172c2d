use super::types::{AfmResult, Internals, Kinematics};
use crate::afm::{Bound, PrincipalNumber, Provenance};
use crate::error::{domain, Error, Result};
use crate::rootkit::{bracketed_root, cubic_f, quartic_g, RootBracket, Sign};
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Upper estimate of the critical semirelativistic Coulomb ground state, E/(σm) at a = 2σ/π.
pub const COULOMB_CRITICAL_GROUND_FACTOR: f64 = 0.4842564;

/// a_c(λ) = σ (N/√|λ|)^|λ| (m²/(1+λ))^{(1+λ)/2}; a_c(−1) = σN.
pub fn critical_coupling_powerlaw(lambda: f64, sigma: f64, m: f64, n: f64) -> Result<f64> {
    if !(-1.0..0.0).contains(&lambda) {
        return Err(domain("lambda", lambda));
    }
    if lambda == -1.0 {
        return Ok(sigma * n);
    }
    if !(m > 0.0) {
        return Err(domain("m", m));
    }
    let al = lambda.abs();
    Ok(sigma * (n / al.sqrt()).powf(al) * (m * m / (1.0 + lambda)).powf(0.5 * (1.0 + lambda)))
}

/// E/(σm) = √(1 − 4/(π²N²)) of the closed Coulomb form at a = 2σ/π.
pub fn coulomb_critical_factor(n: f64) -> f64 {
    (1.0 - 4.0 / (PI * PI * n * n)).sqrt()
}

/// N for which [`coulomb_critical_factor`] equals `factor`.
pub fn coulomb_n_for_factor(factor: f64) -> f64 {
    2.0 / (PI * (1.0 - factor * factor).sqrt())
}

fn bound_for(lambda: f64, p: Provenance) -> Bound {
    match p {
        Provenance::Harmonic if lambda <= 2.0 => Bound::Upper,
        Provenance::CoulombLike if lambda == -1.0 => Bound::Upper,
        _ => Bound::Unknown,
    }
}

/// σ√(p²+m²) + a·sgn(λ)·r^λ through the elimination equation
/// σ²/4·x^{λ+2} − A x − m² = 0, ν₀ = x^{(λ+2)/2}.
pub fn sr_powerlaw_energy(a: f64, lambda: f64, kin: Kinematics, n: impl Into<PrincipalNumber>) -> Result<AfmResult> {
    let n = n.into();
    kin.validate()?;
    let (sigma, m) = (kin.sigma, kin.mass);
    let nv = n.value;
    if !(a > 0.0) {
        return Err(domain("a", a));
    }
    if !(nv > 0.0) {
        return Err(domain("N", nv));
    }
    if !lambda.is_finite() || lambda <= -2.0 || lambda == 0.0 {
        return Err(domain("lambda", lambda));
    }
    if lambda < -1.0 {
        return Err(Error::Unphysical);
    }
    let p = lambda + 2.0;
    let big_a = (a * lambda / 2.0).abs().powf(2.0 / p) * nv.powf(2.0 * lambda / p);
    let mut internals = Internals::default();
    internals.push("A", big_a);
    let s2 = sigma * sigma;
    let x0 = if lambda == -1.0 {
        if m == 0.0 || a >= sigma * nv {
            return Err(Error::NoBoundState);
        }
        4.0 * m * m / (s2 - 4.0 * big_a)
    } else if lambda < 0.0 {
        if m == 0.0 || a >= critical_coupling_powerlaw(lambda, sigma, m, nv)? {
            return Err(Error::NoBoundState);
        }
        solve_elimination(lambda, sigma, m, big_a)?
    } else if lambda == 1.0 {
        let y1 = 1.5 * 3f64.sqrt() * sigma * m * m / (a * nv);
        internals.push("Y1", y1);
        2.0 * (big_a / (3.0 * s2)).sqrt() * cubic_f(Sign::Minus, y1)?
    } else if lambda == 2.0 {
        let y2 = m * m / 3.0 * (16.0 * sigma / (a * nv * nv)).powf(2.0 / 3.0);
        internals.push("Y2", y2);
        (2.0 * big_a / s2).cbrt() * quartic_g(Sign::Minus, y2)?
    } else {
        solve_elimination(lambda, sigma, m, big_a)?
    };
    internals.push("x0", x0);
    let nu0 = x0.powf(0.5 * p);
    internals.push("nu0", nu0);
    let energy = if lambda == -1.0 {
        sigma * m * (1.0 - a * a / (s2 * nv * nv)).sqrt()
    } else {
        sigma / lambda * (lambda * m * m + (lambda + 1.0) * big_a * x0) / (m * m + big_a * x0).sqrt()
    };
    let energy_alt = 2.0 / lambda * ((lambda + 1.0) * 0.25 * s2 * nu0 - m * m / nu0);
    internals.push("E_alt", energy_alt);
    Ok(AfmResult {
        energy,
        nu0,
        internals,
        bound: bound_for(lambda, n.provenance),
    })
}

// Positive root of σ²/4·x^{λ+2} − A x − m², λ > −1.
fn solve_elimination(lambda: f64, sigma: f64, m: f64, big_a: f64) -> Result<f64> {
    let q = 0.25 * sigma * sigma;
    let x_ur = (big_a / q).powf(1.0 / (lambda + 1.0));
    if m == 0.0 {
        return Ok(x_ur);
    }
    let g = |x: f64| q * x.powf(lambda + 2.0) - big_a * x - m * m;
    let mut hi = x_ur.max((m * m / q).powf(1.0 / (lambda + 2.0)));
    let mut guard = 0;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 2000 {
            return Err(Error::Bracket { lo: 0.0, hi });
        }
    }
    bracketed_root(g, RootBracket::new(0.0, hi))
}
