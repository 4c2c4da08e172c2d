use crate::error::{domain, Result};
use crate::rootkit::{cubic_f, Sign};
#[allow(unused_imports)]
use num_traits::Float;

/// AFM levels of p²/ν + a·sgn(λ)·r^λ:
/// e = ((2+λ)/λ)·|aλ/2|^{2/(λ+2)}·(N²/ν)^{λ/(λ+2)}.
pub fn nr_powerlaw_energy(a: f64, lambda: f64, nu: f64, n: f64) -> Result<f64> {
    if !(lambda > -2.0) || lambda == 0.0 {
        return Err(domain("lambda", lambda));
    }
    if !(a > 0.0) {
        return Err(domain("a", a));
    }
    if !(nu > 0.0) {
        return Err(domain("nu", nu));
    }
    if !(n > 0.0) {
        return Err(domain("N", n));
    }
    let p = lambda + 2.0;
    Ok(p / lambda * (a * lambda / 2.0).abs().powf(2.0 / p) * (n * n / nu).powf(lambda / p))
}

/// AFM levels of p²/ν + a r − b/r, e = √(3ab)·(Y/F₊² − 2/F₊) with
/// Y = 3N²√(3a/(ν²b³)). b = 0 falls back to the linear formula.
pub fn nr_funnel_energy(a: f64, b: f64, nu: f64, n: f64) -> Result<f64> {
    let (y, f) = match funnel_y(a, b, nu, n)? {
        Some(v) => v,
        None => return nr_powerlaw_energy(a, 1.0, nu, n),
    };
    Ok((3.0 * a * b).sqrt() * (y / (f * f) - 2.0 / f))
}

/// Same levels through the equivalent form √(3ab)·(F₊ − 1/F₊)/2.
pub fn nr_funnel_energy_alt(a: f64, b: f64, nu: f64, n: f64) -> Result<f64> {
    let (_, f) = match funnel_y(a, b, nu, n)? {
        Some(v) => v,
        None => return nr_powerlaw_energy(a, 1.0, nu, n),
    };
    Ok((3.0 * a * b).sqrt() * 0.5 * (f - 1.0 / f))
}

fn funnel_y(a: f64, b: f64, nu: f64, n: f64) -> Result<Option<(f64, f64)>> {
    if !(a > 0.0) {
        return Err(domain("a", a));
    }
    if !(b >= 0.0) {
        return Err(domain("b", b));
    }
    if !(nu > 0.0) {
        return Err(domain("nu", nu));
    }
    if !(n > 0.0) {
        return Err(domain("N", n));
    }
    if b == 0.0 {
        return Ok(None);
    }
    let y = 3.0 * n * n * (3.0 * a / (nu * nu * b * b * b)).sqrt();
    if !y.is_finite() {
        return Ok(None);
    }
    Ok(Some((y, cubic_f(Sign::Plus, y)?)))
}
