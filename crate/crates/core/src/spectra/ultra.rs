use crate::afm::nr_powerlaw_energy;
use crate::error::{domain, Error, Result};
use crate::rootkit::airy_zero;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// σ|p| + a·sgn(λ)·r^λ: ((λ+1)/λ)·|aλ|^{1/(λ+1)}·(σN)^{λ/(λ+1)}.
/// Negative for λ ∈ (−1, 0) and zero at λ = −1; see [`ur_powerlaw_checked`].
pub fn ur_powerlaw_energy(a: f64, lambda: f64, sigma: f64, n: f64) -> f64 {
    if lambda == -1.0 {
        return 0.0;
    }
    let q = lambda + 1.0;
    q / lambda * (a * lambda).abs().powf(1.0 / q) * (sigma * n).powf(lambda / q)
}

/// [`ur_powerlaw_energy`] with NoBoundState for λ ∈ [−1, 0) and domain checks.
pub fn ur_powerlaw_checked(a: f64, lambda: f64, sigma: f64, n: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain("a", a));
    }
    if !(sigma > 0.0) {
        return Err(domain("sigma", sigma));
    }
    if !(n > 0.0) {
        return Err(domain("N", n));
    }
    if !lambda.is_finite() || lambda <= -2.0 || lambda == 0.0 {
        return Err(domain("lambda", lambda));
    }
    if lambda < -1.0 {
        return Err(Error::Unphysical);
    }
    if lambda < 0.0 {
        return Err(Error::NoBoundState);
    }
    Ok(ur_powerlaw_energy(a, lambda, sigma, n))
}

/// Nonrelativistic spectrum at exponent 2λ evaluated at the dual point
/// (a^{(1+2λ)/(1+λ)}, ν = a^{1/(1+λ)}/σ, √N); equals the ultrarelativistic one at λ.
pub fn nr_dual_of_ur(a: f64, lambda: f64, sigma: f64, n: f64) -> Result<f64> {
    let q = 1.0 + lambda;
    nr_powerlaw_energy(a.powf((1.0 + 2.0 * lambda) / q), 2.0 * lambda, a.powf(1.0 / q) / sigma, n.sqrt())
}

/// Exact l = 0 levels of 2|p| + a r², −(4a)^{1/3}·α_n.
pub fn ur_harmonic_exact(a: f64, n: u32) -> f64 {
    -(4.0 * a).cbrt() * airy_zero(n)
}

/// WKB form of [`ur_harmonic_exact`], 3(√a(πn/√3 + π√3/4))^{2/3}.
pub fn ur_harmonic_wkb(a: f64, n: u32) -> f64 {
    let s3 = 3f64.sqrt();
    3.0 * (a.sqrt() * (PI * n as f64 / s3 + PI * s3 / 4.0)).powf(2.0 / 3.0)
}
