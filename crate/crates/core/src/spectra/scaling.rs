use crate::error::{domain, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Length scale `a_scale` of V(a r) and kinetic multiplicity σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFrame {
    pub a_scale: f64,
    pub sigma: f64,
}

impl ScalingFrame {
    pub fn new(a_scale: f64, sigma: f64) -> Result<Self> {
        if !(a_scale > 0.0) || !a_scale.is_finite() {
            return Err(domain("a_scale", a_scale));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(domain("sigma", sigma));
        }
        Ok(ScalingFrame { a_scale, sigma })
    }
}

/// E(m, G, a, σ) = aσ·E(m/a, G/(aσ), 1, 1) for σ√(p²+m²) + G V(a r).
/// `unit` is the energy of √(p²+m'²) + G' V(ρ) as a function of (m', G').
pub fn scaling_reduce<F: Fn(f64, f64) -> f64>(unit: F, m: f64, g: f64, frame: ScalingFrame) -> f64 {
    let s = frame.a_scale * frame.sigma;
    s * unit(m / frame.a_scale, g / s)
}

/// E_λ(m, G, σ) = (σ^λ G)^{1/(λ+1)}·E_λ(χ) for σ√(p²+m²) + G sgn(λ) r^λ,
/// χ = (σ/G)^{1/(λ+1)} m; `unit` solves √(π²+χ²) + sgn(λ) ρ^λ.
pub fn scaling_reduce_powerlaw<F: Fn(f64) -> f64>(unit: F, lambda: f64, m: f64, g: f64, sigma: f64) -> f64 {
    let q = 1.0 / (lambda + 1.0);
    (sigma.powf(lambda) * g).powf(q) * unit((sigma / g).powf(q) * m)
}
