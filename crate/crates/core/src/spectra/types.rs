use crate::afm::Bound;
use crate::error::{domain, Error, Result};
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Kinetic term σ√(p² + m²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub sigma: f64,
    pub mass: f64,
}

impl Kinematics {
    pub fn new(sigma: f64, mass: f64) -> Result<Self> {
        let k = Kinematics { sigma, mass };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(domain("sigma", self.sigma));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return Err(domain("mass", self.mass));
        }
        Ok(())
    }
}

/// Central potential V(r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    /// a·sgn(λ)·r^λ
    PowerLaw { a: f64, lambda: f64 },
    /// a r − b/r
    Funnel { a: f64, b: f64 },
    /// √(a²r² + b²)
    SquareRoot { a: f64, b: f64 },
    /// −α e^{−βr}/r
    Yukawa { alpha: f64, beta: f64 },
}

impl PotentialSpec {
    pub fn coulomb(a: f64) -> Self {
        PotentialSpec::PowerLaw { a, lambda: -1.0 }
    }

    pub fn linear(a: f64) -> Self {
        PotentialSpec::PowerLaw { a, lambda: 1.0 }
    }

    pub fn harmonic(a: f64) -> Self {
        PotentialSpec::PowerLaw { a, lambda: 2.0 }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            PotentialSpec::PowerLaw { a, lambda } => {
                if lambda == 1.0 {
                    a * r
                } else if lambda == 2.0 {
                    a * r * r
                } else if lambda == -1.0 {
                    -a / r
                } else {
                    a * lambda.signum() * r.powf(lambda)
                }
            }
            PotentialSpec::Funnel { a, b } => a * r - b / r,
            PotentialSpec::SquareRoot { a, b } => (a * a * r * r + b * b).sqrt(),
            PotentialSpec::Yukawa { alpha, beta } => -alpha * (-beta * r).exp() / r,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |what, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(domain(what, v))
            }
        };
        let nonneg = |what, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(domain(what, v))
            }
        };
        match *self {
            PotentialSpec::PowerLaw { a, lambda } => {
                positive("a", a)?;
                if !lambda.is_finite() || lambda <= -2.0 || lambda == 0.0 {
                    return Err(domain("lambda", lambda));
                }
                if lambda < -1.0 {
                    return Err(Error::Unphysical);
                }
                Ok(())
            }
            PotentialSpec::Funnel { a, b } | PotentialSpec::SquareRoot { a, b } => {
                positive("a", a)?;
                nonneg("b", b)
            }
            PotentialSpec::Yukawa { alpha, beta } => {
                positive("alpha", alpha)?;
                positive("beta", beta)
            }
        }
    }

    /// Strength of the −κ/r singularity at the origin (0 if none).
    pub fn coulomb_strength(&self) -> f64 {
        match *self {
            PotentialSpec::PowerLaw { a, lambda: -1.0 } => a,
            PotentialSpec::Funnel { b, .. } => b,
            PotentialSpec::Yukawa { alpha, .. } => alpha,
            _ => 0.0,
        }
    }

    /// Limit of V at infinity when finite; levels above it are not bound.
    pub fn threshold(&self) -> Option<f64> {
        match *self {
            PotentialSpec::PowerLaw { lambda, .. } if lambda < 0.0 => Some(0.0),
            PotentialSpec::Yukawa { .. } => Some(0.0),
            _ => None,
        }
    }
}

/// Named solver intermediates in insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Internals(pub Vec<(&'static str, f64)>);

impl Internals {
    pub fn push(&mut self, name: &'static str, value: f64) {
        self.0.push((name, value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(&'static str, f64)> {
        self.0.iter()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AfmResult {
    pub energy: f64,
    pub nu0: f64,
    pub internals: Internals,
    pub bound: Bound,
}
