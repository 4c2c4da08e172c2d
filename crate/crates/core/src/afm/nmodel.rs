use crate::error::{domain, Result};
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    /// radial
    pub n: u32,
    /// orbital
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        QuantumNumbers { n, l }
    }
}

/// Rule producing the principal number N(n, l).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NModel {
    /// 2n + l + 3/2
    Harmonic,
    /// n + l + 1
    CoulombLike,
    /// b(λ) n + l + c(λ), rational in λ with ω = √3 π; validated on [−1, 2].
    LambdaFit(f64),
    /// b n + d l + c from a fit.
    LinearFit { b: f64, c: f64, d: f64 },
    /// b n + d l + c supplied by the user.
    Custom { b: f64, c: f64, d: f64 },
}

/// Where a principal number came from; decides whether a closed form is a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Harmonic,
    CoulombLike,
    Fitted,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalNumber {
    pub value: f64,
    pub provenance: Provenance,
}

impl PrincipalNumber {
    pub fn free(value: f64) -> Self {
        PrincipalNumber {
            value,
            provenance: Provenance::Free,
        }
    }
}

impl From<f64> for PrincipalNumber {
    fn from(value: f64) -> Self {
        PrincipalNumber::free(value)
    }
}

const OMEGA: f64 = 1.7320508075688772 * PI;

impl NModel {
    /// b(λ) and c(λ) of the λ-fit.
    pub fn lambda_fit_coefficients(lambda: f64) -> (f64, f64) {
        let w = OMEGA;
        let b = ((4.0 * w - 18.0) * lambda + (18.0 - 2.0 * w))
            / ((3.0 * w - 15.0) * lambda + (21.0 - 3.0 * w));
        let c = ((7.0 * w - 36.0) * lambda + (36.0 - 5.0 * w))
            / ((6.0 * w - 32.0) * lambda + (40.0 - 6.0 * w));
        (b, c)
    }

    /// (b, c, d) in N = b n + d l + c.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        match *self {
            NModel::Harmonic => (2.0, 1.5, 1.0),
            NModel::CoulombLike => (1.0, 1.0, 1.0),
            NModel::LambdaFit(lambda) => {
                let (b, c) = Self::lambda_fit_coefficients(lambda);
                (b, c, 1.0)
            }
            NModel::LinearFit { b, c, d } | NModel::Custom { b, c, d } => (b, c, d),
        }
    }

    pub fn provenance(&self) -> Provenance {
        match self {
            NModel::Harmonic => Provenance::Harmonic,
            NModel::CoulombLike => Provenance::CoulombLike,
            NModel::LambdaFit(_) | NModel::LinearFit { .. } => Provenance::Fitted,
            NModel::Custom { .. } => Provenance::Free,
        }
    }

    /// N(n, l); errors if the model yields N ≤ 0.
    pub fn n_value(&self, q: QuantumNumbers) -> Result<f64> {
        let (b, c, d) = self.coefficients();
        let v = b * q.n as f64 + d * q.l as f64 + c;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(domain("N", v))
        }
    }

    pub fn principal(&self, q: QuantumNumbers) -> Result<PrincipalNumber> {
        Ok(PrincipalNumber {
            value: self.n_value(q)?,
            provenance: self.provenance(),
        })
    }

    /// Set when the model is used outside the range it was fitted on.
    pub fn range_warning(&self) -> Option<&'static str> {
        match *self {
            NModel::LambdaFit(lambda) if !(-1.0..=2.0).contains(&lambda) => {
                Some("lambda-fit N model used outside lambda in [-1, 2]")
            }
            _ => None,
        }
    }
}
