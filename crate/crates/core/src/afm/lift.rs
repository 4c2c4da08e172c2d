use super::Bound;
use crate::error::{domain, Error, Result};
use crate::rootkit::{bracketed_root, RootBracket};
#[allow(unused_imports)]
use num_traits::Float;

/// What is known about e(ν) relative to the exact levels of p²/ν + V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NuCharacter {
    Exact,
    UpperWitness,
    Unknown,
}

/// Levels e(ν) of h(ν) = p²/ν + V for one state.
#[derive(Debug, Clone, Copy)]
pub struct NuSpectrum<F> {
    pub e: F,
    pub character: NuCharacter,
}

impl<F: Fn(f64) -> f64> NuSpectrum<F> {
    pub fn new(e: F, character: NuCharacter) -> Self {
        NuSpectrum { e, character }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftResult {
    pub energy: f64,
    /// σ²ν₀/2 + (ν e)′(ν₀), equal to `energy` at the stationary point.
    pub energy_alt: f64,
    pub nu0: f64,
    pub bound: Bound,
}

/// [1e−8·s, 1e8·s] with s = max(m, 1).
pub fn default_bracket(m: f64) -> RootBracket {
    let s = m.max(1.0);
    RootBracket::new(1e-8 * s, 1e8 * s)
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimum of E(ν) on the bracket: golden section in ln ν, then a root of the
/// finite-difference derivative.
pub fn afm_extremize<F: Fn(f64) -> f64>(energy_of_nu: F, bracket: RootBracket) -> Result<(f64, f64)> {
    let d = |nu: f64| derivative(&energy_of_nu, nu);
    extremize_impl(&energy_of_nu, d, bracket)
}

/// [`afm_extremize`] with an analytic dE/dν.
pub fn afm_extremize_with_derivative<F, D>(energy_of_nu: F, d_energy: D, bracket: RootBracket) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    extremize_impl(&energy_of_nu, d_energy, bracket)
}

fn extremize_impl<F, D>(e: &F, d: D, bracket: RootBracket) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(bracket.lo > 0.0) || !(bracket.hi > bracket.lo) {
        return Err(domain("nu bracket", bracket.lo));
    }
    let (lo, hi) = (bracket.lo.ln(), bracket.hi.ln());
    let f = |t: f64| e(t.exp());
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut dd = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(dd));
    while b - a > 1e-10 * (1.0 + a.abs().max(b.abs())) {
        if fc < fd || fd.is_nan() {
            b = dd;
            dd = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = dd;
            fc = fd;
            dd = a + INV_PHI * (b - a);
            fd = f(dd);
        }
    }
    let t = 0.5 * (a + b);
    let edge = 1e-6 * (hi - lo);
    if t - lo < edge || hi - t < edge || !f(t).is_finite() {
        return Err(Error::Extremization);
    }
    let nu_gs = t.exp();
    let mut nu0 = nu_gs;
    let mut w = 1e-6;
    while w < 0.5 {
        let (l, r) = (nu_gs * (1.0 - w), nu_gs * (1.0 + w));
        let (dl, dr) = (d(l), d(r));
        if dl.is_finite() && dr.is_finite() && dl.signum() != dr.signum() {
            nu0 = bracketed_root(&d, RootBracket::new(l, r))?;
            break;
        }
        w *= 8.0;
    }
    Ok((nu0, e(nu0)))
}

// Five-point central difference with a step relative to ν.
fn derivative<F: Fn(f64) -> f64>(f: &F, x: f64) -> f64 {
    let h = 1e-3 * x;
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// E(ν) = m²/ν + σ²ν/4 + e(ν) minimized over ν.
pub fn semirelativistic_lift<F: Fn(f64) -> f64>(spec: &NuSpectrum<F>, sigma: f64, m: f64) -> Result<LiftResult> {
    if !(sigma > 0.0) {
        return Err(domain("sigma", sigma));
    }
    if !(m >= 0.0) {
        return Err(domain("m", m));
    }
    let total = |nu: f64| m * m / nu + 0.25 * sigma * sigma * nu + (spec.e)(nu);
    let (nu0, energy) = afm_extremize(total, default_bracket(m))?;
    let nu_e = |nu: f64| nu * (spec.e)(nu);
    let energy_alt = 0.5 * sigma * sigma * nu0 + derivative(&nu_e, nu0);
    let bound = match spec.character {
        NuCharacter::Exact | NuCharacter::UpperWitness => Bound::Upper,
        NuCharacter::Unknown => Bound::Unknown,
    };
    Ok(LiftResult {
        energy,
        energy_alt,
        nu0,
        bound,
    })
}

/// Δ(m) = m²/ν̄₀ with ν̄₀ the auxiliary field of the massless problem.
pub fn lowmass_shift(m: f64, nu0_ur: f64) -> f64 {
    m * m / nu0_ur
}

/// Δ(m) = σm²/(2√⟨p²⟩), the same shift from a massless ⟨p²⟩.
pub fn lowmass_shift_from_p2(sigma: f64, m: f64, p2: f64) -> f64 {
    sigma * m * m / (2.0 * p2.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afm::nr_powerlaw_energy;
    use approx::assert_relative_eq;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn rest_energy_plus_constant() {
        let (nu0, e) = afm_extremize(|nu| 1.0 / nu + nu + 0.3, default_bracket(1.0)).unwrap();
        assert_relative_eq!(nu0, 1.0, max_relative = 1e-10);
        assert_relative_eq!(e, 2.3, max_relative = 1e-14);
        let spec = NuSpectrum::new(|_| -0.7, NuCharacter::Exact);
        let r = semirelativistic_lift(&spec, 3.0, 2.0).unwrap();
        assert_relative_eq!(r.energy, 6.0 - 0.7, max_relative = 1e-13);
        assert_relative_eq!(r.nu0, 2.0 * 2.0 / 3.0, max_relative = 1e-10);
    }

    #[test]
    fn coulomb_lift() {
        let spec = NuSpectrum::new(|nu| -nu / 4.0, NuCharacter::Exact);
        let r = semirelativistic_lift(&spec, 2.0, 1.0).unwrap();
        assert_relative_eq!(r.energy, 3f64.sqrt(), max_relative = 1e-12);
        for &(a, sigma, m, n) in &[(0.5, 1.0, 1.0, 1.0), (1.0, 2.0, 3.0, 2.0), (0.2, 1.0, 0.1, 3.0)] {
            let spec = NuSpectrum::new(move |nu| nr_powerlaw_energy(a, -1.0, nu, n).unwrap(), NuCharacter::Exact);
            let r = semirelativistic_lift(&spec, sigma, m).unwrap();
            let exact = sigma * m * (1.0 - a * a / (sigma * sigma * n * n)).sqrt();
            assert_relative_eq!(r.energy, exact, max_relative = 1e-12);
            assert_eq!(r.bound, Bound::Upper);
        }
    }

    #[test]
    fn massless_linear_lift() {
        let spec = NuSpectrum::new(|nu| nr_powerlaw_energy(1.0, 1.0, nu, 1.5).unwrap(), NuCharacter::UpperWitness);
        let r = semirelativistic_lift(&spec, 2.0, 0.0).unwrap();
        assert_relative_eq!(r.energy, 2.0 * 3f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(r.energy, r.energy_alt, max_relative = 1e-9);
    }

    #[test]
    fn monotone_function_has_no_extremum() {
        assert_eq!(afm_extremize(|nu| nu, default_bracket(1.0)), Err(Error::Extremization));
    }

    #[test]
    fn nonrelativistic_limit() {
        // E − σm → e(2m/σ) as m grows
        let e = |nu: f64| nr_powerlaw_energy(1.0, 1.0, nu, 1.5).unwrap();
        let spec = NuSpectrum::new(e, NuCharacter::Unknown);
        let mut prev = f64::INFINITY;
        for &m in &[10.0, 100.0, 1000.0] {
            let r = semirelativistic_lift(&spec, 2.0, m).unwrap();
            let gap = (r.energy - 2.0 * m - e(m)).abs();
            assert!(gap < prev);
            assert!(gap < 2.0 / m);
            prev = gap;
        }
    }

    #[test]
    fn lowmass_shift_forms() {
        assert_eq!(lowmass_shift(0.0, 3.0), 0.0);
        // ν̄₀ = (2/σ)√⟨p²⟩
        let (sigma, m, p2) = (2.0, 0.1, 2.7);
        let nu = 2.0 / sigma * p2.sqrt();
        assert_relative_eq!(lowmass_shift(m, nu), lowmass_shift_from_p2(sigma, m, p2), max_relative = 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn energy_forms_agree(a in 0.1f64..5.0, lambda in prop::sample::select(vec![-0.5, 0.5, 1.0, 1.5, 2.0]),
                              sigma in 0.5f64..3.0, m in 0.0f64..5.0, n in 1.0f64..6.0) {
            let e = move |nu: f64| nr_powerlaw_energy(a, lambda, nu, n).unwrap();
            let spec = NuSpectrum::new(e, NuCharacter::Unknown);
            // λ < 0 needs a massive particle and a sub-critical coupling
            prop_assume!(lambda > 0.0 || m > 0.5);
            if let Ok(r) = semirelativistic_lift(&spec, sigma, m) {
                let scale = r.energy.abs().max(m * sigma).max(1e-3);
                prop_assert!((r.energy - r.energy_alt).abs() <= 1e-9 * scale);
                // stationarity σ²/4 + e′(ν₀) = m²/ν₀²
                let h = 1e-4 * r.nu0;
                let de = (e(r.nu0 + h) - e(r.nu0 - h)) / (2.0 * h);
                let lhs = 0.25 * sigma * sigma + de;
                let rhs = m * m / (r.nu0 * r.nu0);
                prop_assert!((lhs - rhs).abs() <= 1e-6 * (0.25 * sigma * sigma + rhs));
            }
        }
    }
}
