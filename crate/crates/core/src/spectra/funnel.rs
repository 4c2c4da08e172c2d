use super::powerlaw::sr_powerlaw_energy;
use super::types::{AfmResult, Internals, Kinematics};
use crate::afm::{afm_extremize, Bound, PrincipalNumber, Provenance};
use crate::error::{domain, Error, Result};
use crate::rootkit::{bracketed_root, cubic_f, RootBracket, Sign};
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Which funnel formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FunnelMode {
    /// General for m > 0, ultrarelativistic otherwise.
    #[default]
    Auto,
    /// 2√(a(σN − b)), mass ignored.
    UltraRelativistic,
    /// First order in ε = (m/m₀)², m₀ = N√(a/b).
    LowMass,
    /// Exact stationary point through the Z cubic.
    General,
}

/// σ√(p² + m²) + a r − b/r.
pub fn sr_funnel_energy(a: f64, b: f64, kin: Kinematics, n: impl Into<PrincipalNumber>, mode: FunnelMode) -> Result<AfmResult> {
    let n = n.into();
    kin.validate()?;
    let (sigma, m, nv) = (kin.sigma, kin.mass, n.value);
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("a", a));
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(domain("b", b));
    }
    if !(nv > 0.0) {
        return Err(domain("N", nv));
    }
    if b >= sigma * nv {
        return Err(Error::NoBoundState);
    }
    let bound = match n.provenance {
        Provenance::Harmonic => Bound::Upper,
        _ => Bound::Unknown,
    };
    let mode = match mode {
        FunnelMode::Auto if m > 0.0 => FunnelMode::General,
        FunnelMode::Auto => FunnelMode::UltraRelativistic,
        other => other,
    };
    if b == 0.0 {
        return match mode {
            FunnelMode::UltraRelativistic => {
                let kin0 = Kinematics::new(sigma, 0.0)?;
                sr_powerlaw_energy(a, 1.0, kin0, n)
            }
            FunnelMode::LowMass => Ok(lowmass(a, b, sigma, m, nv, bound)),
            _ => sr_powerlaw_energy(a, 1.0, kin, n),
        };
    }
    match mode {
        FunnelMode::UltraRelativistic => Ok(ultra(a, b, sigma, nv, bound)),
        FunnelMode::LowMass => Ok(lowmass(a, b, sigma, m, nv, bound)),
        _ if m == 0.0 => Ok(ultra(a, b, sigma, nv, bound)),
        _ => general(a, b, sigma, m, nv, bound),
    }
}

fn u_scale(a: f64, b: f64, n: f64) -> f64 {
    3.0 * n * n * (3.0 * a / (b * b * b)).sqrt()
}

fn ultra(a: f64, b: f64, sigma: f64, n: f64, bound: Bound) -> AfmResult {
    let d_big = 2.0 * b / (3.0 * sigma * n);
    let y0 = ((2.0 - 3.0 * d_big) / (d_big * d_big * d_big)).sqrt();
    let u = u_scale(a, b, n);
    let mut internals = Internals::default();
    internals.push("D", d_big);
    internals.push("Y0", y0);
    internals.push("Z0", (2.0 - 3.0 * d_big) / d_big);
    let f = d_big * y0;
    internals.push("F", f);
    internals.push("E_alt", (3.0 * a * b).sqrt() * 0.5 * (f - 1.0 / f) + sigma * sigma * u / (4.0 * y0));
    AfmResult {
        energy: 2.0 * (a * (sigma * n - b)).sqrt(),
        nu0: u / y0,
        internals,
        bound,
    }
}

fn lowmass(a: f64, b: f64, sigma: f64, m: f64, n: f64, bound: Bound) -> AfmResult {
    let root = ((sigma * n - b) / a).sqrt();
    let mut internals = Internals::default();
    let m0 = n * (a / b).sqrt();
    internals.push("m0", m0);
    internals.push("eps", if b > 0.0 { (m / m0).powi(2) } else { 0.0 });
    // auxiliary field of the massless problem
    let nu0 = 2.0 * n / (sigma * root);
    internals.push("shift", sigma * m * m / (2.0 * n) * root);
    AfmResult {
        energy: root * (2.0 * a + sigma * m * m / (2.0 * n)),
        nu0,
        internals,
        bound,
    }
}

fn energy_of_y(a: f64, b: f64, sigma: f64, m: f64, u: f64, y: f64, f: f64) -> f64 {
    m * m * y / u + sigma * sigma * u / (4.0 * y) + (3.0 * a * b).sqrt() * 0.5 * (f - 1.0 / f)
}

fn general(a: f64, b: f64, sigma: f64, m: f64, n: f64, bound: Bound) -> Result<AfmResult> {
    let u_big = u_scale(a, b, n);
    let d_big = 2.0 * b / (3.0 * sigma * n);
    let u = 2.0 * m / (sigma * u_big);
    let a_big = a * n * n - b * m * m;
    let c = d_big * d_big - 3.0 * u * u;
    let e_of_y = |y: f64| energy_of_y(a, b, sigma, m, u_big, y, cubic_f(Sign::Plus, y).unwrap_or(f64::NAN));
    let mut internals = Internals::default();
    internals.push("D", d_big);
    internals.push("u", u);
    internals.push("A", a_big);
    internals.push("c", c);
    let (y0, z0, f, energy) = if a_big.abs() <= 1e-12 * a * n * n {
        // d diverges; minimize E(Y) directly
        let (y0, e) = afm_extremize(e_of_y, RootBracket::new(1e-8, 1e8))?;
        let f = cubic_f(Sign::Plus, y0)?;
        (y0, c * y0 * y0, f, e)
    } else {
        let d = b * m * m / (3.0 * a_big);
        internals.push("d", d);
        let coeffs = [
            9.0 * d_big * d_big - 4.0,
            6.0 * (d_big * d_big + 2.0 * d),
            d_big * d_big - 12.0 * d * d,
            4.0 * d * d * d,
        ];
        let mut best: Option<(f64, f64, f64, f64)> = None;
        for z in real_roots(coeffs)? {
            let ratio = z / c;
            if !(ratio > 0.0) || !ratio.is_finite() {
                continue;
            }
            let y = ratio.sqrt();
            let f = 2.0 * y * (1.0 - d * z) / (z + 3.0);
            if !(f > 0.0) {
                continue;
            }
            let e = energy_of_y(a, b, sigma, m, u_big, y, f);
            if best.is_none_or(|(_, _, _, eb)| e < eb) {
                best = Some((y, z, f, e));
            }
        }
        best.ok_or(Error::Extremization)?
    };
    internals.push("Y0", y0);
    internals.push("Z0", z0);
    internals.push("F", f);
    let nu0 = u_big / y0;
    internals.push("nu0", nu0);
    let f_direct = cubic_f(Sign::Plus, y0)?;
    let alt = m * m * y0 / u_big + sigma * sigma * u_big / (4.0 * y0) + (3.0 * a * b).sqrt() * (y0 / (f_direct * f_direct) - 2.0 / f_direct);
    internals.push("E_alt", alt);
    Ok(AfmResult {
        energy,
        nu0,
        internals,
        bound,
    })
}

/// Real roots of c0 + c1 z + c2 z² + c3 z³. Each root is bracketed between
/// consecutive critical points (or pushed outward to infinity) and refined with
/// Brent, which stays accurate when the leading coefficient is tiny.
fn real_roots(c: [f64; 4]) -> Result<Vec<f64>> {
    let p = |z: f64| ((c[3] * z + c[2]) * z + c[1]) * z + c[0];
    let mut breaks: Vec<f64> = Vec::new();
    // p' = 3c3 z² + 2c2 z + c1
    let (qa, qb, qc) = (3.0 * c[3], 2.0 * c[2], c[1]);
    if qa == 0.0 {
        if qb != 0.0 {
            breaks.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc > 0.0 {
            let q = -0.5 * (qb + qb.signum() * disc.sqrt());
            if q != 0.0 {
                breaks.push(q / qa);
                breaks.push(qc / q);
            } else {
                breaks.push(0.0);
            }
        } else if disc == 0.0 {
            breaks.push(-qb / (2.0 * qa));
        }
    }
    breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut out = Vec::new();
    let refine = |lo: f64, hi: f64, out: &mut Vec<f64>| -> Result<()> {
        let (plo, phi) = (p(lo), p(hi));
        if plo == 0.0 {
            out.push(lo);
        } else if plo.signum() != phi.signum() && phi != 0.0 {
            out.push(bracketed_root(p, RootBracket::new(lo, hi).with_tolerance(0.0))?);
        }
        Ok(())
    };
    let outward = |from: f64, dir: f64| -> Option<f64> {
        let p0 = p(from);
        let mut step = from.abs().max(1.0);
        for _ in 0..2100 {
            let z = from + dir * step;
            if !z.is_finite() {
                return None;
            }
            if p(z).signum() != p0.signum() || p0 == 0.0 {
                return Some(z);
            }
            step *= 2.0;
        }
        None
    };
    if breaks.is_empty() {
        let anchor = if c[2] == 0.0 && c[3] == 0.0 && c[1] != 0.0 { -c[0] / c[1] } else { 0.0 };
        if let Some(hi) = outward(anchor, 1.0) {
            refine(anchor, hi, &mut out)?;
        }
        if let Some(lo) = outward(anchor, -1.0) {
            refine(lo, anchor, &mut out)?;
        }
    } else {
        if let Some(lo) = outward(breaks[0], -1.0) {
            refine(lo, breaks[0], &mut out)?;
        }
        for w in breaks.windows(2) {
            refine(w[0], w[1], &mut out)?;
        }
        let last = *breaks.last().unwrap();
        if let Some(hi) = outward(last, 1.0) {
            if p(last) != 0.0 {
                refine(last, hi, &mut out)?;
            }
        }
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afm::{nr_funnel_energy, semirelativistic_lift, NuCharacter, NuSpectrum};
    use crate::spectra::ur_powerlaw_energy;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn kin(m: f64) -> Kinematics {
        Kinematics::new(2.0, m).unwrap()
    }

    #[test]
    fn table_values() {
        let r = sr_funnel_energy(1.0, 0.4, kin(0.0), 1.5, FunnelMode::Auto).unwrap();
        assert!((r.energy - 3.2249).abs() < 5e-5);
        assert_relative_eq!(r.energy, r.internals.get("E_alt").unwrap(), max_relative = 1e-12);
        let r = sr_funnel_energy(1.0, 0.4, kin(0.0), 2.5, FunnelMode::Auto).unwrap();
        assert!((r.energy - 4.2895).abs() < 5e-5);
    }

    #[test]
    fn lowmass_example() {
        let lm = sr_funnel_energy(1.0, 0.4, kin(0.1), 1.5, FunnelMode::LowMass).unwrap();
        assert!((lm.energy - 3.23565).abs() < 5e-6);
        assert!((lm.internals.get("shift").unwrap() - 0.0107497).abs() < 1e-7);
        let g = sr_funnel_energy(1.0, 0.4, kin(0.1), 1.5, FunnelMode::General).unwrap();
        assert!(((g.energy - lm.energy) / lm.energy).abs() < 1e-4);
        assert!(g.energy <= lm.energy);
        let ur = sr_funnel_energy(1.0, 0.4, kin(0.0), 1.5, FunnelMode::Auto).unwrap();
        assert_relative_eq!(lm.nu0, ur.nu0, max_relative = 1e-14);
        assert_relative_eq!(lm.energy - ur.energy, 0.01 / ur.nu0, max_relative = 1e-12);
    }

    #[test]
    fn existence() {
        assert_eq!(sr_funnel_energy(1.0, 3.0, kin(0.5), 1.5, FunnelMode::Auto), Err(Error::NoBoundState));
        assert!(sr_funnel_energy(1.0, 2.999, kin(0.5), 1.5, FunnelMode::Auto).is_ok());
    }

    #[test]
    fn coulomb_free_limit() {
        let r = sr_funnel_energy(1.3, 0.0, kin(0.0), 1.5, FunnelMode::Auto).unwrap();
        assert_relative_eq!(r.energy, ur_powerlaw_energy(1.3, 1.0, 2.0, 1.5), max_relative = 1e-14);
        let r = sr_funnel_energy(1.3, 0.0, kin(0.7), 1.5, FunnelMode::Auto).unwrap();
        let p = sr_powerlaw_energy(1.3, 1.0, kin(0.7), 1.5).unwrap();
        assert_eq!(r.energy, p.energy);
    }

    #[test]
    fn continuous_in_mass() {
        let ur = sr_funnel_energy(1.0, 0.4, kin(0.0), 1.5, FunnelMode::Auto).unwrap().energy;
        let mut prev = ur;
        for k in 1..=40 {
            let m = 1e-6 * 1.5f64.powi(k);
            let e = sr_funnel_energy(1.0, 0.4, kin(m), 1.5, FunnelMode::General).unwrap().energy;
            assert!(e >= prev - 1e-12);
            if k == 1 {
                assert!((e - ur).abs() < 1e-10);
            }
            prev = e;
        }
    }

    #[test]
    fn heavy_beyond_m0() {
        // m ≥ m₀ turns A and c negative
        for &m in &[1.5 * (1.0f64 / 0.4).sqrt(), 3.0, 10.0, 100.0] {
            let r = sr_funnel_energy(1.0, 0.4, kin(m), 1.5, FunnelMode::General).unwrap();
            let spec = NuSpectrum::new(|nu: f64| nr_funnel_energy(1.0, 0.4, nu, 1.5).unwrap(), NuCharacter::Unknown);
            let l = semirelativistic_lift(&spec, 2.0, m).unwrap();
            assert_relative_eq!(r.energy, l.energy, max_relative = 1e-10);
        }
    }

    #[test]
    fn cubic_roots() {
        let r = real_roots([-6.0, 11.0, -6.0, 1.0]).unwrap();
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert_relative_eq!(*x, e, max_relative = 1e-14);
        }
        let r = real_roots([-2.0, 0.0, 1.0, 1e-30]).unwrap();
        assert!(r.iter().any(|x| (x - 2f64.sqrt()).abs() < 1e-14));
        assert!(r.iter().any(|x| (x + 2f64.sqrt()).abs() < 1e-14));
        assert_eq!(r.len(), 3);
        let r = real_roots([1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r, alloc::vec![-1.0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn general_is_the_minimum(a in 0.2f64..3.0, bf in 0.02f64..0.95, m in 0.0f64..5.0, sigma in 0.5f64..3.0, n in 0.8f64..5.0) {
            let b = bf * sigma * n;
            let k = Kinematics::new(sigma, m).unwrap();
            let r = sr_funnel_energy(a, b, k, n, FunnelMode::General).unwrap();
            let spec = NuSpectrum::new(move |nu: f64| nr_funnel_energy(a, b, nu, n).unwrap(), NuCharacter::Unknown);
            let l = semirelativistic_lift(&spec, sigma, m).unwrap();
            prop_assert!((r.energy - l.energy).abs() <= 1e-9 * l.energy.abs().max(1.0));
            prop_assert!((r.energy - r.internals.get("E_alt").unwrap()).abs() <= 1e-9 * r.energy.abs().max(1.0));
            if let (Some(c), Some(d)) = (r.internals.get("c"), r.internals.get("d")) {
                let dd = r.internals.get("D").unwrap().powi(2);
                prop_assert!((c + 3.0 * c * d - dd).abs() <= 1e-12 * dd);
            }
            // F satisfies F³ + 3F − 2Y = 0
            if m > 0.0 {
                let (y, f) = (r.internals.get("Y0").unwrap(), r.internals.get("F").unwrap());
                prop_assert!((f * f * f + 3.0 * f - 2.0 * y).abs() <= 1e-9 * (2.0 * y));
            }
        }
    }
}
