use crate::error::Result;
use crate::rootkit::bracket::{bracketed_root, RootBracket};
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

// Ai(0) and -Ai'(0)
const C1: f64 = 0.355_028_053_887_817_2;
const C2: f64 = 0.258_819_403_792_806_8;
const SERIES_LIMIT: f64 = 6.0;

/// Regular Airy function Ai(x): Maclaurin series for |x| ≤ 6, asymptotic
/// expansions beyond.
pub fn airy_ai(x: f64) -> f64 {
    if x.abs() <= SERIES_LIMIT {
        series(x)
    } else if x > 0.0 {
        let zeta = 2.0 / 3.0 * x.powf(1.5);
        let (sum, _) = asymptotic_sums(zeta, true);
        (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
    } else {
        let z = -x;
        let zeta = 2.0 / 3.0 * z.powf(1.5);
        let (p, q) = asymptotic_sums(zeta, false);
        let phase = zeta + PI / 4.0;
        (phase.sin() * p - phase.cos() * q) / (PI.sqrt() * z.powf(0.25))
    }
}

fn series(x: f64) -> f64 {
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut tf, mut tg) = (1.0, x);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 - 1.0) * k3);
        tg *= x3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1.0) && tg.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    C1 * f - C2 * g
}

// u_k of the Airy asymptotic series, summed to the smallest term.
// Growing side: Σ (−1)^k u_k ζ^{-k}. Oscillating side: (Σ (−1)^k u_{2k} ζ^{-2k}, Σ (−1)^k u_{2k+1} ζ^{-2k-1}).
fn asymptotic_sums(zeta: f64, decaying: bool) -> (f64, f64) {
    let mut u = 1.0;
    let mut term = 1.0;
    let (mut a, mut b) = (1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        term = u / zeta.powi(k);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        if decaying {
            a += if k % 2 == 1 { -term } else { term };
        } else if k % 2 == 0 {
            a += if (k / 2) % 2 == 1 { -term } else { term };
        } else {
            b += if ((k - 1) / 2) % 2 == 1 { -term } else { term };
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let _ = term;
    (a, b)
}

/// WKB estimate −(3π/2·(n + 3/4))^{2/3} of the n-th Airy zero.
pub fn airy_zero_wkb(n: u32) -> f64 {
    -(1.5 * PI * (n as f64 + 0.75)).powf(2.0 / 3.0)
}

/// n-th zero of Ai (n = 0 is the one closest to the origin), to 1e-8.
pub fn airy_zero(n: u32) -> f64 {
    airy_zero_tol(n, 1e-8).expect("WKB bracket always straddles the zero")
}

/// [`airy_zero`] with an explicit absolute tolerance.
pub fn airy_zero_tol(n: u32, tolerance: f64) -> Result<f64> {
    let seed = airy_zero_wkb(n);
    // WKB is within 0.02 of the true zero and zeros are more than 0.8 apart
    let br = RootBracket::new(seed - 0.3, seed + 0.3).with_tolerance(tolerance.min(1e-12));
    bracketed_root(airy_ai, br)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Abramowitz & Stegun table 10.13
    const TABLE: [f64; 11] = [
        -2.338107410459767,
        -4.087949444130971,
        -5.520559828095551,
        -6.786708090071759,
        -7.944133587120853,
        -9.02265085334098,
        -10.040174341558086,
        -11.008524303733263,
        -11.936015563236234,
        -12.828776752865757,
        -13.691489035210724,
    ];

    #[test]
    fn known_values() {
        assert!((airy_ai(0.0) - C1).abs() < 1e-16);
        assert!((airy_ai(1.0) - 0.135_292_416_312_881_4).abs() < 1e-14);
        assert!((airy_ai(-1.0) - 0.535_560_883_292_352_1).abs() < 1e-14);
        assert!((airy_ai(-10.0) - 0.040_241_238_486_443_19).abs() < 1e-10);
        assert!((airy_ai(10.0) - 1.104_753_255_289_87e-10).abs() < 1e-19);
    }

    #[test]
    fn continuity_at_series_limit() {
        for x in [-SERIES_LIMIT, SERIES_LIMIT] {
            let a = airy_ai(x);
            let b = airy_ai(x * (1.0 + 1e-12));
            assert!((a - b).abs() < 1e-9 * a.abs().max(1e-3), "{x}: {a} {b}");
        }
    }

    #[test]
    fn zeros_match_table() {
        for (n, &z) in TABLE.iter().enumerate() {
            assert!((airy_zero(n as u32) - z).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn wkb_examples() {
        assert!((airy_zero_wkb(0) + 2.320251).abs() < 1e-6);
        assert!((airy_zero_wkb(1) + 4.081810).abs() < 1e-6);
    }

    #[test]
    fn zeros_decrease_and_wkb_improves() {
        let mut prev_zero = 0.0;
        let mut prev_err = f64::INFINITY;
        for n in 0..=10 {
            let z = airy_zero(n);
            assert!(z < prev_zero);
            let err = ((airy_zero_wkb(n) - z) / z).abs();
            assert!(err <= 0.08);
            assert!(err < prev_err);
            prev_zero = z;
            prev_err = err;
        }
        let z = airy_zero(200);
        // leading WKB correction is (5/48) t^{-2}, about 1.2e-7 here
        assert!(((airy_zero_wkb(200) - z) / z).abs() < 2e-7);
    }

    #[test]
    fn zeros_interlace_sign_changes() {
        for n in 0..10 {
            let mid = 0.5 * (airy_zero(n) + airy_zero(n + 1));
            let s = airy_ai(mid).signum();
            let expected = if n % 2 == 0 { -1.0 } else { 1.0 };
            assert_eq!(s, expected);
        }
    }
}
