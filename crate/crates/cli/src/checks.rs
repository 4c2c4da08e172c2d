//! Property suites: frame scaling of the eigensolver, the ultrarelativistic
//! duality, variational bounds, limiting forms and the kinetic gap δ.

use crate::error::{usage, CliError};
use crate::fixtures::TableCase;
use crate::output::Tabular;
use crate::table::run_table;
use afm_core::oracle::{solve_radial, HamiltonianSpec, Kinetic};
use afm_core::spectra::{
    nr_dual_of_ur, scaling_reduce, sr_funnel_energy, sr_powerlaw_energy, ur_powerlaw_energy, yukawa_critical_height,
    yukawa_energy, yukawa_energy_reduced, FunnelMode, Kinematics, PotentialSpec, ScalingFrame,
};
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Scaling,
    Duality,
    Bounds,
    Limits,
    Delta,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Scaling, Suite::Duality, Suite::Bounds, Suite::Limits, Suite::Delta];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Scaling => "scaling",
            Suite::Duality => "duality",
            Suite::Bounds => "bounds",
            Suite::Limits => "limits",
            Suite::Delta => "delta",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| usage(format!("unknown suite '{s}' (scaling, duality, bounds, limits, delta)")))
    }
}

/// One checked quantity: `pass` is `value <= tolerance` unless stated otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckItem {
    fn at_most(suite: Suite, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckItem {
            suite: suite.name(),
            name: name.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }

    fn at_least(suite: Suite, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckItem {
            suite: suite.name(),
            name: name.into(),
            value,
            tolerance,
            pass: value >= tolerance,
        }
    }
}

impl Tabular for CheckItem {
    fn header() -> Vec<&'static str> {
        vec!["suite", "name", "value", "tolerance", "pass"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.suite.to_string(),
            self.name.clone(),
            format!("{:.3e}", self.value),
            format!("{:.1e}", self.tolerance),
            if self.pass { "ok" } else { "FAIL" }.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Multiplies the predicted energies of the scaling suite; a value other
    /// than 1 must make that suite fail.
    pub corrupt_scale: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { corrupt_scale: 1.0 }
    }
}

pub fn run_suite(suite: Suite, opts: CheckOptions) -> afm_core::Result<Vec<CheckItem>> {
    match suite {
        Suite::Scaling => scaling(opts.corrupt_scale),
        Suite::Duality => Ok(duality()),
        Suite::Bounds => tables(|case, run| {
            vec![CheckItem::at_least(
                Suite::Bounds,
                format!("{}: harmonic-N closed form minus level", case.name()),
                run.min_bound_margin(),
                1e-6,
            )]
        }),
        Suite::Limits => limits(),
        Suite::Delta => tables(|case, run| {
            vec![CheckItem::at_least(
                Suite::Delta,
                format!("{}: min delta", case.name()),
                run.min_delta().unwrap_or(f64::NAN),
                0.0,
            )]
        }),
    }
}

fn tables<F>(f: F) -> afm_core::Result<Vec<CheckItem>>
where
    F: Fn(TableCase, &crate::table::TableRun) -> Vec<CheckItem> + Sync,
{
    let runs: Vec<_> = TableCase::ALL
        .par_iter()
        .map(|&c| run_table(c, None).map(|r| f(c, &r)))
        .collect::<afm_core::Result<_>>()?;
    Ok(runs.into_iter().flatten().collect())
}

/// V(ρ) of a unit-strength shape and G·V(a r) as a potential.
#[derive(Clone, Copy)]
enum Shape {
    Linear,
    Harmonic,
    Root,
}

impl Shape {
    fn name(&self) -> &'static str {
        match self {
            Shape::Linear => "r",
            Shape::Harmonic => "r^2",
            Shape::Root => "r^0.5",
        }
    }

    fn scaled(&self, g: f64, a: f64) -> PotentialSpec {
        match self {
            Shape::Linear => PotentialSpec::linear(g * a),
            Shape::Harmonic => PotentialSpec::harmonic(g * a * a),
            Shape::Root => PotentialSpec::PowerLaw { a: g * a.sqrt(), lambda: 0.5 },
        }
    }
}

const SCALING_TOL: f64 = 1e-6;

fn scaling(corrupt: f64) -> afm_core::Result<Vec<CheckItem>> {
    let (m, g) = (0.7, 1.3);
    let frames = [(2.0, 1.5), (0.5, 3.0)];
    let shapes = [Shape::Linear, Shape::Harmonic, Shape::Root];
    let jobs: Vec<(Shape, (f64, f64), u32)> = shapes
        .iter()
        .flat_map(|&s| frames.iter().flat_map(move |&f| (0..2u32).map(move |l| (s, f, l))))
        .collect();
    jobs.par_iter()
        .map(|&(shape, (a, sigma), l)| {
            let frame = ScalingFrame::new(a, sigma)?;
            let direct = solve_radial(
                &HamiltonianSpec::new(Kinetic::Semirelativistic { sigma, mass: m }, shape.scaled(g, a), l),
                2,
                1e-8,
            )?;
            let s = a * sigma;
            let unit = solve_radial(
                &HamiltonianSpec::new(
                    Kinetic::Semirelativistic { sigma: 1.0, mass: m / a },
                    shape.scaled(g / s, 1.0),
                    l,
                ),
                2,
                1e-8,
            )?;
            let worst = direct
                .levels
                .iter()
                .zip(&unit.levels)
                .map(|(&d, &u)| {
                    let pred = corrupt * scaling_reduce(|_, _| u, m, g, frame);
                    ((pred - d) / d).abs()
                })
                .fold(0.0, f64::max);
            Ok(CheckItem::at_most(
                Suite::Scaling,
                format!("V={} a={a} sigma={sigma} l={l}", shape.name()),
                worst,
                SCALING_TOL,
            ))
        })
        .collect()
}

fn duality() -> Vec<CheckItem> {
    let mut out = Vec::new();
    for lambda in [0.5, 1.0, 2.0] {
        let mut worst = 0.0f64;
        for a in [0.7, 1.0, 1.3] {
            for sigma in [1.0, 2.0] {
                for n in [1.5, 2.5, 4.5] {
                    let ur = ur_powerlaw_energy(a, lambda, sigma, n);
                    let nr = nr_dual_of_ur(a, lambda, sigma, n).unwrap_or(f64::NAN);
                    let r = ((ur - nr) / ur).abs();
                    worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
                }
            }
        }
        out.push(CheckItem::at_most(Suite::Duality, format!("lambda={lambda}"), worst, 1e-10));
    }
    out
}

/// Funnel parameters for the low-mass comparison.
pub const FUNNEL_LOWMASS: (f64, f64, f64, f64) = (2.0, 1.0, 0.4, 1.5);

/// Relative gap between the exact funnel stationary point and its first-order
/// low-mass form at ε = (m/m₀)².
pub fn funnel_lowmass_gap(eps: f64) -> afm_core::Result<f64> {
    let (sigma, a, b, n) = FUNNEL_LOWMASS;
    let m0 = n * (a / b).sqrt();
    let kin = Kinematics::new(sigma, m0 * eps.sqrt())?;
    let g = sr_funnel_energy(a, b, kin, n, FunnelMode::General)?.energy;
    let l = sr_funnel_energy(a, b, kin, n, FunnelMode::LowMass)?.energy;
    Ok(((g - l) / g).abs())
}

fn limits() -> afm_core::Result<Vec<CheckItem>> {
    let s = Suite::Limits;
    let mut out = Vec::new();
    // Yukawa with β → 0 against the Coulomb closed form
    let kin = Kinematics::new(2.0, 1.0)?;
    for n in [1.0, 2.0] {
        let y = yukawa_energy(1.0, 1e-9, kin, n)?.energy;
        let c = sr_powerlaw_energy(1.0, -1.0, kin, n)?.energy;
        out.push(CheckItem::at_most(s, format!("yukawa beta->0, N={n}"), ((y - c) / c).abs(), 1e-6));
    }
    // reduced coupling g → N gives E → N, with E = N on the boundary
    for n in [1.0, 2.5] {
        let at = yukawa_energy_reduced(5.0 * n, n, n)?.energy;
        out.push(CheckItem::at_most(s, format!("yukawa g=N, N={n}"), ((at - n) / n).abs(), 1e-15));
        let near = yukawa_energy_reduced(5.0 * n, n * (1.0 - 1e-9), n)?.energy;
        out.push(CheckItem::at_most(s, format!("yukawa g->N, N={n}"), ((near - n) / n).abs(), 1e-3));
    }
    // χ·g_crit → e N²/2 for large χ
    for n in [1.0, 2.5] {
        let chi = 1e4;
        let g = yukawa_critical_height(chi, n)?;
        let target = std::f64::consts::E * n * n / 2.0;
        out.push(CheckItem::at_most(
            s,
            format!("yukawa chi*g_crit, chi=1e4, N={n}"),
            ((chi * g - target) / target).abs(),
            1e-3,
        ));
    }
    for eps in [0.01, 0.05] {
        out.push(CheckItem::at_most(
            s,
            format!("funnel general vs lowmass, eps={eps}"),
            funnel_lowmass_gap(eps)?,
            2.0 * eps * eps,
        ));
    }
    Ok(out)
}
