//! Coefficient fits with oracle levels computed in parallel.

use crate::error::{usage, CliError};
use crate::output::Tabular;
use afm_core::fitter::{evaluate_against, fit_against, oracle_levels, Coefficients, Family, FitGrid, FitReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

pub fn parse_family(s: &str) -> Result<Family, CliError> {
    match s {
        "ur-powerlaw" => Ok(Family::UrPowerLaw),
        "rel-coulomb" => Ok(Family::RelCoulomb),
        "ur-funnel" => Ok(Family::UrFunnel),
        _ => Err(usage(format!("unknown fit family '{s}' (ur-powerlaw, rel-coulomb, ur-funnel)"))),
    }
}

/// Published max-relative-error bands in percent: (fitted N, standard N).
pub fn published_bands(family: Family) -> ((f64, f64), (f64, f64)) {
    match family {
        Family::UrPowerLaw => ((0.3, 1.1), (4.5, 12.7)),
        Family::RelCoulomb => ((0.005, 0.3), (0.004, 17.3)),
        Family::UrFunnel => ((0.6, 4.9), (12.7, 42.2)),
    }
}

/// Oracle levels for every grid parameter, in grid order.
pub fn grid_levels(family: Family, grid: &FitGrid, tol: f64) -> afm_core::Result<Vec<Vec<f64>>> {
    grid.validate(family)?;
    grid.parameter_values
        .par_iter()
        .map(|&x| oracle_levels(family, x, grid.n_max, grid.l_max, tol))
        .collect()
}

#[derive(Debug, Clone)]
pub struct FitRun {
    pub report: FitReport,
    pub levels: Vec<Vec<f64>>,
    /// (max, mean) per parameter of the published rational forms
    pub reference_errors: Vec<(f64, f64)>,
}

pub fn run_fit(family: Family, grid: &FitGrid, tol: Option<f64>) -> afm_core::Result<FitRun> {
    let tol = tol.unwrap_or_else(|| family.default_tolerance());
    let levels = grid_levels(family, grid, tol)?;
    let report = fit_against(family, grid, &levels)?;
    let reference = family.reference_rational();
    let reference_errors = grid
        .parameter_values
        .iter()
        .zip(&levels)
        .map(|(&x, row)| {
            let one = FitGrid {
                parameter_values: vec![x],
                ..grid.clone()
            };
            evaluate_against(family, &[reference.at(x)], &one, std::slice::from_ref(row))
        })
        .collect::<afm_core::Result<_>>()?;
    Ok(FitRun {
        report,
        levels,
        reference_errors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRow {
    pub family: &'static str,
    pub parameter: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    pub baseline_max_rel_error: f64,
    pub rational_max_rel_error: Option<f64>,
    pub reference_max_rel_error: f64,
}

impl Tabular for FitRow {
    fn header() -> Vec<&'static str> {
        vec!["family", "param", "b", "c", "d", "max_err", "mean_err", "std_max_err", "rational_max_err", "published_max_err"]
    }

    fn cells(&self) -> Vec<String> {
        let pct = |v: f64| format!("{:.3}%", 100.0 * v);
        vec![
            self.family.to_string(),
            format!("{}", self.parameter),
            format!("{:.4}", self.b),
            format!("{:.4}", self.c),
            format!("{:.4}", self.d),
            pct(self.max_rel_error),
            pct(self.mean_rel_error),
            pct(self.baseline_max_rel_error),
            self.rational_max_rel_error.map_or("-".to_string(), pct),
            pct(self.reference_max_rel_error),
        ]
    }
}

impl FitRun {
    pub fn rows(&self) -> Vec<FitRow> {
        let r = &self.report;
        r.fits
            .iter()
            .enumerate()
            .map(|(i, f)| FitRow {
                family: r.family.name(),
                parameter: f.parameter,
                b: f.coefficients.b,
                c: f.coefficients.c,
                d: f.coefficients.d,
                max_rel_error: f.max_rel_error,
                mean_rel_error: f.mean_rel_error,
                baseline_max_rel_error: f.baseline_max_rel_error,
                rational_max_rel_error: r.rational_fit.as_ref().map(|q| q.errors[i].0),
                reference_max_rel_error: self.reference_errors[i].0,
            })
            .collect()
    }

    pub fn summary(&self) -> serde_json::Value {
        let r = &self.report;
        let range = |v: &mut dyn Iterator<Item = f64>| {
            let v: Vec<f64> = v.collect();
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(0.0, f64::max);
            json!([100.0 * lo, 100.0 * hi])
        };
        let ((fl, fh), (bl, bh)) = published_bands(r.family);
        let rational = r.rational_fit.as_ref().map(|q| {
            let c = q.coefficients;
            let endpoint: Coefficients = c.at(0.0);
            json!({
                "b": [c.b.p, c.b.q, c.b.r],
                "c": [c.c.p, c.c.q, c.c.r],
                "d": c.d.map(|d| vec![d.p, d.q, d.r]),
                "max_err_pct_range": range(&mut q.errors.iter().map(|e| e.0)),
                "at_zero": [endpoint.b, endpoint.c, endpoint.d],
            })
        });
        json!({
            "family": r.family.name(),
            "parameter": r.family.parameter_name(),
            "form": "N = b n + d l + c; rational forms (p x + q)/(x + r)",
            "free_fit_max_err_pct_range": range(&mut r.fits.iter().map(|f| f.max_rel_error)),
            "standard_max_err_pct_range": range(&mut r.fits.iter().map(|f| f.baseline_max_rel_error)),
            "published_rational_max_err_pct_range": range(&mut self.reference_errors.iter().map(|e| e.0)),
            "published_band_pct": {"fitted": [fl, fh], "standard": [bl, bh]},
            "rational_fit": rational,
            "diagnostics": r.diagnostics.iter().map(|d| format!("{d:?}")).collect::<Vec<_>>(),
        })
    }
}
