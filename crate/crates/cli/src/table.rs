//! Reproduction of the three benchmark tables: eigensolver levels next to the
//! closed forms with the standard and the fitted principal numbers.

use crate::fixtures::TableCase;
use crate::output::{Cell, LevelRow};
use afm_core::afm::{NModel, QuantumNumbers};
use afm_core::fitter::Coefficients;
use afm_core::oracle::{solve_radial_with, OracleResult};
use rayon::prelude::*;
use serde_json::json;

pub const N_MAX: u32 = 3;
pub const L_MAX: u32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub n: u32,
    pub l: u32,
    /// best estimate: Aitken value where the family converges algebraically
    pub oracle: f64,
    /// variational level at the final basis size
    pub oracle_raw: f64,
    pub delta: Option<f64>,
    pub basis_size: usize,
    pub afm_std: f64,
    pub afm_improved: f64,
    /// closed form with N = 2n + l + 3/2, an upper bound for every case
    pub afm_harmonic: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRun {
    pub case: TableCase,
    pub tol: f64,
    /// ordered by (l, n)
    pub cells: Vec<TableCell>,
}

pub fn run_table(case: TableCase, tol: Option<f64>) -> afm_core::Result<TableRun> {
    let family = case.family();
    let x = case.parameter();
    let tol = tol.unwrap_or_else(|| family.default_tolerance());
    let opts = afm_core::oracle::OracleOptions {
        expectations: true,
        ..family.oracle_options()
    };
    let per_l: Vec<OracleResult> = (0..=L_MAX)
        .into_par_iter()
        .map(|l| solve_radial_with(&family.hamiltonian(x, l), N_MAX as usize, tol, &opts))
        .collect::<afm_core::Result<_>>()?;
    let improved: Coefficients = family.reference_rational().at(x);
    let closed = |nv: f64| family.closed_form(x, nv).ok_or(afm_core::Error::NoBoundState);
    let mut cells = Vec::new();
    for (l, r) in (0..=L_MAX).zip(&per_l) {
        if r.levels.len() <= N_MAX as usize {
            return Err(afm_core::Error::NoBoundState);
        }
        let best = match (&r.extrapolated, opts.extrapolate) {
            (Some(e), true) => e.clone(),
            _ => r.levels.clone(),
        };
        for n in 0..=N_MAX {
            let q = QuantumNumbers::new(n, l);
            let i = n as usize;
            cells.push(TableCell {
                n,
                l,
                oracle: best[i],
                oracle_raw: r.levels[i],
                delta: r.expectations.as_ref().map(|e| e[i].delta),
                basis_size: r.basis_size,
                afm_std: closed(family.baseline().n_value(q)?)?,
                afm_improved: closed(improved.n_value(q))?,
                afm_harmonic: closed(NModel::Harmonic.n_value(q)?)?,
            });
        }
    }
    Ok(TableRun { case, tol, cells })
}

impl TableRun {
    fn fold<F: Fn(&TableCell, f64, f64, f64) -> f64>(&self, f: F) -> f64 {
        let fx = self.case.fixture();
        self.cells.iter().fold(0.0, |m: f64, c| {
            let (l, n) = (c.l as usize, c.n as usize);
            m.max(f(c, fx.exact[l][n], fx.improved[l][n], fx.standard[l][n]))
        })
    }

    /// max |oracle − printed eigenvalue|
    pub fn max_exact_deviation(&self) -> f64 {
        self.fold(|c, e, _, _| (c.oracle - e).abs())
    }

    /// max |improved − printed| / printed
    pub fn max_improved_rel_deviation(&self) -> f64 {
        self.fold(|c, _, i, _| ((c.afm_improved - i) / i).abs())
    }

    /// max |standard − printed|
    pub fn max_standard_deviation(&self) -> f64 {
        self.fold(|c, _, _, s| (c.afm_std - s).abs())
    }

    /// min over cells of (harmonic-N closed form − variational level)
    pub fn min_bound_margin(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.afm_harmonic - c.oracle_raw)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_delta(&self) -> Option<f64> {
        self.cells
            .iter()
            .map(|c| c.delta)
            .try_fold(f64::INFINITY, |m, d| d.map(|d| m.min(d)))
    }

    pub fn rows(&self) -> Vec<LevelRow> {
        self.cells
            .iter()
            .map(|c| {
                LevelRow::new(
                    self.case.name(),
                    c.n,
                    c.l,
                    Cell::Value(c.oracle),
                    Cell::Value(c.afm_std),
                    Cell::Value(c.afm_improved),
                )
            })
            .collect()
    }

    pub fn summary(&self) -> serde_json::Value {
        let fx = self.case.fixture();
        let (e, i, s) = (
            self.max_exact_deviation(),
            self.max_improved_rel_deviation(),
            self.max_standard_deviation(),
        );
        json!({
            "fixture": crate::fixtures::FIXTURE_VERSION,
            "family": self.case.family().name(),
            "parameter": self.case.parameter(),
            "oracle_tol": self.tol,
            "oracle_vs_reference": {"max_abs": e, "tol": fx.exact_tol, "pass": e <= fx.exact_tol},
            "improved_vs_reference": {"max_rel": i, "tol": fx.improved_rel_tol, "pass": i <= fx.improved_rel_tol},
            "standard_vs_reference": {"max_abs": s, "tol": fx.standard_tol(), "pass": s <= fx.standard_tol()},
        })
    }
}
