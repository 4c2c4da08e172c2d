//! Command bodies. Each returns rendered bytes plus whether a property failed.

use crate::checks::{run_suite, CheckOptions, Suite};
use crate::config::{parse_float_range, parse_int_range, parse_nmodel, parse_potential, RunConfig};
use crate::error::{usage, CliError};
use crate::fit::{parse_family, run_fit};
use crate::fixtures::TableCase;
use crate::output::{cell_or_sentinel, render, Cell, LevelRow};
use crate::table::run_table;
use afm_core::afm::{NModel, QuantumNumbers};
use afm_core::fitter::FitGrid;
use afm_core::oracle::{solve_radial, HamiltonianSpec, Kinetic, OracleResult};
use afm_core::spectra::{afm_energy, Kinematics, PotentialSpec};
use rayon::prelude::*;
use serde_json::json;

pub struct Outcome {
    pub bytes: Vec<u8>,
    /// a checked property did not hold
    pub failed: bool,
}

struct Physics {
    potential: PotentialSpec,
    sigma: f64,
    mass: f64,
}

fn physics(cfg: &RunConfig) -> Result<Physics, CliError> {
    let potential = parse_potential(cfg.get("potential").ok_or_else(|| usage("missing --potential"))?)?;
    let sigma = cfg.f64_or("sigma", 1.0)?;
    let mass = cfg.f64_or("mass", 0.0)?;
    Kinematics::new(sigma, mass).map_err(|e| usage(e.to_string()))?;
    Ok(Physics { potential, sigma, mass })
}

fn model(cfg: &RunConfig, key: &str) -> Result<Option<NModel>, CliError> {
    let m = cfg.get(key).map(parse_nmodel).transpose()?;
    if let Some(w) = m.as_ref().and_then(NModel::range_warning) {
        eprintln!("warning: {w}");
    }
    Ok(m)
}

fn closed_form(p: &Physics, m: NModel, q: QuantumNumbers) -> Result<(Cell, Option<afm_core::spectra::AfmResult>), CliError> {
    let kin = Kinematics::new(p.sigma, p.mass)?;
    let n = m.principal(q)?;
    match afm_energy(&p.potential, kin, n) {
        Ok(r) => Ok((Cell::Value(r.energy), Some(r))),
        Err(e) => Ok((cell_or_sentinel(Err(e))?, None)),
    }
}

fn oracle_sector(p: &Physics, l: u32, n_max: u32, tol: f64) -> afm_core::Result<Option<OracleResult>> {
    let h = HamiltonianSpec::new(Kinetic::Semirelativistic { sigma: p.sigma, mass: p.mass }, p.potential, l);
    match solve_radial(&h, n_max as usize, tol) {
        Ok(r) => Ok(Some(r)),
        Err(afm_core::Error::NoBoundState | afm_core::Error::Unbound) => Ok(None),
        Err(e) => Err(e),
    }
}

fn oracle_cell(r: &Option<OracleResult>, n: u32) -> Cell {
    match r {
        Some(r) => r.levels.get(n as usize).map_or(Cell::Sentinel("no_bound_state"), |&v| Cell::Value(v)),
        None => Cell::Sentinel("no_bound_state"),
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = physics(cfg)?;
    let std_model = model(cfg, "nmodel")?.unwrap_or(NModel::Harmonic);
    let improved = model(cfg, "improved")?;
    let ns = parse_int_range("n", cfg.get("n").unwrap_or("0"))?;
    let ls = parse_int_range("l", cfg.get("l").unwrap_or("0"))?;
    let tol = cfg.f64_or("tol", 1e-6)?;
    let with_oracle = cfg.flag("oracle")?;
    let verbose = cfg.flag("verbose")?;
    let format = cfg.format()?;
    let case = cfg.get("potential").unwrap_or_default().to_string();
    let n_top = *ns.iter().max().unwrap_or(&0);
    let oracle: Vec<Option<OracleResult>> = if with_oracle {
        ls.par_iter().map(|&l| oracle_sector(&p, l, n_top, tol)).collect::<afm_core::Result<_>>()?
    } else {
        Vec::new()
    };
    let mut rows = Vec::new();
    let mut internals = Vec::new();
    for (i, &l) in ls.iter().enumerate() {
        for &n in &ns {
            let q = QuantumNumbers::new(n, l);
            let (std_cell, detail) = closed_form(&p, std_model, q)?;
            let imp_cell = match improved {
                Some(m) => closed_form(&p, m, q)?.0,
                None => Cell::Empty,
            };
            let o = oracle.get(i).map_or(Cell::Empty, |r| oracle_cell(r, n));
            rows.push(LevelRow::new(&case, n, l, o, std_cell, imp_cell));
            if verbose {
                if let Some(r) = detail {
                    let values: serde_json::Map<String, serde_json::Value> =
                        r.internals.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    internals.push(json!({"n": n, "l": l, "nu0": r.nu0, "bound": format!("{:?}", r.bound), "internals": values}));
                }
            }
        }
    }
    let summary = json!({
        "nmodel": format!("{std_model:?}"),
        "improved": improved.map(|m| format!("{m:?}")),
        "levels": if verbose { json!(internals) } else { serde_json::Value::Null },
    });
    Ok(Outcome {
        bytes: render(format, "spectrum", cfg, &rows, &summary)?,
        failed: false,
    })
}

pub fn oracle(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = physics(cfg)?;
    let ls = parse_int_range("l", cfg.get("l").unwrap_or("0"))?;
    let n_max = cfg.u32_or("n_max", 3)?;
    let tol = cfg.f64_or("tol", 1e-6)?;
    let std_model = model(cfg, "nmodel")?.unwrap_or(NModel::Harmonic);
    let format = cfg.format()?;
    let case = cfg.get("potential").unwrap_or_default().to_string();
    let results: Vec<Option<OracleResult>> =
        ls.par_iter().map(|&l| oracle_sector(&p, l, n_max, tol)).collect::<afm_core::Result<_>>()?;
    let mut rows = Vec::new();
    let mut sectors = Vec::new();
    for (&l, r) in ls.iter().zip(&results) {
        for n in 0..=n_max {
            let (std_cell, _) = closed_form(&p, std_model, QuantumNumbers::new(n, l))?;
            rows.push(LevelRow::new(&case, n, l, oracle_cell(r, n), std_cell, Cell::Empty));
        }
        sectors.push(match r {
            Some(r) => json!({
                "l": l,
                "basis_size": r.basis_size,
                "scale": r.scale,
                "convergence_estimate": r.convergence_estimate,
                "delta": r.expectations.as_ref().map(|e| e.iter().map(|x| x.delta).collect::<Vec<_>>()),
                "p2": r.expectations.as_ref().map(|e| e.iter().map(|x| x.p2).collect::<Vec<_>>()),
            }),
            None => json!({"l": l, "bound_states": 0}),
        });
    }
    let summary = json!({"tol": tol, "sectors": sectors});
    Ok(Outcome {
        bytes: render(format, "oracle", cfg, &rows, &summary)?,
        failed: false,
    })
}

pub fn table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let case: TableCase = cfg.get("case").ok_or_else(|| usage("missing table case"))?.parse()?;
    let tol = cfg.f64_opt("tol")?;
    let format = cfg.format()?;
    let run = run_table(case, tol)?;
    Ok(Outcome {
        bytes: render(format, "table", cfg, &run.rows(), &run.summary())?,
        failed: false,
    })
}

pub fn check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let suite: Suite = cfg.get("suite").ok_or_else(|| usage("missing check suite"))?.parse()?;
    let corrupt_scale = cfg.f64_or("corrupt_scale", 1.0)?;
    let format = cfg.format()?;
    let items = run_suite(suite, CheckOptions { corrupt_scale })?;
    let failed = items.iter().any(|c| !c.pass);
    let summary = json!({
        "suite": suite.name(),
        "checked": items.len(),
        "failed": items.iter().filter(|c| !c.pass).count(),
    });
    Ok(Outcome {
        bytes: render(format, "check", cfg, &items, &summary)?,
        failed,
    })
}

pub fn fit(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let family = parse_family(cfg.get("family").ok_or_else(|| usage("missing fit family"))?)?;
    let key = family.parameter_name();
    let default = match family {
        afm_core::fitter::Family::UrPowerLaw => "0.1..2.0:0.1",
        afm_core::fitter::Family::RelCoulomb => "0.2..1.2:0.1",
        afm_core::fitter::Family::UrFunnel => "0.0..1.0:0.1",
    };
    let values = parse_float_range(key, cfg.get(key).unwrap_or(default))?;
    let grid = FitGrid {
        n_max: cfg.u32_or("n_max", 3)?,
        l_max: cfg.u32_or("l_max", 3)?,
        parameter_values: values,
    };
    grid.validate(family).map_err(|e| usage(e.to_string()))?;
    let tol = cfg.f64_opt("tol")?;
    let format = cfg.format()?;
    let run = run_fit(family, &grid, tol)?;
    Ok(Outcome {
        bytes: render(format, "fit", cfg, &run.rows(), &run.summary())?,
        failed: false,
    })
}
