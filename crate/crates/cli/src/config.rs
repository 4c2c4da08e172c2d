//! Settings from a `key = value` file merged with command-line flags.

use crate::error::{usage, CliError};
use afm_core::afm::NModel;
use afm_core::spectra::PotentialSpec;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "pretty" => Ok(Format::Pretty),
            _ => Err(usage(format!("unknown format '{s}' (csv, json, pretty)"))),
        }
    }
}

/// Resolved key/value settings for one command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse `key = value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse_file_text(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
            let k = k.trim().replace('-', "_");
            if k.is_empty() {
                return Err(usage(format!("config line {}: empty key", i + 1)));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(RunConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_file_text(&text)
    }

    /// Flag values override file values.
    pub fn merge<I, K>(mut self, flags: I) -> Self
    where
        I: IntoIterator<Item = (K, Option<String>)>,
        K: Into<String>,
    {
        for (k, v) in flags {
            if let Some(v) = v {
                self.values.insert(k.into(), v);
            }
        }
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => parse_f64(key, s),
        }
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key).map(|s| parse_f64(key, s)).transpose()
    }

    pub fn u32_or(&self, key: &str, default: u32) -> Result<u32, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s.parse().map_err(|_| usage(format!("{key}: not a nonnegative integer: '{s}'"))),
        }
    }

    pub fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(s) => Err(usage(format!("{key}: expected true/false, got '{s}'"))),
        }
    }

    pub fn format(&self) -> Result<Format, CliError> {
        self.get("format").unwrap_or("pretty").parse()
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s.trim().parse().map_err(|_| usage(format!("{key}: not a number: '{s}'")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{key}: not finite: '{s}'")))
    }
}

/// `3` or `0..3` (inclusive).
pub fn parse_int_range(key: &str, s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || usage(format!("{key}: expected N or A..B, got '{s}'"));
    match s.split_once("..") {
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if b < a {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
    }
}

/// `x`, `x,y,z` or `a..b:step` (inclusive of b up to rounding).
pub fn parse_float_range(key: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || usage(format!("{key}: expected x, x,y,.. or a..b:step, got '{s}'"));
    if let Some((range, step)) = s.split_once(':') {
        let (a, b) = range.split_once("..").ok_or_else(bad)?;
        let a = parse_f64(key, a)?;
        let b = parse_f64(key, b)?;
        let h = parse_f64(key, step)?;
        if h.is_nan() || h <= 0.0 || b < a {
            return Err(bad());
        }
        let count = ((b - a) / h + 1e-9).floor() as usize;
        // round to the step's decimal grid so printed parameters stay clean
        Ok((0..=count).map(|i| round12(a + i as f64 * h)).collect())
    } else {
        s.split(',').map(|t| parse_f64(key, t)).collect()
    }
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn kv_args(key: &str, body: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for part in body.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("{key}: expected name=value in '{part}'")))?;
        out.insert(k.trim().to_string(), parse_f64(key, v)?);
    }
    Ok(out)
}

fn take(key: &str, args: &mut BTreeMap<String, f64>, name: &str, default: Option<f64>) -> Result<f64, CliError> {
    args.remove(name)
        .or(default)
        .ok_or_else(|| usage(format!("{key}: missing parameter '{name}'")))
}

/// `linear:a=1`, `coulomb:a=1`, `harmonic:a=1`, `power:a=1,lambda=0.5`,
/// `funnel:a=1,b=0.4`, `sqrt:a=1,b=1`, `yukawa:alpha=1,beta=0.1`.
pub fn parse_potential(s: &str) -> Result<PotentialSpec, CliError> {
    let key = "potential";
    let (name, body) = s.split_once(':').unwrap_or((s, ""));
    let mut args = kv_args(key, body)?;
    let pot = match name.trim() {
        "linear" => PotentialSpec::linear(take(key, &mut args, "a", Some(1.0))?),
        "coulomb" => PotentialSpec::coulomb(take(key, &mut args, "a", Some(1.0))?),
        "harmonic" => PotentialSpec::harmonic(take(key, &mut args, "a", Some(1.0))?),
        "power" => PotentialSpec::PowerLaw {
            a: take(key, &mut args, "a", Some(1.0))?,
            lambda: take(key, &mut args, "lambda", None)?,
        },
        "funnel" => PotentialSpec::Funnel {
            a: take(key, &mut args, "a", Some(1.0))?,
            b: take(key, &mut args, "b", None)?,
        },
        "sqrt" => PotentialSpec::SquareRoot {
            a: take(key, &mut args, "a", Some(1.0))?,
            b: take(key, &mut args, "b", None)?,
        },
        "yukawa" => PotentialSpec::Yukawa {
            alpha: take(key, &mut args, "alpha", None)?,
            beta: take(key, &mut args, "beta", None)?,
        },
        other => return Err(usage(format!("unknown potential '{other}'"))),
    };
    if let Some(k) = args.keys().next() {
        return Err(usage(format!("{key}: unexpected parameter '{k}'")));
    }
    pot.validate().map_err(|e| usage(format!("{key}: {e}")))?;
    Ok(pot)
}

/// `harmonic`, `coulomb`, `lambda:<λ>`, `linear:b=..,c=..,d=..`, `custom:b=..,c=..,d=..`.
pub fn parse_nmodel(s: &str) -> Result<NModel, CliError> {
    let key = "nmodel";
    let (name, body) = s.split_once(':').unwrap_or((s, ""));
    match name.trim() {
        "harmonic" => Ok(NModel::Harmonic),
        "coulomb" => Ok(NModel::CoulombLike),
        "lambda" => Ok(NModel::LambdaFit(parse_f64(key, body)?)),
        "linear" | "custom" => {
            let mut args = kv_args(key, body)?;
            let b = take(key, &mut args, "b", None)?;
            let c = take(key, &mut args, "c", None)?;
            let d = take(key, &mut args, "d", Some(1.0))?;
            Ok(if name == "linear" {
                NModel::LinearFit { b, c, d }
            } else {
                NModel::Custom { b, c, d }
            })
        }
        other => Err(usage(format!("unknown N model '{other}'"))),
    }
}
