//! Flag parsing and dispatch for the `afm` binary.

use crate::commands::{self, Outcome};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::emit;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "afm", version, about = "Auxiliary field spectra for spinless Salpeter Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct Common {
    /// key = value settings; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// csv, json or pretty
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// write here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct PhysicsArgs {
    /// e.g. linear:a=1, coulomb:a=1, power:a=1,lambda=0.5, funnel:a=1,b=0.4
    #[arg(long)]
    pub potential: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<String>,
    #[arg(long)]
    pub tol: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form levels over an (n, l) range, optionally with the eigensolver.
    Spectrum {
        #[command(flatten)]
        physics: PhysicsArgs,
        /// harmonic, coulomb, lambda:<x>, linear:b=..,c=..,d=..
        #[arg(long)]
        nmodel: Option<String>,
        /// second N model for the afm_improved column
        #[arg(long)]
        improved: Option<String>,
        /// radial range, e.g. 0..3
        #[arg(long)]
        n: Option<String>,
        /// orbital range, e.g. 0..3
        #[arg(long)]
        l: Option<String>,
        /// also run the eigensolver
        #[arg(long)]
        oracle: bool,
        /// include solver internals
        #[arg(long)]
        verbose: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a benchmark table: linear_ur, coulomb_rel or funnel_ur.
    Table {
        case: String,
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a property suite: scaling, duality, bounds, limits or delta.
    Check {
        suite: String,
        /// test hook: scale the predicted energies of the scaling suite
        #[arg(long, hide = true)]
        corrupt_scale: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Fit N = b n + d l + c: ur-powerlaw, rel-coulomb or ur-funnel.
    Fit {
        family: String,
        /// exponent values, e.g. 0.1..2.0:0.1
        #[arg(long)]
        lambda: Option<String>,
        /// Coulomb strengths, e.g. 0.2..1.2:0.1
        #[arg(long)]
        a: Option<String>,
        /// funnel 1/r strengths, e.g. 0..1:0.1
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        n_max: Option<String>,
        #[arg(long)]
        l_max: Option<String>,
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Eigensolver levels with convergence data.
    Oracle {
        #[command(flatten)]
        physics: PhysicsArgs,
        /// orbital range, e.g. 0..3
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        n_max: Option<String>,
        #[arg(long)]
        nmodel: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn flag(b: bool) -> Option<String> {
    b.then(|| "true".to_string())
}

fn resolve(common: &Common, flags: Vec<(&str, Option<String>)>) -> Result<RunConfig, CliError> {
    let base = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::new(),
    };
    let mut all = flags;
    all.push(("format", common.format.clone()));
    all.push(("output", common.output.clone()));
    let cfg = base.merge(all);
    cfg.format()?;
    Ok(cfg)
}

fn physics_flags(p: PhysicsArgs) -> Vec<(&'static str, Option<String>)> {
    vec![("potential", p.potential), ("sigma", p.sigma), ("mass", p.mass), ("tol", p.tol)]
}

/// Parse, run and emit; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(failed) => i32::from(failed),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

type Body = fn(&RunConfig) -> Result<Outcome, CliError>;

/// Ok(true) when a property check failed.
pub fn run(cli: Cli) -> Result<bool, CliError> {
    let (cfg, body): (RunConfig, Body) = match cli.command {
        Command::Spectrum {
            physics,
            nmodel,
            improved,
            n,
            l,
            oracle,
            verbose,
            common,
        } => {
            let mut f = physics_flags(physics);
            f.extend([
                ("nmodel", nmodel),
                ("improved", improved),
                ("n", n),
                ("l", l),
                ("oracle", flag(oracle)),
                ("verbose", flag(verbose)),
            ]);
            (resolve(&common, f)?, commands::spectrum)
        }
        Command::Table { case, tol, common } => (resolve(&common, vec![("case", Some(case)), ("tol", tol)])?, commands::table),
        Command::Check {
            suite,
            corrupt_scale,
            common,
        } => (
            resolve(&common, vec![("suite", Some(suite)), ("corrupt_scale", corrupt_scale)])?,
            commands::check,
        ),
        Command::Fit {
            family,
            lambda,
            a,
            beta,
            n_max,
            l_max,
            tol,
            common,
        } => (
            resolve(
                &common,
                vec![
                    ("family", Some(family)),
                    ("lambda", lambda),
                    ("a", a),
                    ("beta", beta),
                    ("n_max", n_max),
                    ("l_max", l_max),
                    ("tol", tol),
                ],
            )?,
            commands::fit,
        ),
        Command::Oracle {
            physics,
            l,
            n_max,
            nmodel,
            common,
        } => {
            let mut f = physics_flags(physics);
            f.extend([("l", l), ("n_max", n_max), ("nmodel", nmodel)]);
            (resolve(&common, f)?, commands::oracle)
        }
    };
    let out = body(&cfg)?;
    emit(&out.bytes, cfg.get("output"))?;
    Ok(out.failed)
}
