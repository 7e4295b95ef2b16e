//! Flags, the `--config` file that mirrors them, and per-subcommand checks.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Constants,
    Identities,
    Lvalue,
    ScanMin,
    Moments,
    SonoM,
    BuildInert,
    BuildSplit,
    NegLine,
    Northcott,
    RandEuler,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Every flag of every subcommand. The config file is a flat JSON object with
/// the same kebab-case keys; flags given on the command line win.
#[derive(Debug, Clone, Default, Parser, Serialize, Deserialize)]
#[command(name = "dedekind", version, about = "Quadratic L-values, field zeta functions and resonator moments")]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub subcommand: Option<Command>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma_im: Option<f64>,
    /// Real part of `s` for `northcott`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub degree: Option<u64>,
    /// Number of inert primes for `build-inert`.
    #[arg(long)]
    pub inert: Option<u64>,
    #[arg(long)]
    pub l_override: Option<f64>,
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub cutoff: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long)]
    pub y: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Comma-separated thresholds.
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<f64>>,
    #[arg(long)]
    pub bound: Option<f64>,
    #[arg(long)]
    pub side: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub max_disc: Option<f64>,
    #[arg(long, value_enum)]
    pub out: Option<Format>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

const COMMON: &[&str] = &["subcommand", "threads", "out", "cache-dir"];

fn allowed(cmd: Command) -> &'static [&'static str] {
    use Command::*;
    match cmd {
        Constants => &["budget", "sigma"],
        Identities => &[],
        Lvalue => &["sigma", "d", "method", "tol", "budget", "x"],
        ScanMin => &["sigma", "x", "top"],
        Moments => &["sigma", "x", "n", "l-override"],
        SonoM => &["alpha1", "alpha2", "l", "x"],
        BuildInert => &["degree", "inert", "sigma", "seed", "cutoff"],
        BuildSplit => &["k", "n", "sigma", "cutoff"],
        NegLine => &["sigma-re", "sigma-im", "d"],
        Northcott => &["s", "bound", "max-disc"],
        RandEuler => &["sigma", "y", "samples", "seed", "b", "side"],
        Density => &["sigma", "x", "b", "side"],
    }
}

/// Usage problems: bad flags, missing values, malformed config files.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

impl RunConfig {
    /// Overlays the command-line flags on the config file, if any.
    pub fn resolve(self) -> anyhow::Result<Self> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let mut merged: Map<String, Value> = match serde_json::from_str(&text) {
            Ok(Value::Object(m)) => m,
            Ok(_) => return usage(format!("{} is not a JSON object", path.display())),
            Err(e) => return usage(format!("{}: {e}", path.display())),
        };
        serde_json::from_value::<RunConfig>(Value::Object(merged.clone()))
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let Value::Object(cli) = serde_json::to_value(&self)? else { unreachable!() };
        for (k, v) in cli {
            if !v.is_null() {
                merged.insert(k, v);
            }
        }
        let mut out: RunConfig = serde_json::from_value(Value::Object(merged))?;
        out.config = self.config;
        Ok(out)
    }

    pub fn command(&self) -> anyhow::Result<Command> {
        match self.subcommand {
            Some(c) => Ok(c),
            None => usage("no subcommand given"),
        }
    }

    /// Rejects flags the subcommand does not read.
    pub fn validate(&self) -> anyhow::Result<()> {
        let cmd = self.command()?;
        let Value::Object(m) = serde_json::to_value(self)? else { unreachable!() };
        for (k, v) in &m {
            if !v.is_null() && !COMMON.contains(&k.as_str()) && !allowed(cmd).contains(&k.as_str()) {
                return usage(format!("--{k} is not used by {}", cmd_name(cmd)));
            }
        }
        if self.threads == Some(0) {
            return usage("--threads must be at least 1");
        }
        Ok(())
    }

    pub fn threads(&self) -> usize {
        self.threads.unwrap_or(1)
    }
}

pub fn cmd_name(cmd: Command) -> String {
    cmd.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

/// Unwraps a required flag.
pub fn req<T: Copy>(v: Option<T>, name: &str) -> anyhow::Result<T> {
    match v {
        Some(x) => Ok(x),
        None => usage(format!("missing --{name}")),
    }
}
