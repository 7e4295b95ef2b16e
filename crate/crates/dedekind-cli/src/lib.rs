//! Batch front end for the `dedekind` library: flag and config handling,
//! result serialization, the on-disk cache and the run manifest.

pub mod cache;
pub mod commands;
pub mod config;
pub mod output;

use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map, Value};

use crate::config::{RunConfig, UsageError};

/// Everything a run produces; `main` only prints it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// 0 on success, 1 on usage errors, 2 when a computation did not converge.
fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match e.downcast_ref::<dedekind::Error>() {
        Some(dedekind::Error::NonConvergence(_)) => 2,
        _ => 1,
    }
}

fn base_tolerances() -> Map<String, Value> {
    use dedekind::tol::*;
    let mut m = Map::new();
    for (k, v) in [
        ("special_abs", SPECIAL_ABS),
        ("w2_integrand_cutoff", W2_INTEGRAND_CUTOFF),
        ("w2_step", W2_STEP),
        ("half_square_xi_max", HALF_SQUARE_XI_MAX),
        ("lvalue_rel", LVALUE_REL),
        ("bound_slack", BOUND_SLACK),
    ] {
        m.insert(k.into(), Value::String(output::fmt_f64(v)));
    }
    m.insert("euler_cutoff".into(), json!(EULER_CUTOFF));
    m
}

fn manifest(cfg: &RunConfig, tolerances: Map<String, Value>, start: Instant, code: i32) -> String {
    let mut tol = base_tolerances();
    tol.extend(tolerances);
    let config = output::to_json(cfg).unwrap_or(Value::Null);
    let m = json!({
        "tool": "dedekind",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "wall_time_s": start.elapsed().as_secs_f64(),
        "tolerances": tol,
        "exit_code": code,
    });
    format!("manifest: {m}\n")
}

fn execute(cfg: &mut RunConfig, stderr: &mut String) -> anyhow::Result<(commands::Rendered, i32)> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads()).build()?;
    let r = pool.install(|| commands::dispatch(cfg))?;
    for w in &r.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    let code = match &r.failure {
        Some(msg) => {
            stderr.push_str(&format!("error: {msg}\n"));
            2
        }
        None => 0,
    };
    Ok((r, code))
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let start = Instant::now();
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let mut stderr = String::new();
    let mut cfg = match cfg.resolve() {
        Ok(c) => c,
        Err(e) => {
            stderr.push_str(&format!("error: {e:#}\n"));
            return Outcome { stdout: String::new(), stderr, code: 1 };
        }
    };
    match execute(&mut cfg, &mut stderr) {
        Ok((r, code)) => {
            stderr.push_str(&manifest(&cfg, r.tolerances, start, code));
            Outcome { stdout: r.stdout, stderr, code }
        }
        Err(e) => {
            let code = exit_code(&e);
            stderr.push_str(&format!("error: {e:#}\n"));
            if code == 1 {
                stderr.push_str(&<RunConfig as clap::CommandFactory>::command().render_usage().to_string());
                stderr.push('\n');
            }
            stderr.push_str(&manifest(&cfg, Map::new(), start, code));
            Outcome { stdout: String::new(), stderr, code }
        }
    }
}
