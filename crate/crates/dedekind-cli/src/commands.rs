//! One function per subcommand. Each fills in its defaults on the config (so
//! the manifest echoes them) and returns the rendered stdout.

use anyhow::Context;
use dedekind::analytic::identity_suite;
use dedekind::fields::{
    build_inert_polynomial, find_split_primes, northcott_enumerate, zeta_field_sigma, zeta_neg_line, FieldSpec,
};
use dedekind::lfunc::{evaluate, sono_m, LValueRequest, Method};
use dedekind::rand_euler::{
    closed_form_moments, empirical_density, mc_tail, sample_random_euler, DensityReport, RandomEulerSpec, Side,
};
use dedekind::resonator::{moment_report, scan_min_l, scan_min_over, ResonatorSpec};
use dedekind::special::{const_c20, const_c21, const_c5, const_c6};
use dedekind::tol;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::cache::{cache_dir, cache_roundtrip, CacheKind};
use crate::config::{req, usage, Command, Format, RunConfig};
use crate::output::{fmt_f64, key_value_csv, render_json, table_csv, to_json};

pub struct Rendered {
    pub stdout: String,
    pub warnings: Vec<String>,
    /// Set when the result is written but the run should exit with status 2.
    pub failure: Option<String>,
    /// Tolerances specific to this run, echoed in the manifest.
    pub tolerances: Map<String, Value>,
}

impl Rendered {
    fn new(stdout: String) -> Self {
        Rendered { stdout, warnings: vec![], failure: None, tolerances: Map::new() }
    }

    fn tol(mut self, name: &str, v: f64) -> Self {
        self.tolerances.insert(name.into(), Value::String(fmt_f64(v)));
        self
    }
}

fn default_format(cmd: Command) -> Format {
    match cmd {
        Command::ScanMin | Command::RandEuler | Command::Density => Format::Csv,
        _ => Format::Json,
    }
}

fn emit(cfg: &RunConfig, v: &Value) -> anyhow::Result<String> {
    match cfg.out.expect("format resolved") {
        Format::Json => render_json(v),
        Format::Csv => Ok(key_value_csv(v)),
    }
}

fn side(cfg: &mut RunConfig) -> anyhow::Result<Side> {
    let s = cfg.side.get_or_insert_with(|| "lower".into()).clone();
    s.parse().map_err(|e: dedekind::Error| crate::config::UsageError(e.to_string()).into())
}

pub fn dispatch(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let cmd = cfg.command()?;
    cfg.out.get_or_insert(default_format(cmd));
    cfg.threads.get_or_insert(1);
    match cmd {
        Command::Constants => constants(cfg),
        Command::Identities => identities(cfg),
        Command::Lvalue => lvalue(cfg),
        Command::ScanMin => scan_min(cfg),
        Command::Moments => moments(cfg),
        Command::SonoM => sono(cfg),
        Command::BuildInert => build_inert(cfg),
        Command::BuildSplit => build_split(cfg),
        Command::NegLine => neg_line(cfg),
        Command::Northcott => northcott(cfg),
        Command::RandEuler => rand_euler(cfg),
        Command::Density => density(cfg),
    }
}

fn constants(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let cutoff = *cfg.budget.get_or_insert(10_000_000);
    let sigma = *cfg.sigma.get_or_insert(0.75);
    let c6 = const_c6(cutoff)?;
    let c5 = const_c5(cutoff)?;
    let mut c20 = Map::new();
    c20.insert(sigma.to_string(), json!(const_c20(sigma)?));
    let v = to_json(&json!({
        "c5": c5.value,
        "c5_error": c5.error,
        "c6": c6.value,
        "c6_error": c6.error,
        "c21": const_c21()?,
        "c20": c20,
        "prime_cutoff": cutoff,
    }))?;
    Ok(Rendered::new(emit(cfg, &v)?))
}

fn identities(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let report = identity_suite()?;
    let mut r = Rendered::new(emit(cfg, &to_json(&report)?)?);
    for c in &report.checks {
        r = r.tol(&c.name, c.tolerance);
    }
    if !report.pass {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        r.failure = Some(format!("identity checks failed: {}", failed.join(", ")));
    }
    Ok(r)
}

fn lvalue(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let sigma = req(cfg.sigma, "sigma")?;
    let d = req(cfg.d, "d")?;
    let method: Method = cfg
        .method
        .get_or_insert_with(|| "direct_abel".into())
        .parse()
        .map_err(|e: dedekind::Error| crate::config::UsageError(e.to_string()))?;
    let tol = *cfg.tol.get_or_insert(tol::LVALUE_REL);
    if cfg.x.is_some() && method != Method::TwistedExp {
        return usage("--x only applies to --method twisted_exp");
    }
    let req = LValueRequest { sigma, d, method, tol, budget: cfg.budget, twist_x: cfg.x };
    let r = evaluate(&req)?;
    let v = to_json(&json!({
        "d": r.d,
        "sigma": r.sigma,
        "value": r.value,
        "error": r.error,
        "method": r.method.to_string(),
        "terms": r.terms,
        "partial": r.partial,
    }))?;
    let mut out = Rendered::new(emit(cfg, &v)?).tol("lvalue_rel", tol);
    if r.partial {
        out.failure = Some(format!("L({sigma}, χ_{d}) did not reach relative accuracy {tol}"));
    }
    Ok(out)
}

fn scan_min(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let sigma = req(cfg.sigma, "sigma")?;
    let x = req(cfg.x, "x")?;
    let top = *cfg.top.get_or_insert(10);
    let chunks = cfg.threads();
    let mut warnings = vec![];
    let dir = cache_dir(cfg.cache_dir.as_deref());
    let res = match dir {
        Some(dir) if sigma == 0.5 && x.fract() == 0.0 && x >= 1.0 => {
            let entry = cache_roundtrip(&dir, CacheKind::Fd8, x as u64)?;
            warnings.extend(entry.warning);
            scan_min_over(sigma, x, &entry.values, top, chunks)?
        }
        _ => scan_min_l(sigma, x, top, chunks)?,
    };
    let stdout = match cfg.out.expect("format resolved") {
        Format::Json => render_json(&to_json(&res)?)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = res
                .minima
                .iter()
                .map(|e| vec![e.d.to_string(), fmt_f64(e.abs_l), e.sign_certain.to_string()])
                .collect();
            table_csv(&["d", "abs_L", "sign_certain"], &rows)
        }
    };
    let mut r = Rendered::new(stdout).tol("lvalue_rel", tol::LVALUE_REL);
    r.warnings = warnings;
    Ok(r)
}

fn moments(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let sigma = req(cfg.sigma, "sigma")?;
    let x = req(cfg.x, "x")?;
    let spec = if sigma == 0.5 {
        let n = *cfg.n.get_or_insert((x.powf(0.05).floor() as u64).max(1));
        ResonatorSpec::center(x, n)?
    } else {
        let spec = ResonatorSpec::right(x, sigma, cfg.n)?;
        cfg.n = Some(spec.n);
        spec
    };
    let spec = match cfg.l_override {
        Some(l) => spec.with_l(l)?,
        None => spec,
    };
    let report = moment_report(&spec)?;
    Ok(Rendered::new(emit(cfg, &to_json(&report)?)?)
        .tol("lvalue_rel", tol::LVALUE_REL)
        .tol("bound_slack", tol::BOUND_SLACK))
}

fn sono(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let a1 = req(cfg.alpha1, "alpha1")?;
    let a2 = req(cfg.alpha2, "alpha2")?;
    let l = *cfg.l.get_or_insert(1);
    let x = req(cfg.x, "x")?;
    let v = sono_m(a1, a2, l, x)?;
    let out = to_json(&json!({"alpha1": a1, "alpha2": a2, "l": l, "x": x, "value": v}))?;
    Ok(Rendered::new(emit(cfg, &out)?).tol("lvalue_rel", tol::LVALUE_REL))
}

/// Field specs carry integers beyond 2^64, so they are written as strings.
fn field_json(spec: &FieldSpec) -> Value {
    match spec {
        FieldSpec::Inert(s) => json!({
            "type": "inert",
            "degree": s.degree,
            "n": s.n,
            "coefficients": s.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "inert_primes": s.inert_primes,
            "modulus": s.modulus.to_string(),
        }),
        FieldSpec::Multiquadratic(s) => json!({
            "type": "multiquadratic",
            "k": s.k,
            "n": s.n,
            "q_list": s.q_list,
            "modulus": s.modulus.to_string(),
        }),
    }
}

fn field_report(cfg: &mut RunConfig, spec: FieldSpec) -> anyhow::Result<Rendered> {
    let mut v = json!({"field": field_json(&spec)});
    let mut r_tol = None;
    if let Some(sigma) = cfg.sigma {
        let cutoff = *cfg.cutoff.get_or_insert(tol::EULER_CUTOFF);
        let z = zeta_field_sigma(&spec, sigma, cutoff)?;
        r_tol = Some(z.log_error);
        v["zeta"] = serde_json::to_value(&z)?;
        v["within_bound"] = json!(z.log_ratio.abs() <= z.target_bound);
    } else if cfg.cutoff.is_some() {
        return usage("--cutoff needs --sigma");
    }
    let mut r = Rendered::new(emit(cfg, &to_json(&v)?)?);
    if let Some(e) = r_tol {
        r = r.tol("log_error", e);
    }
    Ok(r)
}

fn build_inert(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let d = req(cfg.degree, "degree")? as usize;
    let n = req(cfg.inert, "inert")? as usize;
    let seed = *cfg.seed.get_or_insert(0);
    let spec = build_inert_polynomial(d, n, seed)?;
    field_report(cfg, FieldSpec::Inert(spec))
}

fn build_split(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let k = req(cfg.k, "k")? as usize;
    let n = req(cfg.n, "n")? as usize;
    let spec = find_split_primes(k, n)?;
    field_report(cfg, FieldSpec::Multiquadratic(spec))
}

fn neg_line(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let re = req(cfg.sigma_re, "sigma-re")?;
    let im = *cfg.sigma_im.get_or_insert(0.0);
    let d = req(cfg.d, "d")?;
    let r = zeta_neg_line(Complex64::new(re, im), d)?;
    Ok(Rendered::new(emit(cfg, &to_json(&r)?)?).tol("special_abs", tol::SPECIAL_ABS))
}

fn northcott(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let s = req(cfg.s, "s")?;
    let b = req(cfg.bound, "bound")?;
    let max_disc = *cfg.max_disc.get_or_insert(1e6);
    let r = northcott_enumerate(Complex64::new(s, 0.0), b, max_disc)?;
    Ok(Rendered::new(emit(cfg, &to_json(&r)?)?))
}

fn tail_rows(reports: &[DensityReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                fmt_f64(r.b),
                fmt_f64(r.empirical),
                fmt_f64(r.half_width),
                r.prediction.map(fmt_f64).unwrap_or_default(),
            ]
        })
        .collect()
}

const TAIL_HEADER: [&str; 4] = ["B", "empirical", "half_width", "prediction"];

fn rand_euler(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let sigma = req(cfg.sigma, "sigma")?;
    let spec = RandomEulerSpec {
        sigma,
        y: *cfg.y.get_or_insert(1_000),
        samples: *cfg.samples.get_or_insert(100_000),
        seed: *cfg.seed.get_or_insert(0),
    };
    let side = side(cfg)?;
    let bs = cfg.b.clone().context("missing --b")?;
    let samples = sample_random_euler(&spec)?;
    let tails: Vec<DensityReport> =
        bs.iter().map(|&b| mc_tail(&samples, sigma, b, side)).collect::<dedekind::Result<_>>()?;
    let stdout = match cfg.out.expect("format resolved") {
        Format::Csv => table_csv(&TAIL_HEADER, &tail_rows(&tails)),
        Format::Json => {
            let (m1, m2) = closed_form_moments(sigma, spec.y)?;
            let n = samples.len() as f64;
            let mean = samples.iter().sum::<f64>() / n;
            let second = samples.iter().map(|v| v * v).sum::<f64>() / n;
            render_json(&to_json(&json!({
                "spec": spec,
                "closed_form_mean": m1,
                "closed_form_second_moment": m2,
                "sample_mean": mean,
                "sample_second_moment": second,
                "tails": tails,
            }))?)?
        }
    };
    Ok(Rendered::new(stdout))
}

fn density(cfg: &mut RunConfig) -> anyhow::Result<Rendered> {
    let sigma = req(cfg.sigma, "sigma")?;
    let x = req(cfg.x, "x")?;
    let side = side(cfg)?;
    let bs = cfg.b.clone().context("missing --b")?;
    let reports = empirical_density(sigma, x, &bs, side)?;
    let stdout = match cfg.out.expect("format resolved") {
        Format::Csv => table_csv(&TAIL_HEADER, &tail_rows(&reports)),
        Format::Json => render_json(&to_json(&reports)?)?,
    };
    Ok(Rendered::new(stdout).tol("lvalue_rel", tol::LVALUE_REL))
}
