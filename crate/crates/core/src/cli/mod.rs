//! Command-line front end.
//!
//! Every subcommand prints one JSON envelope (or, with `--out csv`, its
//! table) on stdout. Exit codes: 0 on success, 1 when a solver did not
//! converge or a check failed (the report is still printed), 2 on bad
//! arguments or input.

mod emit;
mod spec;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::integrate::{integrate_weight, IntegrationConfig, IntegrationMode};
use crate::invariants::{
    beta_v, coercivity_radius, fujita_check, futaki_vanishing_report, lichnerowicz_check, product_cy_pipeline,
    ObstructionReport, Valuation,
};
use crate::polytope::Polytope;
use crate::solve::{msy_reeb, soliton_pair, tian_zhu_field, xi_n, SolveReport, SolverConfig};
use crate::weights::weight_gap;

pub use emit::{OutFormat, RunResult, Table, SCHEMA_VERSION};
pub use spec::{NValues, PolytopeRef, WeightSpec};

/// Environment variable holding the size of the integration thread pool.
pub const THREADS_ENV: &str = "SOLITON_POLYTOPE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "soliton-polytope", version, about = "Weighted soliton invariants of toric Fano polytopes")]
pub struct Cli {
    /// TOML file with integration settings; the flags below override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Relative tolerance of adaptive integration [default: 1e-11].
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Polynomial degree of the cubature rule, even and at least 2 [default: 20].
    #[arg(long, global = true)]
    pub quad_degree: Option<usize>,
    /// Seed of Monte Carlo integration.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample count of Monte Carlo integration.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub mc_samples: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
    /// Also write `<command>.json` and `<command>.csv` into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub emit_plot_data: Option<PathBuf>,
    /// Include wall-clock timings (makes the output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Polytopes are `catalog:<name>` or `file:<path.json>`. Weights are JSON,
/// `file:<path.json>` or one of `const[:c]`, `exp:<tau>`, `pow:<xi>:<p>`,
/// `qn:<xi>:<N>`, `tkrs:<xi>:<tau>:<p>`, `tz`, `xin:<N>`; vectors are
/// comma separated.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Soliton vector field tau.
    Soliton { polytope: PolytopeRef },
    /// Reeb field minimizing the Sasaki volume.
    Reeb { polytope: PolytopeRef },
    /// Soliton field tau(xi) paired with a Reeb field xi.
    Pair {
        polytope: PolytopeRef,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        xi: Vec<f64>,
    },
    /// Convergence table of xi_N towards tau with a log-log slope.
    XiSeq {
        polytope: PolytopeRef,
        /// Values of N; `a..b` stands for the powers of two from a to b.
        #[arg(long = "N-list", value_delimiter = ',', default_value = "8..1024")]
        n_list: Vec<NValues>,
    },
    /// Vertex margins n (<xi, V> + 1) - <tau, V>.
    Lich {
        polytope: PolytopeRef,
        /// Soliton field; computed when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        tau: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Option<Vec<f64>>,
        /// Multiply tau by this factor before checking.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        tau_scale: f64,
    },
    /// Weighted volume bound against the degree.
    Fujita {
        polytope: PolytopeRef,
        #[arg(long, default_value = "const")]
        weight: WeightSpec,
    },
    /// Weighted beta invariant of the valuation g = <u, x> + c.
    Beta {
        polytope: PolytopeRef,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Log discrepancy.
        #[arg(long = "A")]
        a: f64,
        #[arg(long, default_value = "const")]
        weight: WeightSpec,
    },
    /// Weight gap lambda_0, checked against a slope when one is given.
    Gap {
        polytope: PolytopeRef,
        #[arg(long)]
        v0: WeightSpec,
        #[arg(long)]
        v1: WeightSpec,
        #[arg(long)]
        slope: Option<f64>,
    },
    /// Reeb field of the cone over X x P^k from xi_N.
    ProductCy {
        polytope: PolytopeRef,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Futaki invariant of a weight and whether it vanishes.
    Futaki {
        polytope: PolytopeRef,
        #[arg(long, default_value = "const")]
        weight: WeightSpec,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Built-in polytopes.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Moments of a weight (debugging aid).
    Integrate {
        polytope: PolytopeRef,
        #[arg(long, default_value = "const")]
        weight: WeightSpec,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=2))]
        order: u8,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Auto,
    Exact,
    Adaptive,
    MonteCarlo,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Soliton { .. } => "soliton",
            Command::Reeb { .. } => "reeb",
            Command::Pair { .. } => "pair",
            Command::XiSeq { .. } => "xi-seq",
            Command::Lich { .. } => "lich",
            Command::Fujita { .. } => "fujita",
            Command::Beta { .. } => "beta",
            Command::Gap { .. } => "gap",
            Command::ProductCy { .. } => "product-cy",
            Command::Futaki { .. } => "futaki",
            Command::Catalog { .. } => "catalog",
            Command::Integrate { .. } => "integrate",
        }
    }
}

/// What a subcommand produced.
struct Outcome {
    output: Value,
    passed: bool,
    table: Table,
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl Cli {
    fn solver_config(&self) -> Result<SolverConfig> {
        let mut integration = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                toml::from_str::<IntegrationConfig>(&text)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
            }
            None => IntegrationConfig::default(),
        };
        if let Some(d) = self.quad_degree {
            integration.quadrature_degree = d;
        }
        if let Some(t) = self.rel_tol {
            integration.rel_tol = t;
        }
        let d = integration.quadrature_degree;
        if d < 2 || !d.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("the quadrature degree must be even and at least 2, got {d}")));
        }
        let t = integration.rel_tol;
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidInput(format!("the relative tolerance must lie in (0, 1), got {t}")));
        }
        Ok(SolverConfig {
            integration,
            ..SolverConfig::default()
        })
    }

    /// Runs the parsed command and wraps the result.
    pub fn execute(&self, argv: Vec<String>) -> Result<RunResult> {
        let cfg = self.solver_config()?;
        let start = Instant::now();
        let outcome = self.dispatch(&cfg)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        Ok(RunResult {
            schema_version: SCHEMA_VERSION,
            command: self.command.name().to_string(),
            argv,
            config: json!({
                "solver": cfg,
                "seed": self.seed,
                "mc_samples": self.mc_samples,
            }),
            passed: outcome.passed,
            output: outcome.output,
            timings_ms: self.timings.then(|| BTreeMap::from([("total".to_string(), elapsed)])),
            table: outcome.table,
        })
    }

    fn dispatch(&self, cfg: &SolverConfig) -> Result<Outcome> {
        let icfg = &cfg.integration;
        match &self.command {
            Command::Soliton { polytope } => solve_outcome(tian_zhu_field(&polytope.load()?, cfg)),
            Command::Reeb { polytope } => solve_outcome(msy_reeb(&polytope.load()?, cfg)),
            Command::Pair { polytope, xi } => solve_outcome(soliton_pair(&polytope.load()?, xi, cfg)),
            Command::XiSeq { polytope, n_list } => {
                let ns: Vec<f64> = n_list.iter().flat_map(|v| v.0.iter().copied()).collect();
                xi_sequence(&polytope.load()?, &ns, cfg)
            }
            Command::Lich {
                polytope,
                tau,
                xi,
                tau_scale,
            } => {
                let p = polytope.load()?;
                let tau = match (tau, xi) {
                    (Some(t), _) => t.clone(),
                    (None, None) => unwrap_converged(tian_zhu_field(&p, cfg))?.minimizer,
                    (None, Some(x)) => unwrap_converged(soliton_pair(&p, x, cfg))?.minimizer,
                };
                let tau: Vec<f64> = tau.iter().map(|t| t * tau_scale).collect();
                let r = lichnerowicz_check(&p, &tau, xi.as_deref())?;
                let mut table = Table::new(&["vertex", "margin"]);
                if let Some(Value::Array(rows)) = r.details.get("vertex_margins") {
                    for row in rows {
                        let v: Vec<f64> = serde_json::from_value(row["vertex"].clone())?;
                        let m = row["margin"].as_f64().unwrap_or(f64::NAN);
                        table.push(vec![emit::coords(&v), emit::num(m)]);
                    }
                }
                Ok(report_outcome_with(r, table))
            }
            Command::Fujita { polytope, weight } => {
                let p = polytope.load()?;
                let w = weight.resolve(&p, cfg)?;
                Ok(report_outcome(fujita_check(&p, &w, icfg)?))
            }
            Command::Beta {
                polytope,
                u,
                c,
                a,
                weight,
            } => {
                let p = polytope.load()?;
                let w = weight.resolve(&p, cfg)?;
                let r = beta_v(&p, &Valuation::new(u, *c, *a), &w, icfg)?;
                let mut table = Table::new(&["t", "vol_v_truncated"]);
                if let Some(Value::Array(rows)) = r.details.get("table") {
                    for row in rows {
                        let t = row["t"].as_f64().unwrap_or(f64::NAN);
                        let v = row["vol_v"].as_f64().unwrap_or(f64::NAN);
                        table.push(vec![emit::num(t), emit::num(v)]);
                    }
                }
                Ok(report_outcome_with(r, table))
            }
            Command::Gap { polytope, v0, v1, slope } => {
                let p = polytope.load()?;
                let (w0, w1) = (v0.resolve(&p, cfg)?, v1.resolve(&p, cfg)?);
                match slope {
                    Some(s) => Ok(report_outcome(coercivity_radius(&w0, &w1, &p, *s, icfg)?)),
                    None => {
                        let gap = weight_gap(&w0, &w1, &p, icfg)?;
                        let mut table = Table::new(&["lambda0"]);
                        table.push(vec![emit::num(gap)]);
                        Ok(Outcome {
                            output: json!({"lambda0": gap, "v0": w0, "v1": w1}),
                            passed: true,
                            table,
                        })
                    }
                }
            }
            Command::ProductCy { polytope, k } => {
                let r = product_cy_pipeline(&polytope.load()?, *k, cfg)?;
                let mut table = Table::new(&["check", "passed", "value"]);
                for (check, flag, value) in [
                    ("dual_contains", "check_a_dual_contains", "dual_margin"),
                    ("futaki_residual", "check_b_futaki", "residual_b"),
                    ("reeb_distance", "check_c_reeb", "reeb_error"),
                ] {
                    table.push(vec![
                        check.to_string(),
                        r.details[flag].to_string(),
                        emit::num(r.details[value].as_f64().unwrap_or(f64::INFINITY)),
                    ]);
                }
                Ok(report_outcome_with(r, table))
            }
            Command::Futaki { polytope, weight, tol } => {
                let p = polytope.load()?;
                let w = weight.resolve(&p, cfg)?;
                Ok(report_outcome(futaki_vanishing_report(&p, &w, *tol, icfg)?))
            }
            Command::Catalog { action } => catalog_outcome(action),
            Command::Integrate {
                polytope,
                weight,
                order,
                mode,
            } => {
                let p = polytope.load()?;
                let w = weight.resolve(&p, cfg)?;
                let mode = match mode {
                    ModeArg::Auto => IntegrationMode::Auto,
                    ModeArg::Exact => IntegrationMode::Exact,
                    ModeArg::Adaptive => IntegrationMode::Adaptive,
                    ModeArg::MonteCarlo => IntegrationMode::MonteCarlo {
                        samples: self.mc_samples,
                        seed: self.seed,
                    },
                };
                let icfg = IntegrationConfig { mode, ..icfg.clone() };
                let m = integrate_weight(&p, &w, *order as usize, &icfg)?;
                let mut table = Table::new(&["quantity", "value"]);
                table.push(vec!["mass".into(), emit::num(m.mass)]);
                for (j, f) in m.first.iter().enumerate() {
                    table.push(vec![format!("x{}", j + 1), emit::num(*f)]);
                }
                for (j, row) in m.second.iter().enumerate() {
                    for (k, s) in row.iter().enumerate().skip(j) {
                        table.push(vec![format!("x{}x{}", j + 1, k + 1), emit::num(*s)]);
                    }
                }
                Ok(Outcome {
                    passed: m.tolerance_met,
                    output: json!({"weight": w, "moments": m}),
                    table,
                })
            }
        }
    }
}

fn unwrap_converged(r: Result<SolveReport>) -> Result<SolveReport> {
    match r {
        Err(Error::NotConverged(rep)) => Ok(*rep),
        other => other,
    }
}

fn solve_outcome(r: Result<SolveReport>) -> Result<Outcome> {
    let report = unwrap_converged(r)?;
    let n = report.minimizer.len();
    let mut header = vec!["iteration".to_string(), "value".into(), "gradient_norm".into()];
    header.extend((1..=n).map(|k| format!("x{k}")));
    let mut table = Table { header, rows: Vec::new() };
    for (i, t) in report.trace.iter().enumerate() {
        let mut row = vec![i.to_string(), emit::num(t.value), emit::num(t.gradient_norm)];
        row.extend(t.point.iter().map(|c| emit::num(*c)));
        table.push(row);
    }
    Ok(Outcome {
        passed: report.converged,
        output: to_value(&report),
        table,
    })
}

fn report_outcome(r: ObstructionReport) -> Outcome {
    let mut table = Table::new(&["kind", "passed", "margin"]);
    let kind = to_value(r.kind);
    table.push(vec![
        kind.as_str().unwrap_or_default().to_string(),
        r.passed.to_string(),
        emit::num(r.margin),
    ]);
    report_outcome_with(r, table)
}

fn report_outcome_with(r: ObstructionReport, table: Table) -> Outcome {
    Outcome {
        passed: r.passed,
        output: to_value(&r),
        table,
    }
}

/// Least-squares slope and intercept of `ln y` against `ln x`.
pub fn log_log_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

fn xi_sequence(p: &Polytope, n_list: &[f64], cfg: &SolverConfig) -> Result<Outcome> {
    let tau = tian_zhu_field(p, cfg);
    let tau_converged = !matches!(tau, Err(Error::NotConverged(_)));
    let tau = unwrap_converged(tau)?;
    let mut table = Table::new(&["N", "xi_err", "residual"]);
    let mut rows = Vec::new();
    let mut errs = Vec::new();
    let mut all_converged = tau_converged;
    for &n in n_list {
        let r = unwrap_converged(xi_n(p, n, cfg))?;
        all_converged &= r.converged;
        let d: Vec<f64> = r.minimizer.iter().zip(&tau.minimizer).map(|(a, b)| a - b).collect();
        let err = norm(&d);
        errs.push(err);
        let residual = r.residual.unwrap_or(f64::NAN);
        table.push(vec![emit::num(n), emit::num(err), emit::num(residual)]);
        rows.push(json!({
            "N": n,
            "xi_err": err,
            "residual": residual,
            "xi_N": r.minimizer,
            "iterations": r.iterations,
            "converged": r.converged,
            "notes": r.notes,
        }));
    }
    let fit = log_log_fit(n_list, &errs);
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    Ok(Outcome {
        output: json!({
            "tau": tau.minimizer,
            "tau_residual": tau.residual,
            "tau_converged": tau_converged,
            "rows": rows,
            "slope": fit.map(|f| f.0),
            "intercept": fit.map(|f| f.1),
            "monotone_decreasing": monotone,
        }),
        passed: all_converged,
        table,
    })
}

fn catalog_outcome(action: &CatalogAction) -> Result<Outcome> {
    match action {
        CatalogAction::List => {
            let mut table = Table::new(&["name", "dim", "degree", "notes"]);
            let mut entries = Vec::new();
            for e in catalog::ENTRIES {
                let p = e.polytope();
                table.push(vec![e.name.into(), e.dim.to_string(), emit::num(p.degree()), e.notes.into()]);
                entries.push(json!({
                    "name": e.name,
                    "description": e.description,
                    "notes": e.notes,
                    "dim": e.dim,
                    "degree": p.degree(),
                }));
            }
            Ok(Outcome {
                output: Value::Array(entries),
                passed: true,
                table,
            })
        }
        CatalogAction::Show { name } => {
            let e = catalog::entry(name)?;
            let p = e.polytope();
            let mut table = Table::new(&["vertex"]);
            for v in p.vertices_f64() {
                table.push(vec![emit::coords(v)]);
            }
            let polytope: Value = serde_json::from_str(&p.to_json())?;
            Ok(Outcome {
                output: json!({
                    "entry": e,
                    "polytope": polytope,
                    "vertices": p.vertices_f64(),
                    "volume": p.volume().to_string(),
                    "degree": p.degree(),
                    "reflexive": p.is_reflexive(),
                }),
                passed: true,
                table,
            })
        }
    }
}

/// Exit status for an error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotConverged(_) | Error::IntegrationFailure(_) => 1,
        _ => 2,
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| Error::InvalidInput(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool that already exists keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Parses `args` (program name first), runs the command and writes the
/// result to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = cli.execute(argv).and_then(|r| {
        r.write(cli.out, out)?;
        if let Some(dir) = &cli.emit_plot_data {
            r.emit_plot_data(dir)?;
        }
        Ok(r)
    });
    match result {
        Ok(r) if r.passed => 0,
        Ok(_) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
