//! Command-line front end: bound computation, certification, simulation and
//! empirical validation.  Reports are emitted as JSON or CSV (17 significant
//! digits, `.` decimal separator) and are byte-identical across reruns with
//! the same configuration and seed.
//!
//! Exit codes: 0 success, 2 usage/schema error, 3 mathematical-validity
//! error (divergence, validity threshold), 4 search cap exceeded.

use std::path::PathBuf;

use certistoch::core::dvw::{dvw_model_check, dvw_prenorm, DvwModel, DvwSpace};
use certistoch::core::error::{Error, Result};
use certistoch::core::mc::{
    sample_size_ct, sample_size_lp, sample_size_orlicz, sample_size_psi,
};
use certistoch::core::process::{sup_norm_bound, sup_tail_bound, ProcessSpec};
use certistoch::core::psi::{kappa, tail_bound, PsiVariable};
use certistoch::core::series::{
    remainder_constants, select_truncation, CaseStudyParams, SeriesModel, XiSampler,
};
use certistoch::core::subgauss::{
    ct_tail_bound, ct_validity_threshold, lp_criteria, tau_hat, whole_process_factor,
    PhiFunction, TauBudget,
};
use certistoch::exit;
use certistoch::format::{linspace, sig17};
use certistoch::parallel::{run_certified, simulate_paths};
use certistoch::parse;
use certistoch::validate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Certified accuracy/reliability bounds for stochastic simulation and
/// Monte-Carlo integration.
#[derive(Parser)]
#[command(name = "certistoch", version)]
struct Cli {
    /// JSON file whose fields override the subcommand's flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Probability bounds: scalar tails and process suprema.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Majorizing characteristic kappa(n) of a psi family.
    Kappa(KappaArgs),
    /// Certified Monte-Carlo sample sizes and estimator runs.
    #[command(subcommand)]
    Mc(McCmd),
    /// Spectral series case study: truncation, simulation, constants.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Heavy-tail (V,W) prenorms and model-reliability checks.
    #[command(subcommand)]
    Dvw(DvwCmd),
    /// phi-sub-Gaussian criteria, uniform bounds and basis factors.
    #[command(subcommand)]
    Subgauss(SubgaussCmd),
    /// Empirical validation experiments (tail-gauss, mc-coverage, sup-bound).
    Validate(ValidateArgs),
}

/// Report serialization format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum OutFormat {
    /// Comma-separated table.
    Csv,
    /// Pretty-printed JSON.
    Json,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Tail bound P{|xi| > eps} for a psi-normed variable.
    Tail(BoundTailArgs),
    /// Supremum-norm bound B(p) and tail bounds for a Hoelder process.
    Sup(BoundSupArgs),
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundTailArgs {
    /// psi family, e.g. power:0.5, exppower:1,0.5, logpower:2.
    #[arg(long)]
    family: String,
    /// psi-norm of the variable.
    #[arg(long)]
    norm: f64,
    /// Comma-separated accuracy levels.
    #[arg(long)]
    eps: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundSupArgs {
    /// psi family of the process.
    #[arg(long)]
    family: String,
    /// inf_t of the pointwise psi-norm over the interval.
    #[arg(long)]
    inf_norm: f64,
    /// Hoelder constant of the increment majorant sigma(h) = C h^delta.
    #[arg(long)]
    holder_c: f64,
    /// Hoelder exponent delta in (0, 1].
    #[arg(long)]
    holder_delta: f64,
    /// Parameter interval as `c,d`.
    #[arg(long)]
    domain: String,
    /// Chaining parameter: `optimize` or `fixed:<p>`.
    #[arg(long, default_value = "optimize")]
    p: String,
    /// Entropy-integral split point (default: chosen by the library).
    #[arg(long)]
    tau: Option<f64>,
    /// Optional comma-separated accuracy levels for tail bounds.
    #[arg(long)]
    eps: Option<String>,
    /// Output format (csv requires --eps).
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KappaArgs {
    /// psi family.
    #[arg(long)]
    family: String,
    /// Comma-separated sample counts n.
    #[arg(long)]
    n: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Subcommand)]
enum McCmd {
    /// Certified sample size for a requested accuracy/reliability pair.
    Certify(McCertifyArgs),
    /// Run the certified estimator on the built-in demo integral.
    Run(McRunArgs),
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct McCertifyArgs {
    /// Certification route: psi, orlicz, ct or lp.
    #[arg(long)]
    route: String,
    /// Accuracy epsilon.
    #[arg(long)]
    eps: f64,
    /// Failure probability delta (reliability 1 - delta).
    #[arg(long)]
    delta: f64,
    /// psi family (routes psi, ct, lp).
    #[arg(long)]
    family: Option<String>,
    /// psi-norm of the centered integrand (route psi).
    #[arg(long)]
    norm: Option<f64>,
    /// Orlicz norm L of the centered integrand (route orlicz).
    #[arg(long)]
    l: Option<f64>,
    /// Orlicz U family: power:<p> or expalpha:<alpha> (route orlicz).
    #[arg(long)]
    u: Option<String>,
    /// Supremum-norm bound B-hat of the process (route ct).
    #[arg(long)]
    b_hat: Option<f64>,
    /// (integral of the pointwise norm^p)^(1/p) (route lp).
    #[arg(long)]
    norm_integral: Option<f64>,
    /// L_p exponent (route lp).
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct McRunArgs {
    /// Accuracy epsilon.
    #[arg(long)]
    eps: f64,
    /// Failure probability delta.
    #[arg(long)]
    delta: f64,
    /// Demo-integral scale a > 0.
    #[arg(long, default_value_t = 1.0)]
    int_a: f64,
    /// Demo-integral drift b.
    #[arg(long, default_value_t = 0.5)]
    int_b: f64,
    /// Override the certified sample size.
    #[arg(long)]
    n: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Base seed.
    #[arg(long, env = "CERTISTOCH_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Smallest truncation level meeting an accuracy/reliability target.
    SelectN(ModelSelectArgs),
    /// Simulate truncated-series trajectories to CSV.
    Simulate(ModelSimulateArgs),
    /// Remainder constants of the model.
    Constants(ModelConstantsArgs),
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSelectArgs {
    /// Spectral cutoff A.
    #[arg(long)]
    cutoff: f64,
    /// Left endpoint of the parameter interval.
    #[arg(long, default_value_t = 0.0)]
    t_a: f64,
    /// Right endpoint of the parameter interval.
    #[arg(long, default_value_t = 1.0)]
    t_b: f64,
    /// Spectral-window exponent beta in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Accuracy epsilon.
    #[arg(long)]
    eps: f64,
    /// Failure probability delta.
    #[arg(long)]
    delta: f64,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSimulateArgs {
    /// Spectral cutoff A.
    #[arg(long)]
    cutoff: f64,
    /// Left endpoint of the parameter interval.
    #[arg(long, default_value_t = 0.0)]
    t_a: f64,
    /// Right endpoint of the parameter interval.
    #[arg(long, default_value_t = 1.0)]
    t_b: f64,
    /// Spectral-window exponent beta in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Truncation level N >= 1.
    #[arg(long)]
    n: u64,
    /// Number of trajectories.
    #[arg(long, default_value_t = 10)]
    paths: u64,
    /// Evaluation grid size over [t_a, t_b].
    #[arg(long, default_value_t = 101)]
    grid_points: usize,
    /// Override the left end of the evaluation grid (must stay in [t_a, t_b]).
    #[arg(long)]
    grid_a: Option<f64>,
    /// Override the right end of the evaluation grid (must stay in [t_a, t_b]).
    #[arg(long)]
    grid_b: Option<f64>,
    /// Draw all coefficients as 0 instead of standard Gaussians.
    #[arg(long, default_value_t = false)]
    zero_sampler: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Base seed; path j draws from stream (seed, j).
    #[arg(long, env = "CERTISTOCH_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelConstantsArgs {
    /// Spectral cutoff A.
    #[arg(long)]
    cutoff: f64,
    /// Left endpoint of the parameter interval.
    #[arg(long, default_value_t = 0.0)]
    t_a: f64,
    /// Right endpoint of the parameter interval.
    #[arg(long, default_value_t = 1.0)]
    t_b: f64,
    /// Spectral-window exponent beta in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

#[derive(Subcommand)]
enum DvwCmd {
    /// Prenorm of a registered tail family in the (V,W) space.
    Prenorm(DvwPrenormArgs),
    /// Model-reliability condition for a truncated expansion.
    Check(DvwCheckArgs),
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DvwPrenormArgs {
    /// Power exponent a of W(x) = |x|^a.
    #[arg(long)]
    a: f64,
    /// Power exponent b of V(x) = |x|^b.
    #[arg(long)]
    b: f64,
    /// Tail family: pareto:<c>,<scale>, cauchy:<gamma>,<scale>,
    /// gaussian:<sigma>,<scale>.
    #[arg(long)]
    family: String,
    /// Evaluation method: closed or grid.
    #[arg(long, default_value = "closed")]
    method: String,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DvwCheckArgs {
    /// Power exponent a of W.
    #[arg(long)]
    a: f64,
    /// Power exponent b of V.
    #[arg(long)]
    b: f64,
    /// JSON file holding the remainder model (prenorms, holder_consts,
    /// zeta, t_len, delta_n, inf_prenorm).
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    /// Requested accuracy.
    #[arg(long)]
    ae: f64,
    /// Requested failure probability nu in (0, 1).
    #[arg(long)]
    nu: f64,
    /// Splitting parameter: `optimize` or `fixed:<theta>`.
    #[arg(long, default_value = "optimize")]
    theta: String,
}

#[derive(Subcommand)]
enum SubgaussCmd {
    /// Twin L_p admissibility inequalities for a model-error budget.
    LpCheck(LpCheckArgs),
    /// Uniform tail bound for a sub-phi process on [0, T].
    CtBound(CtBoundArgs),
    /// Whole-process factor and coefficient norms of an expansion basis.
    Basis(BasisArgs),
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LpCheckArgs {
    /// Error-budget integral c_N (or an upper bound on it).
    #[arg(long)]
    c_n: f64,
    /// L_p exponent p >= 1.
    #[arg(long)]
    p: f64,
    /// phi power gamma > 1 (quadratically spliced when gamma > 2).
    #[arg(long)]
    gamma: f64,
    /// Accuracy delta.
    #[arg(long)]
    delta: f64,
    /// Failure probability (reliability 1 - alpha_rel).
    #[arg(long)]
    alpha_rel: f64,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CtBoundArgs {
    /// Modulus constant C of sigma(h) = C h^ae.
    #[arg(long)]
    c: f64,
    /// Modulus exponent ae in (0, 1].
    #[arg(long)]
    ae: f64,
    /// phi power zeta >= 2.
    #[arg(long)]
    zeta: f64,
    /// Uniform tau bound gamma_N of the process (for remainders, of X - X_N).
    #[arg(long)]
    gamma_n: f64,
    /// Interval length T.
    #[arg(long)]
    t_len: f64,
    /// Comma-separated levels x to bound at.
    #[arg(long)]
    x: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisArgs {
    /// Basis: hermite-geometric, chebyshev-t, chebyshev-u, legendre,
    /// laguerre:<alpha>, gegenbauer:<alpha>.
    #[arg(long)]
    basis: String,
    /// Coefficient-scale tau.
    #[arg(long)]
    tau: f64,
    /// Geometric decay rate w in (0, 1).
    #[arg(long)]
    w: f64,
    /// Optional comma-separated indices k for per-coefficient norms.
    #[arg(long)]
    k: Option<String>,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValidateArgs {
    /// Experiment id: tail-gauss, mc-coverage or sup-bound.
    id: String,
    /// Accuracy level(s); comma-separated for tail-gauss.
    #[arg(long)]
    eps: Option<String>,
    /// Failure probability (mc-coverage, sup-bound).
    #[arg(long)]
    delta: Option<f64>,
    /// Draws per level (tail-gauss).
    #[arg(long)]
    samples: Option<u64>,
    /// Independent certified runs (mc-coverage).
    #[arg(long)]
    trials: Option<u64>,
    /// Simulated remainder paths (sup-bound).
    #[arg(long)]
    paths: Option<u64>,
    /// Supremum discretization grid (sup-bound).
    #[arg(long)]
    grid_points: Option<usize>,
    /// Simulated remainder coefficients past N (sup-bound).
    #[arg(long)]
    extra_terms: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Base seed.
    #[arg(long, env = "CERTISTOCH_SEED", default_value_t = 0)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match execute(cli) {
        Ok(text) => {
            if let Err(err) = emit(&output, &text) {
                eprintln!("error: {err}");
                std::process::exit(exit::code_for(&err));
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit::code_for(&err));
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<String> {
    let config = match &cli.config {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
            Some(serde_json::from_str::<Value>(&raw).map_err(|e| {
                Error::domain(format!("config {} is not valid JSON: {e}", path.display()))
            })?)
        }
        None => None,
    };
    let cfg = config.as_ref();
    match cli.command {
        Cmd::Bound(BoundCmd::Tail(a)) => cmd_bound_tail(merged(a, cfg)?),
        Cmd::Bound(BoundCmd::Sup(a)) => cmd_bound_sup(merged(a, cfg)?),
        Cmd::Kappa(a) => cmd_kappa(merged(a, cfg)?),
        Cmd::Mc(McCmd::Certify(a)) => cmd_mc_certify(merged(a, cfg)?),
        Cmd::Mc(McCmd::Run(a)) => cmd_mc_run(merged(a, cfg)?),
        Cmd::Model(ModelCmd::SelectN(a)) => cmd_model_select(merged(a, cfg)?),
        Cmd::Model(ModelCmd::Simulate(a)) => cmd_model_simulate(merged(a, cfg)?),
        Cmd::Model(ModelCmd::Constants(a)) => cmd_model_constants(merged(a, cfg)?),
        Cmd::Dvw(DvwCmd::Prenorm(a)) => cmd_dvw_prenorm(merged(a, cfg)?),
        Cmd::Dvw(DvwCmd::Check(a)) => cmd_dvw_check(merged(a, cfg)?),
        Cmd::Subgauss(SubgaussCmd::LpCheck(a)) => cmd_lp_check(merged(a, cfg)?),
        Cmd::Subgauss(SubgaussCmd::CtBound(a)) => cmd_ct_bound(merged(a, cfg)?),
        Cmd::Subgauss(SubgaussCmd::Basis(a)) => cmd_basis(merged(a, cfg)?),
        Cmd::Validate(a) => cmd_validate(merged(a, cfg)?),
    }
}

/// Overrides the parsed flags of one subcommand with the fields of the
/// config document.  Unknown config keys are schema errors.
fn merged<T: Serialize + DeserializeOwned>(args: T, config: Option<&Value>) -> Result<T> {
    let Some(cfg) = config else { return Ok(args) };
    let mut base = serde_json::to_value(&args)
        .map_err(|e| Error::domain(format!("cannot serialize arguments: {e}")))?;
    overlay(&mut base, cfg);
    serde_json::from_value(base)
        .map_err(|e| Error::domain(format!("config does not match the command schema: {e}")))
}

fn overlay(base: &mut Value, over: &Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(k) {
                    Some(slot) => overlay(slot, v),
                    None => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (b, v) => *b = v.clone(),
    }
}

fn to_json(value: &impl Serialize) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::domain(format!("cannot serialize report: {e}")))
}

fn csv_table(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::domain(format!("cannot write csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::domain(format!("cannot write csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::domain(format!("csv is not utf-8: {e}")))
}

/// Renders a two-column table of floats as CSV or a JSON row array.
fn two_column(format: OutFormat, names: (&str, &str), rows: &[(f64, f64)]) -> Result<String> {
    match format {
        OutFormat::Csv => {
            let header = vec![names.0.to_string(), names.1.to_string()];
            let body: Vec<Vec<String>> =
                rows.iter().map(|&(a, b)| vec![sig17(a), sig17(b)]).collect();
            csv_table(&header, &body)
        }
        OutFormat::Json => {
            let body: Vec<Value> =
                rows.iter().map(|&(a, b)| json!({ names.0: a, names.1: b })).collect();
            to_json(&body)
        }
    }
}

fn cmd_bound_tail(a: BoundTailArgs) -> Result<String> {
    let v = PsiVariable::new(parse::psi_family(&a.family)?, a.norm)?;
    let mut rows = Vec::new();
    for e in parse::float_list(&a.eps)? {
        rows.push((e, tail_bound(&v, e)?));
    }
    two_column(a.format, ("eps", "bound"), &rows)
}

fn cmd_bound_sup(a: BoundSupArgs) -> Result<String> {
    let domain = parse::float_list(&a.domain)?;
    if domain.len() != 2 {
        return Err(Error::domain("--domain expects two values `c,d`"));
    }
    let family = parse::psi_family(&a.family)?;
    let spec = ProcessSpec {
        family: family.clone(),
        inf_norm: a.inf_norm,
        holder_c: a.holder_c,
        holder_delta: a.holder_delta,
        domain: (domain[0], domain[1]),
    };
    let bound = sup_norm_bound(&spec, parse::p_choice(&a.p)?, a.tau)?;
    let mut tails = Vec::new();
    if let Some(list) = &a.eps {
        for e in parse::float_list(list)? {
            tails.push((e, sup_tail_bound(&bound, &family, e)?));
        }
    }
    match a.format {
        OutFormat::Csv if !tails.is_empty() => two_column(OutFormat::Csv, ("eps", "bound"), &tails),
        OutFormat::Csv => Err(Error::domain("csv output for `bound sup` requires --eps")),
        OutFormat::Json => {
            let tail_rows: Vec<Value> =
                tails.iter().map(|&(e, b)| json!({ "eps": e, "bound": b })).collect();
            to_json(&json!({ "sup_bound": bound, "tails": tail_rows }))
        }
    }
}

fn cmd_kappa(a: KappaArgs) -> Result<String> {
    let family = parse::psi_family(&a.family)?;
    let mut rows = Vec::new();
    for n in parse::int_list(&a.n)? {
        rows.push((n as f64, kappa(&family, n)?));
    }
    two_column(a.format, ("n", "kappa"), &rows)
}

fn require<T>(opt: Option<T>, route: &str, flag: &str) -> Result<T> {
    opt.ok_or_else(|| Error::domain(format!("route `{route}` requires --{flag}")))
}

fn cmd_mc_certify(a: McCertifyArgs) -> Result<String> {
    let n = match a.route.as_str() {
        "psi" => {
            let family = parse::psi_family(&require(a.family.as_deref(), "psi", "family")?)?;
            let v = PsiVariable::new(family, require(a.norm, "psi", "norm")?)?;
            sample_size_psi(&v, a.eps, a.delta)?
        }
        "orlicz" => {
            let u = parse::orlicz_u(&require(a.u.as_deref(), "orlicz", "u")?)?;
            sample_size_orlicz(require(a.l, "orlicz", "l")?, a.eps, a.delta, &u)?
        }
        "ct" => {
            let family = parse::psi_family(&require(a.family.as_deref(), "ct", "family")?)?;
            sample_size_ct(require(a.b_hat, "ct", "b-hat")?, &family, a.eps, a.delta)?
        }
        "lp" => {
            let family = parse::psi_family(&require(a.family.as_deref(), "lp", "family")?)?;
            sample_size_lp(
                require(a.norm_integral, "lp", "norm-integral")?,
                require(a.p, "lp", "p")?,
                &family,
                a.eps,
                a.delta,
            )?
        }
        other => {
            return Err(Error::domain(format!(
                "unknown route `{other}` (expected psi, orlicz, ct or lp)"
            )))
        }
    };
    to_json(&json!({ "route": a.route, "n": n, "eps": a.eps, "delta": a.delta }))
}

fn cmd_mc_run(a: McRunArgs) -> Result<String> {
    if !(a.int_a > 0.0) {
        return Err(Error::domain("demo integral requires --int-a > 0"));
    }
    let n = match a.n {
        Some(n) => n,
        None => validate::demo_certified_n(a.int_a, a.int_b, a.eps, a.delta)?,
    };
    let sampler = validate::demo_sampler(a.int_a, a.int_b);
    let estimate = run_certified(a.seed, n, a.workers, &sampler)?;
    to_json(&json!({
        "n": n,
        "estimate": estimate,
        "eps": a.eps,
        "delta": a.delta,
        "route": "psi:power:0.5",
        "seed": a.seed,
    }))
}

fn case_study(cutoff: f64, t_a: f64, t_b: f64, beta: f64) -> CaseStudyParams {
    CaseStudyParams::gaussian(cutoff, t_a, t_b, beta)
}

fn cmd_model_select(a: ModelSelectArgs) -> Result<String> {
    let params = case_study(a.cutoff, a.t_a, a.t_b, a.beta);
    let cert = select_truncation(&params, a.eps, a.delta)?;
    to_json(&json!({
        "N": cert.n,
        "threshold": cert.threshold,
        "B_hat_at_N": cert.b_hat_at_n,
        "B_hat_at_N_minus_1": cert.b_hat_at_n_minus_1,
    }))
}

fn cmd_model_simulate(a: ModelSimulateArgs) -> Result<String> {
    if a.grid_points < 2 {
        return Err(Error::domain("--grid-points must be >= 2"));
    }
    if a.paths < 1 {
        return Err(Error::domain("--paths must be >= 1"));
    }
    let model = SeriesModel {
        params: case_study(a.cutoff, a.t_a, a.t_b, a.beta),
        n: a.n,
        seed: a.seed,
        xi_sampler: if a.zero_sampler { XiSampler::Zero } else { XiSampler::Gaussian },
    };
    let grid = linspace(
        a.grid_a.unwrap_or(a.t_a),
        a.grid_b.unwrap_or(a.t_b),
        a.grid_points,
    );
    let paths = simulate_paths(&model, &grid, a.paths, a.workers)?;
    let mut header = vec!["t".to_string()];
    header.extend((0..a.paths).map(|j| format!("path_{j}")));
    let rows: Vec<Vec<String>> = grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut row = vec![sig17(t)];
            row.extend(paths.iter().map(|p| sig17(p[i])));
            row
        })
        .collect();
    csv_table(&header, &rows)
}

fn cmd_model_constants(a: ModelConstantsArgs) -> Result<String> {
    let params = case_study(a.cutoff, a.t_a, a.t_b, a.beta);
    let constants = remainder_constants(&params)?;
    to_json(&json!({ "params": params, "constants": constants }))
}

fn cmd_dvw_prenorm(a: DvwPrenormArgs) -> Result<String> {
    let space = DvwSpace::new(a.a, a.b)?;
    let family = parse::tail_family(&a.family)?;
    let prenorm = match a.method.as_str() {
        "closed" => family.closed_prenorm(&space)?,
        "grid" => dvw_prenorm(&space, &|x| family.tail(x))?,
        other => {
            return Err(Error::domain(format!(
                "unknown method `{other}` (expected closed or grid)"
            )))
        }
    };
    to_json(&json!({
        "a": a.a,
        "b": a.b,
        "family": a.family,
        "method": a.method,
        "prenorm": prenorm,
    }))
}

fn cmd_dvw_check(a: DvwCheckArgs) -> Result<String> {
    let raw = std::fs::read_to_string(&a.model)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", a.model.display())))?;
    let model: DvwModel = serde_json::from_str(&raw)
        .map_err(|e| Error::domain(format!("model {} is not valid: {e}", a.model.display())))?;
    let space = DvwSpace::new(a.a, a.b)?;
    let check = dvw_model_check(&space, &model, a.ae, a.nu, parse::theta_choice(&a.theta)?)?;
    to_json(&json!({
        "a": a.a,
        "b": a.b,
        "ae": a.ae,
        "nu": a.nu,
        "pass": check.pass,
        "lhs": check.lhs,
        "theta_used": check.theta_used,
    }))
}

fn cmd_lp_check(a: LpCheckArgs) -> Result<String> {
    let phi = if a.gamma <= 2.0 {
        PhiFunction::PurePower { gamma: a.gamma }
    } else {
        PhiFunction::Spliced { gamma: a.gamma }
    };
    let budget = TauBudget { c_n: a.c_n, p: a.p };
    let crit = lp_criteria(&budget, &phi, a.delta, a.alpha_rel)?;
    to_json(&json!({
        "c_n": a.c_n,
        "p": a.p,
        "gamma": a.gamma,
        "delta": a.delta,
        "alpha_rel": a.alpha_rel,
        "pass": crit.pass,
        "reliability_limit": crit.reliability_limit,
        "shape_limit": crit.shape_limit,
    }))
}

fn cmd_ct_bound(a: CtBoundArgs) -> Result<String> {
    let threshold = ct_validity_threshold(a.c, a.ae, a.zeta, a.gamma_n, a.t_len)?;
    let mut rows = Vec::new();
    for x in parse::float_list(&a.x)? {
        rows.push((x, ct_tail_bound(a.c, a.ae, a.zeta, a.gamma_n, a.t_len, x)?));
    }
    match a.format {
        OutFormat::Csv => two_column(OutFormat::Csv, ("x", "bound"), &rows),
        OutFormat::Json => {
            let body: Vec<Value> =
                rows.iter().map(|&(x, b)| json!({ "x": x, "bound": b })).collect();
            to_json(&json!({ "threshold": threshold, "rows": body }))
        }
    }
}

fn cmd_basis(a: BasisArgs) -> Result<String> {
    let basis = parse::basis(&a.basis)?;
    let factor = whole_process_factor(&basis, a.tau, a.w)?;
    let mut coefficient_norms = Vec::new();
    if let Some(list) = &a.k {
        for k in parse::int_list(list)? {
            coefficient_norms.push(json!({
                "k": k,
                "tau_hat": tau_hat(&basis, a.tau, a.w, k as usize)?,
            }));
        }
    }
    to_json(&json!({
        "basis": a.basis,
        "tau": a.tau,
        "w": a.w,
        "whole_process_factor": factor,
        "coefficient_norms": coefficient_norms,
    }))
}

fn cmd_validate(a: ValidateArgs) -> Result<String> {
    match a.id.as_str() {
        "tail-gauss" => {
            let eps = match &a.eps {
                Some(list) => parse::float_list(list)?,
                None => vec![3.0, 4.0, 5.0],
            };
            let samples = a.samples.unwrap_or(10_000_000);
            to_json(&validate::tail_gauss(&eps, samples, a.seed, a.workers)?)
        }
        "mc-coverage" => {
            let eps = match &a.eps {
                Some(list) => parse::float_list(list)?[0],
                None => 0.1,
            };
            let delta = a.delta.unwrap_or(0.05);
            let trials = a.trials.unwrap_or(500);
            to_json(&validate::mc_coverage(eps, delta, trials, a.seed, a.workers)?)
        }
        "sup-bound" => {
            let eps = match &a.eps {
                Some(list) => parse::float_list(list)?[0],
                None => 1.0,
            };
            let delta = a.delta.unwrap_or(0.1);
            let paths = a.paths.unwrap_or(200);
            let grid_points = a.grid_points.unwrap_or(1000);
            let extra_terms = a.extra_terms.unwrap_or(5000);
            to_json(&validate::sup_bound(
                eps,
                delta,
                paths,
                grid_points,
                extra_terms,
                a.seed,
                a.workers,
            )?)
        }
        other => Err(Error::domain(format!(
            "unknown experiment `{other}` (expected tail-gauss, mc-coverage or sup-bound)"
        ))),
    }
}
