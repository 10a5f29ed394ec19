//! `modi-lfr`: fitting, model comparison, simulation and curve data for the Modi linear
//! failure rate distribution.
//!
//! Exit codes: 0 on success, 1 on usage, validation or I/O errors, 2 when `fit` returns a
//! non-converged result (the result is still written).

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modi_lfr::study::curves::{curve_grid, ecdf, pp_points, ttt_curve, EcdfPoint, PpPoint, TttPoint};
use modi_lfr::study::simulation::{run_simulation, simulation_fit_config, SimCell, SimScenario, DEFAULT_SIZES};
use modi_lfr::study::{compare_models, datasets, descriptive_stats, Comparison, Dataset, DescriptiveStats};
use modi_lfr::{fit_mle, FitConfig, FitResult, Model, ModelId};
use serde::Serialize;

use output::{sig6, table, RunManifest, Sink};

const DEFAULT_SEED: u64 = 20_250_101;

#[derive(Parser, Debug)]
#[command(name = "modi-lfr", version, about = "Modi linear failure rate distribution toolkit")]
struct Cli {
    /// Replay the command recorded in a manifest file, or in any JSON output embedding one
    #[arg(long, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit one model by maximum likelihood and report Wald intervals
    Fit(FitArgs),
    /// Fit several models and rank them by AIC, BIC and K-S p-value
    Compare(CompareArgs),
    /// Monte Carlo bias and MSE of the MLFR estimators.
    ///
    /// CSV columns: scenario, n, replicates, failures, parameter, truth, bias, mse.
    /// Parameters are theta, a, b, alpha and beta, with beta reported at its true value.
    Simulate(SimulateArgs),
    /// Draw a seeded random sample from a model.
    ///
    /// CSV column: x.
    Sample(SampleArgs),
    /// Tabulate pdf, cdf, survival and hazard on an even grid.
    ///
    /// CSV columns: x, pdf, cdf, survival, hazard.
    Curves(CurvesArgs),
    /// Descriptive statistics with the scaled TTT curve, ECDF and optional PP points.
    ///
    /// CSV columns: fraction, value (the TTT curve).
    Ttt(TttArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Embedded dataset: bladder or guinea
    #[arg(long, value_name = "NAME")]
    data: Option<String>,
    /// File with one positive value per line; '#' comments and blank lines are skipped
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<Dataset, String> {
        let ds = match (&self.data, &self.file) {
            (Some(name), _) => datasets::by_name(name),
            (None, Some(path)) => datasets::from_file(path),
            (None, None) => unreachable!("clap requires one source"),
        };
        ds.map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this path instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Output {
    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, String> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(format!("format {f:?} is not supported by this command").to_lowercase())
        }
    }

    fn sink(&self) -> Result<Sink, String> {
        Sink::open(self.out.as_deref())
    }
}

#[derive(Args, Debug)]
struct FitArgs {
    #[arg(long, value_parser = parse_model)]
    model: ModelId,
    #[command(flatten)]
    source: Source,
    /// Wald intervals have level 1 - zeta
    #[arg(long, default_value_t = 0.05)]
    zeta: f64,
    /// Random starts on top of the deterministic grid
    #[arg(long, default_value_t = 4)]
    starts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Reference beta for reporting the (alpha, beta) split of theta
    #[arg(long)]
    beta_ref: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    source: Source,
    /// Comma-separated subset of mlfr, mr, mw, me, mf
    #[arg(long, value_delimiter = ',', value_parser = parse_model)]
    models: Vec<ModelId>,
    #[arg(long, default_value_t = 4)]
    starts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Preset scenario 1, 2 or 3
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=3))]
    scenario: u64,
    /// Comma-separated, strictly increasing sample sizes
    #[arg(long = "n", value_delimiter = ',', value_name = "LIST")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_parser = parse_model)]
    model: ModelId,
    /// Comma-separated natural parameters, e.g. alpha,beta,a,b for MLFR
    #[arg(long, value_delimiter = ',', required = true)]
    params: Vec<f64>,
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CurvesArgs {
    #[arg(long, value_parser = parse_model)]
    model: ModelId,
    #[arg(long, value_delimiter = ',', required = true)]
    params: Vec<f64>,
    /// Grid range as LO:HI
    #[arg(long, value_parser = parse_range)]
    range: (f64, f64),
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TttArgs {
    #[command(flatten)]
    source: Source,
    /// Model for PP points, together with --params
    #[arg(long, value_parser = parse_model, requires = "params")]
    model: Option<ModelId>,
    #[arg(long, value_delimiter = ',', requires = "model")]
    params: Vec<f64>,
    #[command(flatten)]
    output: Output,
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse().map_err(|e: modi_lfr::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("'{t}' is not a number"));
    Ok((num(lo)?, num(hi)?))
}

#[derive(Serialize)]
struct DataInfo {
    name: String,
    source: String,
    n: usize,
}

impl From<&Dataset> for DataInfo {
    fn from(d: &Dataset) -> Self {
        Self { name: d.name.clone(), source: d.source.clone(), n: d.len() }
    }
}

#[derive(Serialize)]
struct FitOutput<'a> {
    data: DataInfo,
    fit: &'a FitResult,
}

fn cmd_fit(a: &FitArgs, args: &[String]) -> Result<u8, String> {
    if !(a.zeta > 0.0 && a.zeta < 1.0) {
        return Err(format!("--zeta must lie in (0, 1), got {}", a.zeta));
    }
    let format = a.output.format(Format::Table, &[Format::Json, Format::Table])?;
    let ds = a.source.load()?;
    let data = ds.sample().map_err(|e| e.to_string())?;
    let cfg = FitConfig { n_starts: a.starts, seed: a.seed, zeta: a.zeta, beta_reference: a.beta_ref, ..FitConfig::default() };
    let fit = fit_mle(a.model, &data, &cfg).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new("fit", args, vec![a.seed]);
    let sink = a.output.sink()?;
    match format {
        Format::Json => sink.write_json(&manifest, &FitOutput { data: (&ds).into(), fit: &fit })?,
        _ => sink.write_text(&fit_table(&ds, &fit))?,
    }
    Ok(if fit.converged { 0 } else { 2 })
}

fn fit_table(ds: &Dataset, fit: &FitResult) -> String {
    let mut out = format!("{} fit to {} (n = {})\n\n", fit.model, ds.name, fit.n);
    let level = format!("{}%", sig6(100.0 * (1.0 - fit.zeta)).trim_end_matches('0').trim_end_matches('.'));
    let rows: Vec<Vec<String>> = fit
        .names
        .iter()
        .zip(&fit.estimates)
        .map(|(name, &est)| {
            let iv = fit.wald_intervals.iter().find(|w| &w.name == name);
            let cell = |f: fn(&modi_lfr::estimation::WaldInterval) -> f64| iv.map_or("-".to_string(), |w| sig6(f(w)));
            vec![name.clone(), sig6(est), cell(|w| w.std_error), cell(|w| w.lower), cell(|w| w.upper)]
        })
        .collect();
    let lower = format!("{level} lower");
    let upper = format!("{level} upper");
    out.push_str(&table(&["parameter", "estimate", "std error", &lower, &upper], &rows));
    out.push('\n');
    out.push_str(&format!("alpha (beta = {}) {}\n", sig6(fit.beta_hat), sig6(fit.alpha_hat)));
    out.push_str(&format!("-2logL          {}\n", sig6(fit.neg2_loglik)));
    out.push_str(&format!("converged       {}\n", fit.converged));
    if fit.theta_unbounded {
        out.push_str("theta_unbounded true (likelihood keeps rising as theta grows)\n");
    }
    if let Some(note) = &fit.covariance_note {
        out.push_str(&format!("covariance      {note}\n"));
    }
    out
}

#[derive(Serialize)]
struct CompareOutput<'a> {
    data: DataInfo,
    comparison: &'a Comparison,
}

fn cmd_compare(a: &CompareArgs, args: &[String]) -> Result<u8, String> {
    let format = a.output.format(Format::Table, &[Format::Json, Format::Table])?;
    let ds = a.source.load()?;
    let data = ds.sample().map_err(|e| e.to_string())?;
    let models = if a.models.is_empty() { ModelId::ALL.to_vec() } else { dedup(&a.models) };
    let cfg = FitConfig { n_starts: a.starts, seed: a.seed, ..FitConfig::default() };
    let c = compare_models(&data, &models, &cfg);
    let manifest = RunManifest::new("compare", args, vec![a.seed]);
    let sink = a.output.sink()?;
    match format {
        Format::Json => sink.write_json(&manifest, &CompareOutput { data: (&ds).into(), comparison: &c })?,
        _ => sink.write_text(&compare_table(&ds, &c))?,
    }
    if c.reports.is_empty() {
        return Err("no model could be fitted".into());
    }
    Ok(0)
}

fn dedup(models: &[ModelId]) -> Vec<ModelId> {
    let mut out = Vec::new();
    for &m in models {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

fn compare_table(ds: &Dataset, c: &Comparison) -> String {
    let mut out = format!("Model comparison on {} (n = {})\n\n", ds.name, ds.len());
    let fits: Vec<Vec<String>> = c
        .reports
        .iter()
        .map(|r| {
            let est: Vec<String> =
                r.fit.names.iter().zip(&r.fit.estimates).map(|(n, v)| format!("{n}={}", sig6(*v))).collect();
            let ic = &r.criteria;
            vec![
                r.fit.model.to_string(),
                est.join(" "),
                sig6(ic.neg2_loglik),
                sig6(ic.aic),
                sig6(ic.bic),
                sig6(ic.caic),
                sig6(ic.hqic),
                if r.fit.converged { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    out.push_str(&table(&["model", "estimates", "-2logL", "AIC", "BIC", "CAIC", "HQIC", "converged"], &fits));
    out.push('\n');
    let gof: Vec<Vec<String>> = c
        .reports
        .iter()
        .map(|r| {
            let g = &r.gof;
            vec![
                r.fit.model.to_string(),
                sig6(g.ks_stat),
                sig6(g.ks_p),
                sig6(g.cvm_stat),
                sig6(g.cvm_p),
                sig6(g.ad_stat),
                sig6(g.ad_p),
            ]
        })
        .collect();
    out.push_str(&table(&["model", "K-S", "p", "CvM", "p", "AD", "p"], &gof));
    out.push('\n');
    let ranking: Vec<Vec<String>> = c
        .ranking
        .iter()
        .map(|r| vec![r.rank.to_string(), r.model.to_string(), sig6(r.aic), sig6(r.bic), sig6(r.ks_p)])
        .collect();
    out.push_str(&table(&["rank", "model", "AIC", "BIC", "K-S p"], &ranking));
    for f in &c.failures {
        out.push_str(&format!("\n{} failed: {}", f.model, f.error));
    }
    if !c.failures.is_empty() {
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct SimRow {
    scenario: u64,
    n: usize,
    replicates: usize,
    failures: usize,
    parameter: String,
    truth: f64,
    bias: f64,
    mse: f64,
}

fn sim_rows(cells: &[SimCell]) -> Vec<SimRow> {
    cells
        .iter()
        .flat_map(|c| {
            c.params.iter().map(move |p| SimRow {
                scenario: c.scenario,
                n: c.n,
                replicates: c.replicates,
                failures: c.failures,
                parameter: p.name.clone(),
                truth: p.truth,
                bias: p.bias,
                mse: p.mse,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct SimOutput<'a> {
    scenario: &'a SimScenario,
    cells: &'a [SimCell],
}

fn cmd_simulate(a: &SimulateArgs, args: &[String]) -> Result<u8, String> {
    let format = a.output.format(Format::Csv, &[Format::Csv, Format::Json, Format::Table])?;
    let preset = SimScenario::preset(a.scenario, a.seed).map_err(|e| e.to_string())?;
    let sizes = if a.sizes.is_empty() { DEFAULT_SIZES.to_vec() } else { a.sizes.clone() };
    let s = SimScenario::new(a.scenario, preset.true_params, sizes, a.reps as usize, a.seed).map_err(|e| e.to_string())?;
    let cells = run_simulation(&s, &simulation_fit_config(&s, a.seed)).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new("simulate", args, vec![a.seed]);
    let sink = a.output.sink()?;
    match format {
        Format::Json => sink.write_json(&manifest, &SimOutput { scenario: &s, cells: &cells })?,
        Format::Csv => sink.write_csv(&manifest, &sim_rows(&cells))?,
        Format::Table => {
            let rows: Vec<Vec<String>> = sim_rows(&cells)
                .into_iter()
                .map(|r| {
                    vec![r.n.to_string(), r.parameter, sig6(r.truth), sig6(r.bias), sig6(r.mse), r.failures.to_string()]
                })
                .collect();
            let head = format!("Scenario {} ({} replicates per size)\n\n", s.id, s.replicates);
            sink.write_text(&(head + &table(&["n", "parameter", "truth", "bias", "mse", "failures"], &rows)))?
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SampleRow {
    x: f64,
}

#[derive(Serialize)]
struct SampleOutput<'a> {
    model: ModelId,
    params: &'a [f64],
    seed: u64,
    values: &'a [f64],
}

fn cmd_sample(a: &SampleArgs, args: &[String]) -> Result<u8, String> {
    let format = a.output.format(Format::Csv, &[Format::Csv, Format::Json])?;
    let m = Model::from_values(a.model, &a.params).map_err(|e| e.to_string())?;
    let xs = m.sample(a.n as usize, a.seed).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new("sample", args, vec![a.seed]);
    let sink = a.output.sink()?;
    match format {
        Format::Json => {
            sink.write_json(&manifest, &SampleOutput { model: a.model, params: &a.params, seed: a.seed, values: &xs })?
        }
        _ => sink.write_csv(&manifest, &xs.iter().map(|&x| SampleRow { x }).collect::<Vec<_>>())?,
    }
    Ok(0)
}

fn cmd_curves(a: &CurvesArgs, args: &[String]) -> Result<u8, String> {
    let format = a.output.format(Format::Csv, &[Format::Csv, Format::Json, Format::Table])?;
    let m = Model::from_values(a.model, &a.params).map_err(|e| e.to_string())?;
    let rows = curve_grid(&m, a.range.0, a.range.1, a.points).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new("curves", args, Vec::new());
    let sink = a.output.sink()?;
    match format {
        Format::Json => sink.write_json(&manifest, &rows)?,
        Format::Csv => sink.write_csv(&manifest, &rows)?,
        Format::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![sig6(r.x), sig6(r.pdf), sig6(r.cdf), sig6(r.survival), sig6(r.hazard)])
                .collect();
            sink.write_text(&table(&["x", "pdf", "cdf", "survival", "hazard"], &cells))?
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct TttOutput {
    data: DataInfo,
    stats: DescriptiveStats,
    ttt: Vec<TttPoint>,
    ecdf: Vec<EcdfPoint>,
    pp: Option<Vec<PpPoint>>,
}

fn cmd_ttt(a: &TttArgs, args: &[String]) -> Result<u8, String> {
    let format = a.output.format(Format::Table, &[Format::Json, Format::Table, Format::Csv])?;
    let ds = a.source.load()?;
    let stats = descriptive_stats(&ds.values).map_err(|e| e.to_string())?;
    let ttt = ttt_curve(&ds.values).map_err(|e| e.to_string())?;
    let pp = match a.model {
        Some(model) => Some(pp_points(&ds.values, &Model::from_values(model, &a.params).map_err(|e| e.to_string())?)),
        None => None,
    };
    let manifest = RunManifest::new("ttt", args, Vec::new());
    let sink = a.output.sink()?;
    match format {
        Format::Json => {
            let out = TttOutput { data: (&ds).into(), stats, ecdf: ecdf(&ds.values), ttt, pp };
            sink.write_json(&manifest, &out)?
        }
        Format::Csv => sink.write_csv(&manifest, &ttt)?,
        Format::Table => sink.write_text(&ttt_table(&ds, &stats, &ttt))?,
    }
    Ok(0)
}

fn ttt_table(ds: &Dataset, s: &DescriptiveStats, ttt: &[TttPoint]) -> String {
    let mut out = format!("{} (n = {})\n\n", ds.name, s.n);
    let row = vec![
        sig6(s.min),
        sig6(s.q1),
        sig6(s.median),
        sig6(s.mean),
        sig6(s.q3),
        sig6(s.max),
        sig6(s.std_dev),
        sig6(s.skewness),
        sig6(s.kurtosis),
    ];
    out.push_str(&table(&["min", "Q1", "median", "mean", "Q3", "max", "sd", "skewness", "kurtosis"], &[row]));
    out.push_str(&format!("quartiles: {}; kurtosis: {}\n\n", s.quartile_rule, s.kurtosis_convention));
    let points: Vec<Vec<String>> = ttt.iter().map(|p| vec![sig6(p.fraction), sig6(p.value)]).collect();
    out.push_str(&table(&["i/n", "TTT"], &points));
    out
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("MODI_LFR_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("MODI_LFR_THREADS must be a non-negative integer, got '{raw}'"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn dispatch(cmd: &Command, args: &[String]) -> Result<u8, String> {
    match cmd {
        Command::Fit(a) => cmd_fit(a, args),
        Command::Compare(a) => cmd_compare(a, args),
        Command::Simulate(a) => cmd_simulate(a, args),
        Command::Sample(a) => cmd_sample(a, args),
        Command::Curves(a) => cmd_curves(a, args),
        Command::Ttt(a) => cmd_ttt(a, args),
    }
}

fn parse(argv: &[String]) -> Result<Cli, ExitCode> {
    Cli::try_parse_from(argv).map_err(|e| {
        let _ = e.print();
        if e.use_stderr() {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    })
}

fn run(argv: Vec<String>) -> ExitCode {
    let cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    let (cli, argv) = match (&cli.manifest, &cli.command) {
        (Some(_), Some(_)) => return fail("--manifest replays a recorded command and takes no subcommand"),
        (None, None) => return fail("a subcommand is required; see --help"),
        (None, Some(_)) => (cli, argv),
        (Some(path), None) => match replay_argv(path) {
            Ok(argv) => match parse(&argv) {
                Ok(cli) if cli.command.is_some() && cli.manifest.is_none() => (cli, argv),
                Ok(_) => return fail("manifest does not record a subcommand"),
                Err(code) => return code,
            },
            Err(e) => return fail(&e),
        },
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    match dispatch(cli.command.as_ref().expect("checked above"), &argv[1..]) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}

fn replay_argv(path: &Path) -> Result<Vec<String>, String> {
    let m = RunManifest::load(path)?;
    if m.args.first() != Some(&m.command) {
        return Err(format!("manifest arguments do not start with its command '{}'", m.command));
    }
    Ok(std::iter::once("modi-lfr".to_string()).chain(m.args).collect())
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    run(std::env::args().collect())
}
