//! Command-line front end: sample a function, compute expansion
//! coefficients, evaluate the transform approximation, collapse it to a
//! single polynomial ratio, reconstruct the time-domain function, or run the
//! baseline comparison method.

mod output;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ftrat::oracle::linspace;
use ftrat::polyform::EXTENDED_THRESHOLD;
use ftrat::{
    analytic_reference, collapse, compute_even_coeffs, compute_mixed_coeffs, compute_odd_coeffs,
    eval_rational, load_samples, preset, reconstruct_time_domain, sample_builtin, ApproxError,
    BaselineModel, BuiltinFunction, BuiltinKind, CoeffError, ParamSet, Parity,
    PartialFractionModel, PolyError, SampleError, SampledFunction, ShiftedSamples,
};
use output::{emit_table, fmt_f64, Format, Table};

#[derive(Parser)]
#[command(
    name = "ftrat",
    version,
    about = "Rational approximation of the Fourier transform of functions with even real part and odd imaginary part"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the approximated transform over a frequency grid
    Eval(EvalArgs),
    /// Export the per-term expansion coefficients
    Coeffs(CoeffsArgs),
    /// Collapse the model to a single P/Q ratio, export it, and report its
    /// agreement with the partial-fraction form
    Collapse(CollapseArgs),
    /// Reconstruct the time-domain function from its samples
    Reconstruct(ReconstructArgs),
    /// Evaluate the prior shifted-grid baseline method
    Baseline(BaselineArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FunctionName {
    /// Smooth rectangular pulse 1/((2t)^(2k) + 1)
    Rect,
    /// i*t times the smooth rectangular pulse
    #[value(name = "t-rect", alias = "trect")]
    TRect,
    /// sqrt(pi) exp(-(pi t)^2)
    Gauss,
    /// i pi^(3/2) t exp(-(pi t)^2)
    #[value(name = "t-gauss", alias = "tgauss")]
    TGauss,
}

impl FunctionName {
    fn kind(self) -> BuiltinKind {
        match self {
            FunctionName::Rect => BuiltinKind::RectSmooth,
            FunctionName::TRect => BuiltinKind::TRectSmooth,
            FunctionName::Gauss => BuiltinKind::Gauss,
            FunctionName::TGauss => BuiltinKind::TGauss,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityName {
    Even,
    Odd,
    Mixed,
}

impl ParityName {
    fn parity(self) -> Parity {
        match self {
            ParityName::Even => Parity::EvenReal,
            ParityName::Odd => Parity::OddImaginary,
            ParityName::Mixed => Parity::Mixed,
        }
    }
}

/// Input selection shared by all subcommands. Defaults equal preset 0; a
/// preset fixes both the function and its reference parameters, and the
/// parameter flags override individually.
#[derive(Args)]
struct InputArgs {
    /// Preset 0..=3: rect, t-rect, gauss, t-gauss with reference parameters
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3),
          conflicts_with_all = ["function", "samples"])]
    preset: Option<u8>,

    /// Built-in input function
    #[arg(long, value_enum, conflicts_with = "samples")]
    function: Option<FunctionName>,

    /// Smoothing exponent k of the rectangular family
    #[arg(long, default_value_t = 35)]
    k: u32,

    /// Sample file with t,re,im rows on the grid n*h for n = -N..=N
    #[arg(long, requires = "parity")]
    samples: Option<PathBuf>,

    /// Parity of the sample file
    #[arg(long, value_enum)]
    parity: Option<ParityName>,

    /// Number of expansion terms
    #[arg(long = "M")]
    terms: Option<usize>,

    /// Half sample count N (2N+1 samples)
    #[arg(long = "N")]
    half_count: Option<usize>,

    /// Sampling step
    #[arg(long = "h")]
    step: Option<f64>,

    /// Decay constant
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
}

enum Input {
    Builtin(BuiltinFunction),
    File(PathBuf, Parity),
}

impl InputArgs {
    fn resolve(&self) -> Result<(Input, ParamSet), CliError> {
        let base = preset(self.preset.unwrap_or(0)).expect("preset range checked by clap");
        let terms = self.terms.unwrap_or(base.params.terms());
        let half_count = self.half_count.unwrap_or(base.params.half_count());
        let step = self.step.unwrap_or(base.params.step());
        let sigma = self.sigma.unwrap_or(base.params.sigma());
        let params = ParamSet::new(terms, half_count, step, sigma)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let input = if let Some(path) = &self.samples {
            let parity = self.parity.expect("clap enforces --parity with --samples");
            if [self.terms, self.half_count].contains(&None)
                || self.step.is_none()
                || self.sigma.is_none()
            {
                return Err(CliError::Validation(
                    "--samples needs explicit --M, --N, --h and --sigma".into(),
                ));
            }
            Input::File(path.clone(), parity.parity())
        } else {
            let kind = self.function.map(FunctionName::kind).unwrap_or(base.function.kind());
            Input::Builtin(BuiltinFunction::new(kind).with_smoothing(self.k))
        };
        Ok((input, params))
    }

    /// Loads or samples the input, with coverage and saturation warnings.
    fn sampled(&self) -> Result<(SampledFunction, Option<BuiltinKind>), CliError> {
        let (input, params) = self.resolve()?;
        let (f, kind) = match input {
            Input::Builtin(b) => (sample_builtin(&b, &params), Some(b.kind())),
            Input::File(path, parity) => (load_samples(&path, &params, parity)?, None),
        };
        if f.params().covers_declared_width() == Some(false) {
            eprintln!(
                "warning: sampled span {} does not cover the declared function width {}",
                f.params().span(),
                f.params().declared_width().unwrap_or(f64::NAN),
            );
        }
        if f.saturation_count() > 0 {
            eprintln!(
                "warning: {} samples saturated to zero in the pulse power",
                f.saturation_count()
            );
        }
        Ok((f, kind))
    }
}

#[derive(Args)]
struct GridArgs {
    /// Grid start (default -2*pi)
    #[arg(long, allow_negative_numbers = true)]
    nu_min: Option<f64>,

    /// Grid end (default 2*pi)
    #[arg(long, allow_negative_numbers = true)]
    nu_max: Option<f64>,

    /// Number of grid points, endpoints inclusive
    #[arg(long, default_value_t = 1000)]
    points: usize,
}

impl GridArgs {
    fn build(&self) -> Result<Vec<f64>, CliError> {
        let lo = self.nu_min.unwrap_or(-2.0 * PI);
        let hi = self.nu_max.unwrap_or(2.0 * PI);
        if self.points < 2 {
            return Err(CliError::Validation("points must be at least 2".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(CliError::Validation(format!(
                "invalid grid range [{lo}, {hi}]"
            )));
        }
        Ok(linspace(lo, hi, self.points))
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// Table format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutArgs,
    /// Evaluate through the collapsed P/Q form instead of the
    /// partial-fraction sum
    #[arg(long)]
    collapse: bool,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CollapseArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Output file for the rational form; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReconstructArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutArgs,
    /// Reconstruction decay constants, one output column each
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.25, 0.75])]
    sigmas: Vec<f64>,
    /// Time-grid start
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t_min: f64,
    /// Time-grid end (default 4*M*h, one full period of the undamped form)
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    /// Number of time-grid points
    #[arg(long, default_value_t = 801)]
    t_points: usize,
    /// Evaluate the undamped form (approximates f(t) e^(sigma t); only valid
    /// on |t| <= M*h)
    #[arg(long)]
    undamped: bool,
}

#[derive(Args)]
struct BaselineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutArgs,
    /// Grid shift a of the one-sided sampling grid (default N*h/2)
    #[arg(long = "shift-a", allow_negative_numbers = true)]
    shift: Option<f64>,
    /// Baseline summation term count (default --M)
    #[arg(long)]
    baseline_terms: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    Tolerance(String),
    Io(String),
    /// Stdout consumer went away (e.g. piped into `head`); not a failure.
    BrokenPipe,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Tolerance(_) => 2,
            CliError::Io(_) => 3,
            CliError::BrokenPipe => 0,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Tolerance(m) | CliError::Io(m) => m,
            CliError::BrokenPipe => "",
        }
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        match e {
            SampleError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        match e {
            CoeffError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Io(e.to_string())
        }
    }
}

/// Prints a summary line, treating a closed stdout as success.
fn say(line: String) -> Result<(), CliError> {
    use std::io::Write;
    writeln!(std::io::stdout(), "{line}").map_err(CliError::from)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Collapse(args) => cmd_collapse(args),
        Command::Reconstruct(args) => cmd_reconstruct(args),
        Command::Baseline(args) => cmd_baseline(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::BrokenPipe) {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn params_meta(params: &ParamSet) -> Vec<(&'static str, String)> {
    vec![
        ("terms", params.terms().to_string()),
        ("half_count", params.half_count().to_string()),
        ("step", fmt_f64(params.step())),
        ("sigma", fmt_f64(params.sigma())),
    ]
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let (sampled, kind) = args.input.sampled()?;
    let grid = args.grid.build()?;
    let model = PartialFractionModel::from_sampled(&sampled)?;
    let rational = args.collapse.then(|| collapse(&model));
    let eval = |nu: f64| match &rational {
        Some(r) => eval_rational(r, nu),
        None => model.eval_re(nu),
    };

    let meta = params_meta(sampled.params());
    match kind {
        Some(kind) => {
            let mut table = Table::new(vec!["nu", "approx", "reference", "abs_diff"]);
            let mut max_abs_diff = 0.0f64;
            let mut argmax = grid[0];
            for &nu in &grid {
                let a = eval(nu);
                let r = analytic_reference(kind, nu);
                let d = (a - r).abs();
                if d > max_abs_diff {
                    max_abs_diff = d;
                    argmax = nu;
                }
                table.push(vec![nu, a, r, d]);
            }
            emit_table(args.out.out.as_deref(), &table, &meta, args.out.format, &[])?;
            say(format!("max_abs_diff = {max_abs_diff:.6e} at nu = {argmax:.6e}"))?;
        }
        None => {
            let mut table = Table::new(vec!["nu", "approx"]);
            let mut max_abs = 0.0f64;
            let mut argmax = grid[0];
            for &nu in &grid {
                let a = eval(nu);
                if a.abs() > max_abs {
                    max_abs = a.abs();
                    argmax = nu;
                }
                table.push(vec![nu, a]);
            }
            emit_table(args.out.out.as_deref(), &table, &meta, args.out.format, &[])?;
            say(format!(
                "no analytic reference for user samples; max |approx| = {max_abs:.6e} at nu = {argmax:.6e}"
            ))?;
        }
    }
    Ok(())
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<(), CliError> {
    let (sampled, _) = args.input.sampled()?;
    let terms = match sampled.parity() {
        Parity::EvenReal => compute_even_coeffs(&sampled)?,
        Parity::OddImaginary => compute_odd_coeffs(&sampled)?,
        Parity::Mixed => compute_mixed_coeffs(&sampled),
    };
    match &args.out {
        Some(path) => {
            ftrat::export_coefficients(path, sampled.params(), sampled.parity(), &terms)?;
            say(format!(
                "wrote {} term records to {}",
                terms.len(),
                path.display()
            ))?;
        }
        None => {
            let stdout = std::io::stdout();
            ftrat::coeffs::write_coefficients(
                stdout.lock(),
                sampled.params(),
                sampled.parity(),
                &terms,
            )?;
        }
    }
    Ok(())
}

fn cmd_collapse(args: CollapseArgs) -> Result<(), CliError> {
    let (sampled, _) = args.input.sampled()?;
    let grid = args.grid.build()?;
    let model = PartialFractionModel::from_sampled(&sampled)?;
    let r = collapse(&model);

    match &args.out {
        Some(path) => {
            ftrat::export_rational(&r, path)?;
            say(format!(
                "wrote rational form (deg P = {}, deg Q = {}) to {}",
                r.p().degree(),
                r.q().degree(),
                path.display()
            ))?;
        }
        None => {
            let stdout = std::io::stdout();
            ftrat::polyform::write_rational(&mut stdout.lock(), &r)?;
        }
    }

    let mut max_f = 0.0f64;
    let mut worst = 0.0f64;
    for &nu in &grid {
        let pf = model.eval_re(nu);
        max_f = max_f.max(pf.abs());
        worst = worst.max((eval_rational(&r, nu) - pf).abs());
    }
    let tol_rel = if model.params().terms() > EXTENDED_THRESHOLD {
        1e-6
    } else {
        1e-10
    };
    let tolerance = tol_rel * max_f;
    say(format!(
        "collapse agreement: max |P/Q - partial fractions| = {worst:.6e} over {} points (tolerance {tolerance:.6e})",
        grid.len()
    ))?;
    if worst > tolerance {
        return Err(CliError::Tolerance(format!(
            "collapsed form deviates from the partial-fraction sum by {worst:.3e} (> {tolerance:.3e}); \
             the coefficients need a wider-precision collapse than configured"
        )));
    }
    Ok(())
}

fn cmd_reconstruct(args: ReconstructArgs) -> Result<(), CliError> {
    let (sampled, _) = args.input.sampled()?;
    let p = *sampled.params();
    if args.t_points < 2 {
        return Err(CliError::Validation("t-points must be at least 2".into()));
    }
    let t_max = args.t_max.unwrap_or(4.0 * p.terms() as f64 * p.step());
    if args.t_min >= t_max || args.t_min.is_nan() || t_max.is_nan() {
        return Err(CliError::Validation(format!(
            "invalid time range [{}, {t_max}]",
            args.t_min
        )));
    }
    if args.sigmas.is_empty() {
        return Err(CliError::Validation("need at least one sigma".into()));
    }
    let times = linspace(args.t_min, t_max, args.t_points);
    let damped = !args.undamped;

    let mut table = Table::new(vec!["t"]);
    let sigma_columns: Vec<String> = args.sigmas.iter().map(|s| format!("sigma_{s}")).collect();
    for &t in &times {
        let mut row = vec![t];
        for &sigma in &args.sigmas {
            row.push(reconstruct_time_domain(&sampled, t, sigma, damped)?);
        }
        table.push(row);
    }
    let mut meta = params_meta(&p);
    meta.push(("mode", if damped { "damped".into() } else { "undamped".into() }));
    emit_table(args.out.out.as_deref(), &table, &meta, args.out.format, &sigma_columns)?;
    say(format!(
        "reconstructed {} time points for sigma in {:?} ({})",
        times.len(),
        args.sigmas,
        if damped { "damped" } else { "undamped" }
    ))?;
    Ok(())
}

fn cmd_baseline(args: BaselineArgs) -> Result<(), CliError> {
    let (input, params) = args.input.resolve()?;
    let function = match input {
        Input::Builtin(b) => b,
        Input::File(..) => {
            return Err(CliError::Validation(
                "the baseline method samples its own shifted grid and needs a built-in input".into(),
            ))
        }
    };
    let grid = args.grid.build()?;
    let shift = args
        .shift
        .unwrap_or(params.half_count() as f64 * params.step() / 2.0);
    let terms = args.baseline_terms.unwrap_or(params.terms());
    if terms == 0 {
        return Err(CliError::Validation("baseline-terms must be at least 1".into()));
    }
    let samples = ShiftedSamples::from_builtin(&function, &params, shift);
    let model = BaselineModel::build(&samples, terms);

    let mut table = Table::new(vec!["nu", "approx_re", "approx_im", "reference", "abs_diff"]);
    let mut max_abs_diff = 0.0f64;
    let mut argmax = grid[0];
    for &nu in &grid {
        let v = model.eval(nu);
        let want = analytic_reference(function.kind(), nu);
        let d = ((v.re - want).powi(2) + v.im * v.im).sqrt();
        if d > max_abs_diff {
            max_abs_diff = d;
            argmax = nu;
        }
        table.push(vec![nu, v.re, v.im, want, d]);
    }
    let mut meta = params_meta(&params);
    meta.push(("shift", fmt_f64(shift)));
    meta.push(("baseline_terms", terms.to_string()));
    emit_table(args.out.out.as_deref(), &table, &meta, args.out.format, &[])?;
    say(format!(
        "baseline max_abs_diff = {max_abs_diff:.6e} at nu = {argmax:.6e}"
    ))?;
    Ok(())
}
