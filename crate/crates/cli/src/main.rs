mod output;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tomokit::frames::{FrameParams, LinearGrid, PolarGrid};
use tomokit::infotheory::{linear_entropy, shannon_entropy, von_neumann_reduced, BipartiteSpec};
use tomokit::multiparticle::reduced_tomogram;
use tomokit::parallel::map_indices;
use tomokit::phasespace::wigner_field_at_time;
use tomokit::quad::QuadConfig;
use tomokit::states::{State, StateSpec};
use tomokit::tomography::{evaluate_field, FieldOptions, Provenance, TomogramField};

#[derive(Parser)]
#[command(
    name = "tomokit",
    version,
    about = "Symplectic tomograms, Wigner functions and entropies of free wavepackets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tomogram field over a polar grid of frames or explicit (mu, nu) pairs.
    Tomogram(TomogramArgs),
    /// Wigner function on a (q, p) grid.
    Wigner(WignerArgs),
    /// Linear and von Neumann entropy of a bipartite state, or Shannon
    /// entropies of a tomogram per frame.
    Entropy(EntropyArgs),
    /// Run the invariant checks for a state and report pass/fail.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Single-particle state JSON.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Bipartite state JSON.
    #[arg(long)]
    bipartite: Option<PathBuf>,
}

#[derive(Args)]
struct FrameArgs {
    /// Number of angles in [0, pi).
    #[arg(long, default_value_t = 64)]
    theta_count: usize,
    /// Comma-separated mu values; overrides the polar grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "nu")]
    mu: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "mu")]
    nu: Vec<f64>,
    #[arg(long = "x", num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true, default_values_t = [-8.0, 8.0])]
    x_range: Vec<f64>,
    #[arg(long, default_value_t = 401)]
    x_count: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    time: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for field sweeps.
    #[arg(long)]
    jobs: Option<usize>,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Args)]
struct TomogramArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    frames: FrameArgs,
    #[command(flatten)]
    common: Common,
    /// Evaluate by direct quadrature instead of the closed forms.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct WignerArgs {
    #[arg(long)]
    state: PathBuf,
    #[arg(long = "q", num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true, default_values_t = [-5.0, 5.0])]
    q_range: Vec<f64>,
    #[arg(long, default_value_t = 101)]
    q_count: usize,
    #[arg(long = "p", num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true, default_values_t = [-5.0, 5.0])]
    p_range: Vec<f64>,
    #[arg(long, default_value_t = 101)]
    p_count: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    frames: FrameArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug)]
enum CliError {
    Core(tomokit::Error),
    Input(String),
    Output(String),
}

impl From<tomokit::Error> for CliError {
    fn from(e: tomokit::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) | CliError::Input(_) => 2,
            CliError::Output(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Input(_) => "input",
            CliError::Output(_) => "output",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Input(m) | CliError::Output(m) => m.clone(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_state(path: &Path) -> CliResult<State> {
    Ok(State::new(StateSpec::from_json(&read(path)?)?)?)
}

fn load_bipartite(path: &Path) -> CliResult<BipartiteSpec> {
    Ok(BipartiteSpec::from_json(&read(path)?)?)
}

/// Frames and whether they came from the polar grid.
fn frames(args: &FrameArgs) -> CliResult<(Vec<FrameParams>, bool)> {
    if args.mu.is_empty() {
        return Ok((PolarGrid::new(args.theta_count)?.frames()?, true));
    }
    if args.mu.len() != args.nu.len() {
        return Err(CliError::Input(format!("{} mu values but {} nu values", args.mu.len(), args.nu.len())));
    }
    let f = args.mu.iter().zip(&args.nu).map(|(&m, &n)| FrameParams::new(m, n)).collect::<Result<_, _>>()?;
    Ok((f, false))
}

fn linear(range: &[f64], count: usize) -> CliResult<Vec<f64>> {
    Ok(LinearGrid::new(range[0], range[1], count)?.points())
}

fn quad(common: &Common) -> CliResult<QuadConfig> {
    if !(common.tolerance > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", common.tolerance)));
    }
    Ok(QuadConfig::with_tol(common.tolerance))
}

fn emit(common: &Common, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult<()> {
    let fail = |e: io::Error| CliError::Output(format!("writing output: {e}"));
    match &common.output {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path).map_err(fail)?);
            write(&mut file).map_err(fail)?;
            file.flush().map_err(fail)
        }
        None => {
            let mut out = io::stdout().lock();
            write(&mut out).map_err(fail)?;
            out.flush().map_err(fail)
        }
    }
}

fn reduced_field(bp: &BipartiteSpec, frames: &[FrameParams], xs: &[f64], common: &Common) -> CliResult<TomogramField> {
    let values = map_indices(frames.len(), common.jobs, |i| {
        xs.iter().map(|&x| reduced_tomogram(bp, common.time, &frames[i], x)).collect()
    })?;
    Ok(TomogramField {
        frames: frames.to_vec(),
        x_grid: xs.to_vec(),
        values,
        provenance: Provenance::ClosedForm,
        normalized: true,
        time: common.time,
    })
}

fn tomogram_field(input: &Input, fa: &FrameArgs, common: &Common, oracle: bool) -> CliResult<(TomogramField, bool)> {
    let (frames, polar) = frames(fa)?;
    let xs = linear(&fa.x_range, fa.x_count)?;
    let field = match (&input.state, &input.bipartite) {
        (Some(path), _) => {
            let opts = FieldOptions {
                time: common.time,
                provenance: if oracle { Provenance::Oracle } else { Provenance::ClosedForm },
                jobs: common.jobs,
                quad: quad(common)?,
            };
            evaluate_field(&load_state(path)?, &frames, &xs, &opts)?
        }
        (None, Some(path)) => {
            if oracle {
                return Err(CliError::Input("--oracle applies to single-particle states only".into()));
            }
            reduced_field(&load_bipartite(path)?, &frames, &xs, common)?
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    Ok((field, polar))
}

fn tomogram(args: &TomogramArgs) -> CliResult<()> {
    let (field, polar) = tomogram_field(&args.input, &args.frames, &args.common, args.oracle)?;
    emit(&args.common, |w| match args.common.format {
        Format::Csv => output::tomogram_csv(&field, polar, w),
        Format::Json => output::json(&field, w),
    })
}

fn wigner(args: &WignerArgs) -> CliResult<()> {
    let st = load_state(&args.state)?;
    let q = linear(&args.q_range, args.q_count)?;
    let p = linear(&args.p_range, args.p_count)?;
    let field = wigner_field_at_time(&st, args.common.time, &q, &p, args.common.jobs, &quad(&args.common)?)?;
    emit(&args.common, |w| match args.common.format {
        Format::Csv => output::wigner_csv(&field, w),
        Format::Json => output::json(&output::WignerOutput { field: &field, time: args.common.time }, w),
    })
}

#[derive(Serialize)]
struct BipartiteEntropies {
    linear_entropy: f64,
    von_neumann_entropy: f64,
}

fn entropy(args: &EntropyArgs) -> CliResult<()> {
    if let Some(path) = &args.input.bipartite {
        let bp = load_bipartite(path)?;
        let e =
            BipartiteEntropies { linear_entropy: linear_entropy(&bp)?, von_neumann_entropy: von_neumann_reduced(&bp)? };
        return emit(&args.common, |w| match args.common.format {
            Format::Csv => output::bipartite_entropy_csv(e.linear_entropy, e.von_neumann_entropy, w),
            Format::Json => output::json(&e, w),
        });
    }
    let (field, polar) = tomogram_field(&args.input, &args.frames, &args.common, false)?;
    if !field.normalized {
        return Err(tomokit::Error::Domain("Shannon entropy needs a normalizable state".into()).into());
    }
    let shannon = field.values.iter().map(|row| shannon_entropy(row, &field.x_grid)).collect::<Result<Vec<_>, _>>()?;
    let out = output::ShannonOutput { frames: &field.frames, shannon: &shannon, time: field.time };
    emit(&args.common, |w| match args.common.format {
        Format::Csv => output::shannon_csv(&out, polar, w),
        Format::Json => output::json(&out, w),
    })
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    match &cli.command {
        Command::Tomogram(a) => tomogram(a)?,
        Command::Wigner(a) => wigner(a)?,
        Command::Entropy(a) => entropy(a)?,
        Command::Verify(a) => {
            let report = match (&a.input.state, &a.input.bipartite) {
                (Some(path), _) => verify::state(&load_state(path)?, a.common.time, &quad(&a.common)?)?,
                (None, Some(path)) => verify::bipartite(&load_bipartite(path)?)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            emit(&a.common, |w| match a.common.format {
                Format::Csv => output::checks_csv(&report, w),
                Format::Json => output::json(&report, w),
            })?;
            if report.iter().any(|c| !c.passed) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let diag = serde_json::json!({ "error": e.kind(), "message": e.message(), "exit_code": e.exit_code() });
            eprintln!("{diag}");
            ExitCode::from(e.exit_code())
        }
    }
}
