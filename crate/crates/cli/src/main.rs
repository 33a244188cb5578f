mod compare;
mod render;
mod request;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use posbounds_core::numeric::default_tol;
use posbounds_core::Rational;

use request::*;
use run::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Exact effective positivity bounds for adjoint and pluricanonical bundles.
#[derive(Debug, Parser)]
#[command(name = "posbounds", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Bracket tolerance; also read from POSBOUNDS_TOL.
    #[arg(long, global = true, env = "POSBOUNDS_TOL")]
    tol: Option<String>,
    /// JSON request `{"schema": 1, "request": {"command": ..., "args": {...}}}`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Adjoint-bundle thresholds and surface criteria.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Jet generation through jumping values.
    #[command(subcommand)]
    Jets(JetsCmd),
    /// Effective Matsusaka bounds.
    Matsusaka(MatsusakaArgs),
    /// Algebraic Morse-inequality thresholds.
    Morse(MorseArgs),
    /// Monomial multiplier ideals and SNC round-downs.
    MultIdeal(MultIdealArgs),
    /// Numerical Lelong numbers of monomial curves.
    Lelong(LelongArgs),
    /// Section windows for numerical polynomials.
    Poly(PolyArgs),
    /// Convexity inequalities for intersection numbers.
    #[command(subcommand)]
    Ht(HtCmd),
    /// Very-ampleness multiples side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Subcommand)]
enum BoundsCmd {
    /// Least m with K + mL generating the given jets
    Siu(JetArgs),
    /// Degree conditions on subvarieties for K + L
    Degree(DegreeArgs),
    /// Degree conditions for 2K + L
    DoubleAdjoint(DegreeArgs),
    /// Very-ample multiple of K + mL
    TwistedAdjoint(DimArgs),
    /// Reider criterion on a surface
    Reider(ReiderArgs),
    /// p-very-ampleness criterion on a surface
    Bes(BesArgs),
    /// Pluricanonical and anti-pluricanonical multiples
    Pluri(PluriArgs),
    /// s-jets of K + L on a surface
    Surface(SurfaceArgs),
}

#[derive(Debug, Subcommand)]
enum JetsCmd {
    /// Chain of jumping values for given volume data
    Main(Box<JetsMainArgs>),
    /// Surface spannedness, separation and s-jet table
    Table(TableArgs),
    /// mu(L) from per-dimension degree data
    Mu(MuArgs),
    /// mu threshold for s-jets
    MuThreshold(MuThresholdArgs),
    /// Certified constant C_n
    Cn(DimArgs),
}

#[derive(Debug, Subcommand)]
enum HtCmd {
    /// Convexity checks on a table of intersection numbers
    Products(ProductsArgs),
    /// Chain inequality for L^n, L^p.H^(n-p), H^n
    Chain(ChainArgs),
    /// Diagonal Newton-Maclaurin form
    Diag(DiagArgs),
}

impl From<Command> for Request {
    fn from(c: Command) -> Self {
        match c {
            Command::Bounds(b) => match b {
                BoundsCmd::Siu(a) => Request::Siu(a),
                BoundsCmd::Degree(a) => Request::Degree(a),
                BoundsCmd::DoubleAdjoint(a) => Request::DoubleAdjoint(a),
                BoundsCmd::TwistedAdjoint(a) => Request::TwistedAdjoint(a),
                BoundsCmd::Reider(a) => Request::Reider(a),
                BoundsCmd::Bes(a) => Request::Bes(a),
                BoundsCmd::Pluri(a) => Request::Pluri(a),
                BoundsCmd::Surface(a) => Request::Surface(a),
            },
            Command::Jets(j) => match j {
                JetsCmd::Main(a) => Request::JetsMain(a),
                JetsCmd::Table(a) => Request::JetsTable(a),
                JetsCmd::Mu(a) => Request::Mu(a),
                JetsCmd::MuThreshold(a) => Request::MuThreshold(a),
                JetsCmd::Cn(a) => Request::Cn(a),
            },
            Command::Matsusaka(a) => Request::Matsusaka(a),
            Command::Morse(a) => Request::Morse(a),
            Command::MultIdeal(a) => Request::MultIdeal(a),
            Command::Lelong(a) => Request::Lelong(a),
            Command::Poly(a) => Request::Poly(a),
            Command::Ht(h) => match h {
                HtCmd::Products(a) => Request::HtProducts(a),
                HtCmd::Chain(a) => Request::HtChain(a),
                HtCmd::Diag(a) => Request::HtDiag(a),
            },
            Command::Compare(a) => Request::Compare(a),
        }
    }
}

fn tolerance(raw: Option<&str>) -> Result<Rational, CliError> {
    let Some(raw) = raw else {
        return Ok(default_tol());
    };
    let t: Rational = raw
        .parse()
        .map_err(|e: posbounds_core::Error| CliError::Input(format!("tolerance: {e}")))?;
    if !t.is_positive() {
        return Err(CliError::Input("tolerance must be positive".into()));
    }
    Ok(t)
}

fn load(path: &PathBuf) -> Result<Request, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let env: Envelope = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if env.schema != 1 {
        return Err(CliError::Input(format!("unsupported schema {}", env.schema)));
    }
    Ok(env.request)
}

fn execute(cli: Cli) -> Result<String, CliError> {
    let tol = tolerance(cli.tol.as_deref())?;
    let req = match (cli.command, &cli.input) {
        (Some(c), None) => Request::from(c),
        (None, Some(p)) => load(p)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Input("give a subcommand or --input, not both".into()))
        }
        (None, None) => return Err(CliError::Input("no subcommand given".into())),
    };
    let value = run::run(&req, &tol)?;
    Ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("values serialize"),
        Format::Table => render::render(&value),
    })
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error for a filter-style tool.
            let _ = writeln!(stdout, "{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
