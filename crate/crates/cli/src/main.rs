//! `deltaprime`: scattering, resonance and convergence experiments for
//! `-d²/dx² + eps^-2 V(x/eps)`.
//!
//! Exit codes: 0 success, 2 configuration or potential-spec error,
//! 3 numerical failure (diagnostic on stderr).

mod table;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use deltaprime::jost::JostConfig;
use deltaprime::limit_ops::{DEFAULT_BOX, DEFAULT_LATTICE};
use deltaprime::resonance::resonance_report_with;
use deltaprime::{Error, Exec, Potential, PotentialSpec, WaveNumber};

use table::{complex, Cell, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "deltaprime", version, about = "Jost solutions, zero-energy resonances and scaled-potential limits")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jost coefficients a, b and r = b/a, t = 1/a at one or more wavenumbers.
    Scatter(ScatterArgs),
    /// Zero-energy resonance: coupling sweeps and theta.
    #[command(subcommand)]
    Resonance(ResonanceCommand),
    /// Truncated scaled operator vs its eps -> 0 limit along an eps list.
    Converge(ConvergeArgs),
}

#[derive(Args, Debug)]
struct ScatterArgs {
    /// Potential spec (JSON).
    #[arg(long)]
    potential: PathBuf,
    /// Wavenumber as RE,IM (or RE).
    #[arg(long, value_parser = parse_k)]
    k: Option<WaveNumber>,
    /// Further wavenumbers, each RE,IM.
    #[arg(long, value_parser = parse_k, num_args = 1..)]
    k_list: Vec<WaveNumber>,
    /// Tail tolerance for the Jost anchors.
    #[arg(long, default_value = "1e-10")]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum ResonanceCommand {
    /// D(0; alpha V) on a uniform alpha grid, and its roots.
    Sweep(SweepArgs),
    /// D(0), theta, and the Ddot(0) = -i(theta + 1/theta) check.
    Theta(ThetaArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Potential spec (JSON); the sweep scales its coupling.
    #[arg(long)]
    potential: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    alpha_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    alpha_max: f64,
    /// Number of grid points.
    #[arg(long)]
    grid: usize,
    /// Bisection stops once bracket width and |D(0)| are below this.
    #[arg(long, default_value = "1e-9")]
    root_tol: f64,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    /// Potential spec (JSON).
    #[arg(long)]
    potential: PathBuf,
    /// Resonance threshold on |D(0)| [default: 1e-8 (1 + FM norm)].
    #[arg(long)]
    threshold: Option<f64>,
    /// Step of the Ddot(0) difference quotients.
    #[arg(long, default_value = "1e-3")]
    delta: f64,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    /// Potential spec (JSON).
    #[arg(long)]
    potential: PathBuf,
    /// Wavenumber as RE,IM; Im k > 0.
    #[arg(long, value_parser = parse_k, default_value = "1,1")]
    k: WaveNumber,
    /// Comma-separated eps values.
    #[arg(long, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    /// Kernel lattice covers [-box, box]^2.
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    bx: f64,
    /// Kernel lattice is n x n.
    #[arg(long, default_value_t = DEFAULT_LATTICE)]
    n: usize,
}

fn parse_k(s: &str) -> Result<WaveNumber, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number '{t}': {e}"));
    let (re, im) = match parts.as_slice() {
        [re] => (num(re)?, 0.0),
        [re, im] => (num(re)?, num(im)?),
        _ => return Err(format!("expected RE,IM, got '{s}'")),
    };
    WaveNumber::new(re, im).map_err(|e| e.to_string())
}

/// Error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidPotential(_) | Error::InvalidArgument(_) | Error::EpsilonTooLarge { .. } => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Potential, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(PotentialSpec::from_json(&text)?.to_potential()?)
}

fn scatter(args: &ScatterArgs, exec: Exec) -> Result<Table, Failure> {
    let p = load(&args.potential)?;
    let ks: Vec<WaveNumber> = args.k.iter().chain(&args.k_list).copied().collect();
    if ks.is_empty() {
        return Err(Failure {
            code: 2,
            message: "give --k or --k-list".into(),
        });
    }
    let rows = exec.map(&ks, |k| deltaprime::scattering(&p, *k, args.tol));
    let mut t = Table::new(&[
        "k_re", "k_im", "a_re", "a_im", "b_re", "b_im", "r_re", "r_im", "t_re", "t_im", "unitarity_defect",
    ]);
    for s in rows {
        let s = s?;
        let mut row: Vec<Cell> = Vec::new();
        for z in [s.k.value(), s.a, s.b, s.r, s.t] {
            row.extend(complex(z));
        }
        // |r|^2 + |t|^2 = 1 only holds on the real axis.
        row.push(if s.k.value().im == 0.0 { s.unitarity_defect().into() } else { Cell::Empty });
        t.push(row);
    }
    Ok(t)
}

fn sweep(args: &SweepArgs, exec: Exec) -> Result<Table, Failure> {
    let p = load(&args.potential)?;
    let s = deltaprime::resonant_couplings(&p, args.alpha_min, args.alpha_max, args.grid, args.root_tol, exec)?;
    for w in &s.warnings {
        eprintln!("warning: {w}");
    }
    let mut t = Table::new(&["kind", "alpha", "d0", "residual", "bracket_lo", "bracket_hi", "trivial"]);
    for (a, d) in s.alphas.iter().zip(&s.d0) {
        t.push(vec!["sample".into(), (*a).into(), (*d).into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
    }
    for r in &s.roots {
        t.push(vec![
            "root".into(),
            r.alpha.into(),
            Cell::Empty,
            r.residual.into(),
            r.bracket.0.into(),
            r.bracket.1.into(),
            r.trivial.into(),
        ]);
    }
    Ok(t)
}

fn theta(args: &ThetaArgs) -> Result<Table, Failure> {
    let p = load(&args.potential)?;
    let r = resonance_report_with(&p, args.threshold, &JostConfig::default())?;
    let mut t = Table::new(&[
        "d0",
        "threshold",
        "resonant",
        "theta",
        "theta_far_field",
        "ddot_re",
        "ddot_im",
        "expected_re",
        "expected_im",
        "ddot_gap",
    ]);
    let mut row: Vec<Cell> = vec![r.d0.into(), r.threshold.into(), r.is_resonant.into(), r.theta.into(), r.theta_far_field.into()];
    if r.is_resonant {
        let d = deltaprime::d_dot_zero(&p, args.delta)?;
        row.extend(complex(d.estimate));
        row.extend(complex(d.expected));
        row.push(d.gap.into());
    } else {
        row.extend(std::iter::repeat_n(Cell::Empty, 5));
    }
    t.push(row);
    Ok(t)
}

fn converge(args: &ConvergeArgs, exec: Exec) -> Result<Table, Failure> {
    let p = load(&args.potential)?;
    let rows = deltaprime::convergence_table(&p, args.k, &args.eps, args.bx, args.n, exec)?;
    let mut t = Table::new(&[
        "eps",
        "r_re",
        "r_im",
        "t_re",
        "t_im",
        "kernel_distance",
        "limit_r",
        "limit_t",
        "classification",
        "theta",
    ]);
    for r in rows {
        let mut row: Vec<Cell> = vec![r.eps.into()];
        row.extend(complex(r.r_eps));
        row.extend(complex(r.t_eps));
        row.push(r.kernel_distance.into());
        row.push(r.limit_r.re.into());
        row.push(r.limit_t.re.into());
        row.push(r.limit.name().into());
        row.push(match r.limit {
            deltaprime::LimitOperator::Interface { theta } => theta.into(),
            deltaprime::LimitOperator::Dirichlet => Cell::Empty,
        });
        t.push(row);
    }
    Ok(t)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let table = match &cli.command {
        Command::Scatter(a) => scatter(a, exec)?,
        Command::Resonance(ResonanceCommand::Sweep(a)) => sweep(a, exec)?,
        Command::Resonance(ResonanceCommand::Theta(a)) => theta(a)?,
        Command::Converge(a) => converge(a, exec)?,
    };
    match &cli.out {
        Some(path) => {
            let f = fs::File::create(path).map_err(|e| Failure {
                code: 2,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            table.write(io::BufWriter::new(f), cli.format)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, cli.format)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_wavenumbers() {
        assert_eq!(parse_k("1,2").unwrap(), WaveNumber::new(1.0, 2.0).unwrap());
        assert_eq!(parse_k("0.5").unwrap(), WaveNumber::real(0.5));
        assert!(parse_k("1,-1").is_err());
        assert!(parse_k("a,b").is_err());
        assert!(parse_k("1,2,3").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn help_defaults_match_library() {
        use deltaprime::jost::DEFAULT_TAIL_TOL;
        use deltaprime::resonance::{DEFAULT_DDOT_DELTA, DEFAULT_ROOT_TOL};
        let cli = Cli::parse_from(["deltaprime", "scatter", "--potential", "p.json", "--k", "1"]);
        let Command::Scatter(a) = cli.command else { panic!() };
        assert_eq!(a.tol, DEFAULT_TAIL_TOL);
        let cli = Cli::parse_from(["deltaprime", "resonance", "sweep", "--potential", "p", "--alpha-min", "0", "--alpha-max", "1", "--grid", "3"]);
        let Command::Resonance(ResonanceCommand::Sweep(a)) = cli.command else { panic!() };
        assert_eq!(a.root_tol, DEFAULT_ROOT_TOL);
        let cli = Cli::parse_from(["deltaprime", "resonance", "theta", "--potential", "p"]);
        let Command::Resonance(ResonanceCommand::Theta(a)) = cli.command else { panic!() };
        assert_eq!(a.delta, DEFAULT_DDOT_DELTA);
    }
}
