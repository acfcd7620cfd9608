//! Front end for the `so42` binary: argument parsing, command dispatch and
//! report rendering.

pub mod commands;
pub mod output;
pub mod range;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CliError, Mode, Outcome, ProblemKind};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "so42", version, about = "Oscillator/Coulomb algebra checks and spectrum tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closure of the fifteen generators and their ladder relations with H.
    VerifyAlgebra {
        /// Fock-space cutoff, 4..=12.
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        /// Shells excluded at the cutoff before comparing.
        #[arg(long, default_value_t = 2)]
        margin: u32,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Closure residual tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Ladder residual tolerance.
        #[arg(long, default_value_t = 1e-12)]
        ladder_tol: f64,
    },
    /// Closed-form spectrum table.
    Spectrum {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        z2: f64,
        /// Mass scale of the fine-structure series and the mass spectrum.
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        m1: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// Principal numbers: `n` or `a..b`.
        #[arg(long, default_value = "1..3")]
        n: String,
        /// Fine-structure label; all allowed values when omitted.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i32>,
    },
    /// Oscillator levels fed through the Coulomb solver, against −4ω².
    Duality {
        #[arg(long, default_value_t = 0.5)]
        omega: f64,
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[arg(long, default_value_t = 6000)]
        grid_n: usize,
        #[arg(long, default_value_t = 5e-4)]
        tol: f64,
    },
    /// Spinor to 3-space, parabolic and cylindrical coordinates.
    Map {
        /// Four real components `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Fine-structure series against the exact chain over a γ sweep.
    ReportFine {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i32,
        /// `x` or `a..b:K` (log-spaced).
        #[arg(long, default_value = "1e-3..1e-1:20")]
        gamma: String,
    },
    /// Lowest eigenvalues of one grid problem.
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemKind,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m_phi: i32,
        #[arg(long, default_value_t = 1.0)]
        z2: f64,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = 4000)]
        grid_n: usize,
        /// Outer end point; defaults scale with 1/ω or 1/Z².
        #[arg(long)]
        r_max: Option<f64>,
        /// Also solve on the halved step and attach error estimates.
        #[arg(long)]
        richardson: bool,
    },
}

pub fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::VerifyAlgebra { nmax, margin, omega, tol, ladder_tol } => {
            commands::verify_algebra(&commands::AlgebraArgs {
                n_max: *nmax,
                margin: *margin,
                omega: *omega,
                tol: *tol,
                ladder_tol: *ladder_tol,
            })
        }
        Command::Spectrum { mode, omega, z2, m, m1, gamma, n, k } => commands::spectrum(&commands::SpectrumArgs {
            mode: *mode,
            omega: *omega,
            z2: *z2,
            m: *m,
            m1: *m1,
            gamma: *gamma,
            n: n.clone(),
            k: *k,
        }),
        Command::Duality { omega, levels, grid_n, tol } => commands::duality(&commands::DualityArgs {
            omega: *omega,
            levels: *levels,
            grid_n: *grid_n,
            tol: *tol,
        }),
        Command::Map { xi } => commands::map(xi),
        Command::ReportFine { m, n, k, gamma } => {
            commands::report_fine(&commands::FineArgs { m: *m, n: *n, k: *k, gamma: gamma.clone() })
        }
        Command::Solve { problem, omega, m_phi, z2, l, count, grid_n, r_max, richardson } => {
            commands::solve(&commands::SolveArgs {
                problem: *problem,
                omega: *omega,
                m_phi: *m_phi,
                z2: *z2,
                l: *l,
                count: *count,
                grid_n: *grid_n,
                r_max: *r_max,
                richardson: *richardson,
            })
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let body = outcome.table.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    if let Some(note) = &outcome.note {
        if cli.format == Format::Csv {
            eprintln!("{note}");
        }
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("tolerance failure: {msg}");
            3
        }
        None => 0,
    }
}
