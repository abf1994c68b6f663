mod commands;
mod envelope;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use bilat_core::braid::OrbitBudget;
use bilat_core::rational::parse_rational;
use bilat_core::Error;

use commands::Outcome;
use envelope::ReportEnvelope;

#[derive(Parser)]
#[command(name = "bilat", version, about = "Exact analysis of integral bilinear lattices and their braid orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a seed: form, monodromy, spectrum, distinguished verdict.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Print the Coxeter-Dynkin diagram in Graphviz format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate the braid group orbit of a seed.
    Orbit {
        path: PathBuf,
        #[arg(long, default_value_t = OrbitBudget::default().max_states)]
        max_states: usize,
        #[arg(long, default_value_t = OrbitBudget::default().max_abs_entry)]
        max_entry: i64,
        #[arg(long)]
        json: bool,
    },
    /// Spectrum of the monodromy and its variance.
    Spectrum {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Power moments and Bernoulli moments of the spectrum.
    Moments {
        path: PathBuf,
        /// Rational `p/q`; defaults to the spectral span.
        #[arg(long)]
        nu: Option<String>,
        #[arg(long = "K", default_value_t = 4)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Chain type singularity from its exponents, e.g. "2,3".
    Chain {
        exponents: String,
        #[arg(long)]
        json: bool,
    },
    /// HOR polynomial given by cyclotomic indices, e.g. "1,2,3,4,8,12,16".
    Hor {
        indices: String,
        #[arg(long)]
        b: u8,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive the reference tables and report mismatches.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

enum Rendered {
    Outcome { outcome: Outcome, json: bool, input: Vec<u8> },
    Raw(String),
}

fn run(command: Command) -> Result<Rendered, Error> {
    let wrap = |outcome: Outcome, json: bool, input: Vec<u8>| Rendered::Outcome { outcome, json, input };
    Ok(match command {
        Command::Analyze { path, json, dot } => {
            let (seed, bytes) = input::read_matrix(&path)?;
            if dot {
                let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("seed");
                return Ok(Rendered::Raw(seed.diagram().to_dot(name)));
            }
            wrap(commands::analyze_cmd(&seed)?, json, bytes)
        }
        Command::Orbit { path, max_states, max_entry, json } => {
            let (seed, bytes) = input::read_matrix(&path)?;
            let budget = OrbitBudget { max_states, max_abs_entry: max_entry };
            wrap(commands::orbit_cmd(&seed, budget)?, json, bytes)
        }
        Command::Spectrum { path, json } => {
            let (seed, bytes) = input::read_matrix(&path)?;
            wrap(commands::spectrum_cmd(&seed)?, json, bytes)
        }
        Command::Moments { path, nu, k, json } => {
            let (seed, bytes) = input::read_matrix(&path)?;
            let nu = nu.as_deref().map(parse_rational).transpose()?;
            wrap(commands::moments_cmd(&seed, nu, k)?, json, bytes)
        }
        Command::Chain { exponents, json } => {
            let input = exponents.clone().into_bytes();
            wrap(commands::chain_cmd(&exponents)?, json, input)
        }
        Command::Hor { indices, b, json } => {
            let ms = input::parse_index_list(&indices)?;
            let input = format!("{indices};b={b}").into_bytes();
            wrap(commands::hor_cmd(&ms, b)?, json, input)
        }
        Command::Verify { json } => wrap(commands::verify_cmd()?, json, Vec::new()),
    })
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };

    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());

    match result {
        Ok(Rendered::Raw(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Rendered::Outcome { outcome, json, input }) => {
            if json {
                let env = ReportEnvelope::new(args[1..].to_vec(), &input, &outcome.payload);
                print!("{}", env.to_json());
            } else {
                print!("{}", outcome.text);
            }
            if outcome.mismatch {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
