//! `resgraph`: command-line calculator and verification harness for weighted
//! dual graphs.
//!
//! Exit codes: 0 on success, 1 when `verify` or `enumerate` finds a failing
//! check, 2 on unreadable or invalid input. Diagnostics go to stderr.

mod commands;
mod render;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use resgraph::format;
use resgraph::WeightedDualGraph;

#[derive(Parser)]
#[command(name = "resgraph", version, about = "Exact invariants of weighted dual graphs of surface singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file in text or JSON format; `-` reads stdin.
    file: PathBuf,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Skip the negative definiteness check while parsing.
    #[arg(long)]
    no_check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental cycle by Laufer's algorithm.
    Fundamental(Input),
    /// Degree, fundamental genus and essential irreducibility.
    Genus(Input),
    /// Yau sequence, minimal model and Yau cycle.
    Yau(Input),
    /// Canonical cycle and its relation to the Yau cycle.
    Canonical(Input),
    /// Special vertex, branches and template match in degree two.
    Classify(Input),
    /// Exact maximum of the arithmetic genus over effective cycles.
    PaMax {
        #[command(flatten)]
        input: Input,
        /// Initial per-coordinate box bound for the search.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Run the identity checks on one graph.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Restrict to a check: A, B, C, or a check name such as
        /// `yau-genus`. Repeatable.
        #[arg(long = "theorem", value_name = "ID")]
        theorems: Vec<String>,
    },
    /// Enumerate graphs and run every check on them.
    Enumerate(EnumerateArgs),
    /// Graphviz rendering of the graph.
    Dot(Input),
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// Largest number of vertices.
    #[arg(long)]
    pub max_vertices: Option<usize>,
    /// Weights of the special vertex, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Vec<i64>,
    /// Genera of the special vertex, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub genera: Vec<u32>,
    /// Compare the algorithms against brute-force oracles on all small
    /// graphs instead of running the identity checks.
    #[arg(long)]
    pub oracle: bool,
    /// Largest edge multiplicity in oracle mode.
    #[arg(long, default_value_t = 2)]
    pub max_mult: u32,
    /// Directory that receives one graph file per failure.
    #[arg(long, value_name = "DIR")]
    pub reproducers: Option<PathBuf>,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

/// Failure modes, mapped to exit codes.
pub enum Failure {
    /// A check failed; the report has already been written.
    Check,
    Input(String),
}

impl From<resgraph::Error> for Failure {
    fn from(e: resgraph::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(input: &Input) -> Result<WeightedDualGraph, Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?
    };
    format::parse_graph(&text, !input.no_check)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Fundamental(i) => commands::fundamental(&load(&i)?, i.json, out),
        Command::Genus(i) => commands::genus(&load(&i)?, i.json, out),
        Command::Yau(i) => commands::yau(&load(&i)?, i.json, out),
        Command::Canonical(i) => commands::canonical(&load(&i)?, i.json, out),
        Command::Classify(i) => commands::classify(&load(&i)?, i.json, out),
        Command::PaMax { input, bound } => commands::pa_max(&load(&input)?, bound, input.json, out),
        Command::Verify { input, theorems } => commands::verify(&load(&input)?, &theorems, input.json, out),
        Command::Enumerate(args) => commands::enumerate(&args, out),
        Command::Dot(i) => {
            out.push_str(&format::to_dot(&load(&i)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
