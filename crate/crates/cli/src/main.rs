use std::io::Read;
use std::process::ExitCode;

use ainfty_cli::{job, run, Failure, Options, COMMANDS};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Exact computations with A∞-algebras.
#[derive(Parser, Debug)]
#[command(name = "ainfty", version)]
struct Cli {
    /// One of: check, minimal-model, ext, bar-homology, cobar, koszul,
    /// deform-check, braces, tw-check; or `run` for the job's own `command`.
    command: String,
    /// Job file; standard input when absent or `-`.
    input: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    arity_max: Option<usize>,
    /// Tensor length bound.
    #[arg(long)]
    length: Option<usize>,
    /// Length of the projective resolution for `ext`.
    #[arg(long)]
    resolution: Option<usize>,
    /// `simples`, or a comma list of `simple:v` / `projective:v`.
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random cochains tried by `tw-check`.
    #[arg(long)]
    random: Option<usize>,
    /// Print the job in canonical form instead of running it.
    #[arg(long)]
    normalize: bool,
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("ainfty: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut text = String::new();
    let read = match cli.input.as_deref() {
        None | Some("-") => std::io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) => std::fs::read_to_string(p).map(|t| text = t),
    };
    if let Err(e) = read {
        return fail(2, &format!("cannot read input: {e}"));
    }
    let job = match job::parse(&text) {
        Ok(j) => j,
        Err(e) => return fail(2, &format!("parse error at {e}")),
    };
    if cli.normalize {
        print!("{}", job::serialize(&job));
        return ExitCode::SUCCESS;
    }
    let command = match (cli.command.as_str(), &job.command) {
        ("run", Some(c)) => c.clone(),
        ("run", None) => return fail(2, "the job names no `command`"),
        (c, _) => c.to_string(),
    };
    if !COMMANDS.contains(&command.as_str()) {
        return fail(2, &format!("unknown command `{command}`"));
    }
    let opts = Options {
        arity_max: cli.arity_max,
        length: cli.length,
        resolution: cli.resolution,
        module: cli.module,
        seed: cli.seed,
        random: cli.random,
    };
    match run(&command, &job, &opts) {
        Ok(r) => {
            match cli.format {
                Format::Json => print!("{}", r.json()),
                Format::Table => print!("{}", r.text()),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Identity(m)) => fail(1, &m),
        Err(Failure::Usage(m)) => fail(2, &m),
    }
}
