use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dg_triangular::cli::{self, CheckOptions, Output};
use dg_triangular::{format, Error, Result};

#[derive(Parser)]
#[command(name = "dgtri", version, about = "Finite dg-categories, the triangular matrix category and the comma equivalence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Presentation file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Seed for randomized probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every declared entity.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Emit the opposite category.
    Oppose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        category: Option<String>,
    },
    /// Emit the tensor product of two categories.
    Tensor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
    },
    /// Build and emit the triangular matrix category of a bimodule.
    Lambda {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bimodule: Option<String>,
    },
    /// Run the equivalence suite on the fixtures of the file.
    CheckEquivalence {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fixture: Option<String>,
        /// Degrees to scan, `lo:hi`; must contain the shape window.
        #[arg(long, allow_hyphen_values = true)]
        degree_window: Option<String>,
    },
}

fn load(common: &Common) -> Result<format::Document> {
    let text = std::fs::read_to_string(&common.input)?;
    format::parse(&text)
}

fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Validate { common } => cli::validate(&load(common)?),
        Command::Oppose { common, category } => cli::oppose(&load(common)?, category.as_deref()),
        Command::Tensor { common, left, right } => cli::tensor(&load(common)?, left.as_deref(), right.as_deref()),
        Command::Lambda { common, bimodule } => cli::lambda(&load(common)?, bimodule.as_deref()),
        Command::CheckEquivalence { common, fixture, degree_window } => {
            let window = degree_window.as_deref().map(cli::parse_window).transpose()?;
            let opts = CheckOptions { seed: common.seed, window, fixture: fixture.clone(), ..Default::default() };
            cli::check_equivalence_command(&load(common)?, &opts)
        }
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Validate { common }
        | Command::Oppose { common, .. }
        | Command::Tensor { common, .. }
        | Command::Lambda { common, .. }
        | Command::CheckEquivalence { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let start = Instant::now();
    let result = run(&args.command);
    let code = cli::exit_code(&result);
    match &result {
        Ok(out) => {
            let written = match common(&args.command).output.as_str() {
                "-" => {
                    print!("{}", out.text);
                    Ok(())
                }
                path => std::fs::write(path, &out.text),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            for w in &out.report.warnings {
                eprintln!("warning: {w}");
            }
            eprintln!("{}", out.report.summary());
        }
        Err(Error::InvalidInput(report)) => {
            eprint!("{}", report.to_json());
            eprintln!("{}", report.summary());
        }
        Err(e) => eprintln!("error: {e}"),
    }
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(code as u8)
}
