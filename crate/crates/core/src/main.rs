use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cartan::cli::{cmd_examples, cmd_pages, cmd_validate, ExamplesAction, Format, EXIT_USAGE};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cartan", version, about = "Exact spectral sequences of invariant-form models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Machine,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Machine => Format::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check Lie data and model consistency (exit 1 if any check fails)
    Validate { file: PathBuf },
    /// Compute the spectral sequence pages, abutment and E_2 verdict
    Pages {
        file: PathBuf,
        /// Last page to print (E_inf is always printed)
        #[arg(long = "max-r")]
        max_r: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Built-in example models
    Examples(ExamplesArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("action").required(true).args(["list", "run", "export"])))]
struct ExamplesArgs {
    /// List card names with descriptions
    #[arg(long)]
    list: bool,
    /// Run a card against its expectations, e.g. weighted_hopf:3
    #[arg(long, value_name = "NAME[:param]")]
    run: Option<String>,
    /// Print a card (or the heisenberg / mutated_jacobi fixture) as a model file
    #[arg(long, value_name = "NAME[:param]")]
    export: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Pages { file, max_r, format } => cmd_pages(file, *max_r, (*format).into()),
        Command::Examples(args) => {
            let action = match (&args.run, &args.export) {
                (Some(name), _) => ExamplesAction::Run(name),
                (_, Some(name)) => ExamplesAction::Export(name),
                _ => ExamplesAction::List,
            };
            cmd_examples(action, args.format.into())
        }
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
