use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;

use coprime::cli::render::{render_error, render_outcome};
use coprime::cli::{execute_command, parse_problem, CliError, Command, CommandOptions};

/// Coprimary filtrations of finitely generated modules.
#[derive(Parser, Debug)]
#[command(name = "coprime", version)]
struct Args {
    /// ass, filt, verify, equiv, swap, extensions, decompose, oracle or omega
    command: String,
    /// problem file, or `-` for stdin
    file: String,
    /// `canonical` or an ascending prime list such as "(2),(3)"
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "max-extensions")]
    max_extensions: Option<usize>,
    /// number of chain terms for `omega`
    #[arg(long)]
    prefix: Option<usize>,
    /// which declared module to use (default: the last one)
    #[arg(long)]
    module: Option<String>,
    /// chain index for `swap`
    #[arg(long)]
    index: Option<usize>,
    /// `omega`: use the alternative chain instead of the canonical one
    #[arg(long)]
    alternative: bool,
}

fn run(args: &Args) -> Result<coprime::cli::Outcome, CliError> {
    let command: Command = args.command.parse()?;
    let text = if args.file == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&args.file).map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.file)))?
    };
    let problem = parse_problem(&text)?;
    let opts = CommandOptions {
        order: args.order.clone(),
        seed: args.seed,
        max_extensions: args.max_extensions,
        prefix: args.prefix,
        module: args.module.clone(),
        index: args.index,
        alternative: args.alternative,
    };
    execute_command(&problem, command, &opts)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&args) {
        Ok(outcome) => {
            print!("{}", render_outcome(&outcome, args.json));
            let _ = io::stdout().flush();
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            eprint!("{}", render_error(&err, args.json));
            ExitCode::from(err.exit_code as u8)
        }
    }
}
