use std::io;
use std::process::ExitCode;

use clap::Parser;
use vacphase_cli::{run, Cli, RunConfig, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors share the invalid-input status; help and version exit 0
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let config = RunConfig::from(cli);
    let code = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
