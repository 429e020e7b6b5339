use std::process::ExitCode;

use grover_reflect_cli::{exit_code, parse_args, run};

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(config) => config,
        Err(e) => {
            let code = if e.use_stderr() { exit_code::CONFIG } else { exit_code::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            println!("{} -> {}", outcome.summary, outcome.path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
