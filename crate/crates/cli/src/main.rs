use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(prom_cli::run(std::env::args_os()))
}
