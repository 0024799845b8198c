use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(chainmap::cli::run(std::env::args_os()))
}
