use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hochschild::cli::run(std::env::args()) as u8)
}
