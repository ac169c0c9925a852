use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(goldfish_cli::run(std::env::args().collect()))
}
