use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(techscale::cli::run())
}
