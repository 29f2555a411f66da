use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tenspec::cli::run())
}
