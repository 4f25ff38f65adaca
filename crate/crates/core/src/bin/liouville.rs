use std::process::ExitCode;

fn main() -> ExitCode {
    liouville_core::cli::run_from(std::env::args_os())
}
