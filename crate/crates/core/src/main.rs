use std::process::ExitCode;

fn main() -> ExitCode {
    twin_cavity::cli::run_from(std::env::args_os())
}
