use std::process::ExitCode;

fn main() -> ExitCode {
    intersectra::cli::run(std::env::args_os())
}
