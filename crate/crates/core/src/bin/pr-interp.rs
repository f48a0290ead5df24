use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pr_interp::cli::run(std::env::args_os()))
}
