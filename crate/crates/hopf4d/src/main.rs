use std::process::ExitCode;

fn main() -> ExitCode {
    hopf4d::cli::main_with_args(std::env::args_os())
}
