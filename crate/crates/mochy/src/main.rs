use std::process::ExitCode;

fn main() -> ExitCode {
    mochy::cli::main_with(std::env::args_os())
}
