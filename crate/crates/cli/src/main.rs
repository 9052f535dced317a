use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(matroidal_cli::dispatch(std::env::args_os()))
}
