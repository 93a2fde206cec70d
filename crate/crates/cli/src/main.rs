use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gvtoric_cli::run(std::env::args_os()))
}
