use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kjdt_cli::run(std::env::args_os()) as u8)
}
