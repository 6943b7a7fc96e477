use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(chi_kit::run(std::env::args()) as u8)
}
