use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = qent_cli::execute(std::env::args());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.rendered.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
