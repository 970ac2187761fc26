use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let config = invdec_cli::Config::from_env();
    let out = invdec_cli::run_with(std::env::args_os(), &config);
    // A closed pipe is not worth reporting.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
