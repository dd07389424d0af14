use std::io::Write;
use std::process::ExitCode;

use soliton_polytope::cli;

fn main() -> ExitCode {
    let mut err = std::io::stderr().lock();
    if let Err(e) = cli::configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return ExitCode::from(2);
    }
    let code = cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut err);
    ExitCode::from(code as u8)
}
