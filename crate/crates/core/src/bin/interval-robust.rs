use std::io;
use std::process::ExitCode;

use interval_robust::cli::{run, SEED_ENV};

fn main() -> ExitCode {
    let seed_env = std::env::var(SEED_ENV).ok();
    let code = run(
        std::env::args_os(),
        seed_env,
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
