use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use condgeo_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
