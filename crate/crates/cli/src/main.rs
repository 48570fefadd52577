use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use nestedint_cli::{run, Cli};

fn main() -> ExitCode {
    // argument errors are validation errors, exit 1 rather than clap's 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, io::stdin().lock(), &mut out).and_then(|()| {
        out.flush().map_err(|source| nestedint_cli::CliError::Io {
            what: "writing output".to_owned(),
            source,
        })
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("nestedint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
