use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use galcov_cli::{render_error, run, Args};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { galcov_cli::error::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&args, &mut out).and_then(|()| out.flush().map_err(Into::into));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprint!("{}", render_error(&e, args.format));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
