use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hyperfix::{exit, run, write_outputs, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("hyperfix: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match &cli.out {
        Some(dir) => write_outputs(&output, dir).map(|()| {
            print!("{}", output.summary);
        }),
        None => {
            if let Some(main) = output.files.first() {
                print!("{}", main.contents);
            }
            eprint!("{}", output.summary);
            Ok(())
        }
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::from(output.exit_code() as u8),
        Err(e) => {
            eprintln!("hyperfix: {e}");
            ExitCode::from(exit::IO as u8)
        }
    }
}
