use std::process::ExitCode;

use clap::Parser;
use qcurv_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let pretty = serde_json::to_string_pretty(&out.report).expect("serializable report");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{pretty}\n")) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                println!("{pretty}");
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
