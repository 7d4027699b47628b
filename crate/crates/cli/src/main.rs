use std::process::ExitCode;

use clap::Parser;
use gzeta_cli::app::{run, sidecar_path, Cli, EXIT_INTERNAL};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("gzeta: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match &cli.out {
        Some(path) => {
            let meta = serde_json::to_string_pretty(&out.meta).expect("serializable") + "\n";
            if let Err(e) = std::fs::write(path, &out.payload).and_then(|_| std::fs::write(sidecar_path(path), meta)) {
                eprintln!("gzeta: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL as u8);
            }
        }
        None => print!("{}", out.payload),
    }
    ExitCode::from(out.exit as u8)
}
