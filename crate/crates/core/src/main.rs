use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use relaycap::cli::{exit_code_for, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("relaycap: cannot size thread pool: {e}");
        }
    }
    let (record, code) = match run(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("relaycap: error: {e}");
            return ExitCode::from(exit_code_for(&e) as u8);
        }
    };
    let text = record.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("relaycap: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if code != 0 {
        eprintln!("relaycap: verdict exit code {code}");
    }
    ExitCode::from(code as u8)
}
