use clap::Parser;
use std::io::{IsTerminal, Write};
use synergy_cli::commands::{run, Cli};
use synergy_cli::report::Style;

fn main() {
    let cli = Cli::parse();
    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
        && !cli.json
        && std::io::stdout().is_terminal();
    let code = match run(cli, Style { color }) {
        Ok(output) => {
            for note in &output.stderr {
                eprintln!("{note}");
            }
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.stdout.as_bytes());
            let _ = stdout.flush();
            output.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
