use clap::Parser;
use cloudqc::cli::{execute, Cli, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match execute(&cli) {
        Ok(lines) => lines.iter().for_each(|l| println!("{l}")),
        Err(f) => {
            eprintln!("error: {f}");
            std::process::exit(f.exit_code());
        }
    }
}
