use clap::Parser;
use ringstar_cli::commands::{run, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| Ok((out.render(cli.format)?, out.status))) {
        Ok((text, status)) => {
            println!("{text}");
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
