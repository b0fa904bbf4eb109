use std::io;
use std::process::ExitCode;

use clap::Parser;
use mapvoice_cli::{run, run_serve, Cli, Command};
use tracing_subscriber::EnvFilter;

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")),
        )
        .with_writer(io::stderr)
        .init();

    let argv: Vec<_> = std::env::args_os().collect();
    if let Ok(Cli {
        command: Command::Serve(args),
    }) = Cli::try_parse_from(&argv)
    {
        let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
        return match runtime.block_on(run_serve(&args)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {}", e.message);
                ExitCode::from(e.code as u8)
            }
        };
    }
    let code = run(argv, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
