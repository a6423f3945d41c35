use clap::Parser;
use rnshelix::cli::{run, Cli, EXIT_VALIDATION};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not failures
            std::process::exit(if e.use_stderr() { EXIT_VALIDATION } else { 0 });
        }
    };
    std::process::exit(run(&cli.into_config()));
}
