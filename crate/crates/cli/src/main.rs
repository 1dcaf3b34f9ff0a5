use clap::Parser;

use gradecheck::{emit, run_cli, Caps, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let outcome = run_cli(&cli, caps);
    if outcome.code == 2 {
        eprintln!("gradecheck: input error, see the report");
    }
    std::process::exit(emit(cli.output.as_deref(), &outcome));
}
