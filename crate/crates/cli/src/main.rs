use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

/// Run dark-state qubit scenarios from JSON configs.
#[derive(Parser, Debug)]
#[command(name = "cptq", version)]
struct Args {
    /// Scenario config; repeat or pass several for a batch.
    #[arg(long = "config", value_name = "PATH", num_args = 1..)]
    configs: Vec<PathBuf>,
    /// Override a config entry by dotted path, e.g. params.total_rabi=10.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Omit timestamps so summaries are byte-stable.
    #[arg(long)]
    reproducible: bool,
    /// Parallel jobs in batch mode.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print the scenario catalog.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if args.list {
        print!("{}", cptq_cli::catalog::render());
        return ExitCode::SUCCESS;
    }
    if args.configs.is_empty() {
        eprintln!("validation error: no --config given (see --list for scenario kinds)");
        return ExitCode::from(1);
    }
    let batch = args.configs.len() > 1;
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("validation error: --jobs: {e}");
            return ExitCode::from(1);
        }
    };
    let reports: Vec<_> = pool.install(|| {
        args.configs
            .par_iter()
            .map(|c| cptq_cli::execute(c, &args.sets, args.out.as_deref(), args.reproducible, batch))
            .collect()
    });
    let mut code = 0;
    for r in &reports {
        if r.exit_code == 0 {
            println!("ok {}: {}", r.config.display(), r.message);
        } else {
            eprintln!("error {}: {}", r.config.display(), r.message);
        }
        code = code.max(r.exit_code);
    }
    ExitCode::from(code)
}
