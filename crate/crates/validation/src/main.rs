use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cptq_validation::{run_all, run_claim, Battery, Report, CLAIM_IDS};

/// Run the acceptance battery.
#[derive(Parser, Debug)]
#[command(name = "cptq-validate", version)]
struct Args {
    /// Directory of scenario configs.
    #[arg(long, value_name = "DIR")]
    scenarios: Option<PathBuf>,
    /// Where to write report.json and report.txt.
    #[arg(long, value_name = "DIR", default_value = "validation-report")]
    out: PathBuf,
    /// Run only these claim ids.
    #[arg(long = "claim", value_name = "ID")]
    claims: Vec<String>,
    /// Worker threads.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build_global();
    }
    let battery = match args.scenarios {
        Some(dir) => Battery::new(dir),
        None => Battery::shipped(),
    };
    let report = if args.claims.is_empty() {
        run_all(&battery)
    } else {
        let start = std::time::Instant::now();
        let mut claims = Vec::new();
        for id in &args.claims {
            match run_claim(&battery, id) {
                Some(c) => claims.push(c),
                None => {
                    eprintln!("unknown claim {id}; known: {}", CLAIM_IDS.join(", "));
                    return ExitCode::from(1);
                }
            }
        }
        Report { claims, wall_seconds: start.elapsed().as_secs_f64() }
    };
    let table = report.table();
    print!("{table}");
    let written = fs::create_dir_all(&args.out)
        .and_then(|_| fs::write(args.out.join("report.json"), serde_json::to_string_pretty(&report.to_json()).unwrap() + "\n"))
        .and_then(|_| fs::write(args.out.join("report.txt"), &table));
    if let Err(e) = written {
        eprintln!("io error: {}: {e}", args.out.display());
        return ExitCode::from(3);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing claims: {}", report.failing_ids().join(", "));
        ExitCode::from(1)
    }
}
