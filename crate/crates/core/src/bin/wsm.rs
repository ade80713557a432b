use std::collections::BTreeMap;
use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wsm::harness::{fit_rate, read_csv, reuse_demo, run_case, write_csv, Case};

#[derive(Parser)]
#[command(name = "wsm", version, about = "Weakly-enforced slip convergence studies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a refinement study and write one CSV row per level.
    Run {
        #[arg(long)]
        case: Case,
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Elements along x for each level (3D cases use N×N×N/2).
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64,128")]
        counts: Vec<usize>,
        #[arg(long, default_value_t = 0.1)]
        exclusion: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit convergence rates per case and order from a results file.
    Rates {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "l2_local")]
        metric: String,
    },
    /// Solve several random faults on one assembled system.
    ReuseDemo {
        #[arg(long, default_value_t = 32)]
        counts: usize,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value_t = 10)]
        faults: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn run(cli: Cli) -> wsm::Result<()> {
    match cli.cmd {
        Cmd::Run { case, order, counts, exclusion, out } => {
            let reports = run_case(case, order, &counts, exclusion)?;
            write_csv(File::create(&out)?, &reports)?;
            for r in &reports {
                match (&r.failure, &r.norms) {
                    (None, Some(n)) => eprintln!(
                        "case {} p={} counts={:?} l2={:.4e} h1={:.4e} l2_loc={:.4e} h1_loc={:.4e}",
                        r.case, r.p, r.counts, n.l2_global, n.h1_global, n.l2_local, n.h1_local
                    ),
                    (f, _) => eprintln!("case {} p={} counts={:?} failed: {}", r.case, r.p, r.counts, f.as_deref().unwrap_or("?")),
                }
            }
            if let Some(r) = reports.iter().find(|r| r.failure.is_some()) {
                return Err(wsm::WsmError::InvalidRateData(format!(
                    "level {:?} failed: {}",
                    r.counts,
                    r.failure.as_deref().unwrap_or_default()
                )));
            }
        }
        Cmd::Rates { input, metric } => {
            let rows = read_csv(File::open(&input)?, &metric)?;
            let mut groups: BTreeMap<(String, usize), Vec<(f64, f64)>> = BTreeMap::new();
            for (case, p, h, v) in rows {
                groups.entry((case, p)).or_default().push((h, v));
            }
            if groups.is_empty() {
                return Err(wsm::WsmError::InvalidRateData(format!("no values for {metric}")));
            }
            for ((case, p), mut pairs) in groups {
                pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
                let f = fit_rate(&metric, &pairs)?;
                println!("case={case} p={p} metric={metric} slope={:.4} r2={:.5} points={}", f.slope, f.r2, pairs.len());
            }
        }
        Cmd::ReuseDemo { counts, order, faults, seed } => {
            let r = reuse_demo(counts, order, faults, seed)?;
            println!("assembly_ms={:.3}", r.assembly_ms);
            println!("fault,angle,cx,cy,cg_iters,cg_residual,cold_ms,solve_ms,assembly_reused");
            for (i, f) in r.runs.iter().enumerate() {
                println!(
                    "{i},{:.6},{:.6},{:.6},{},{:e},{:.3},{:.3},{}",
                    f.angle, f.center[0], f.center[1], f.cg_iters, f.cg_residual, f.cold_ms, f.solve_ms, f.assembly_reused
                );
            }
            println!("cold_ms={:.3}", r.cold_ms);
            println!("mean_additional_ms={:.3}", r.mean_additional_ms());
            println!("total_ms={:.3}", r.total_ms());
            println!("no_reuse_bound_ms={:.3}", r.naive_bound_ms());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
