//! Batch verification harness: suite selection, golden-file management,
//! JSON reporting, and emission of the integral coefficient tables.

mod config;
mod suites;

use clap::{Parser, Subcommand};
use config::{Config, FamilyArg, Suite};
use mircan_core::cancel::{build_extraction_table, BrTable};
use mircan_core::lambda::extract_cr;
use mircan_core::report::Report;
use mircan_core::ring::serialize::poly_to_text;
use num::Zero;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mircan",
    version,
    about = "Exact verification of twisted cancellation identities for characteristic forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify {
        /// Suites to run (default: all).
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value = "8k4")]
        family: FamilyArg,
        /// Half-rank of the auxiliary bundle V.
        #[arg(long, default_value_t = 3)]
        l: u32,
        /// Series order in q^{1/2} units.
        #[arg(long = "q-order", default_value_t = 6)]
        q_order: u32,
        /// Taylor order for univariate identities (default dim/2 + 2).
        #[arg(long = "taylor-order")]
        taylor_order: Option<u32>,
        /// Numeric tolerance for the floating-point checks.
        #[arg(long = "tol", default_value_t = 1e-8)]
        tolerance: f64,
        /// Upper-half-plane samples as a+bi (repeatable).
        #[arg(long = "tau")]
        taus: Vec<String>,
        /// Seed for the randomized ring-law samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory of golden expansion files to compare against.
        #[arg(long = "golden-dir")]
        golden_dir: Option<String>,
        /// Write or refresh golden files instead of failing on differences.
        #[arg(long = "emit-golden", default_value_t = false)]
        emit_golden: bool,
        /// Report path (default: stdout).
        #[arg(long = "out")]
        out: Option<String>,
    },
    /// Emit the integral coefficient tables and twist quotients.
    Tables {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value = "8k4")]
        family: FamilyArg,
        /// Output directory.
        #[arg(long = "out")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            suites,
            k,
            family,
            l,
            q_order,
            taylor_order,
            tolerance,
            taus,
            seed,
            golden_dir,
            emit_golden,
            out,
        } => {
            let dim = match family {
                FamilyArg::EightKPlusFour => 8 * k + 4,
                FamilyArg::EightK => 8 * k,
            };
            let cfg = Config {
                k,
                family,
                l,
                q_order,
                taylor_order: taylor_order.unwrap_or(dim / 2 + 2),
                tolerance,
                tau_samples: if taus.is_empty() {
                    vec!["0.3+1.1i".into(), "-0.2+0.9i".into()]
                } else {
                    taus
                },
                seed,
                suites: if suites.is_empty() {
                    Suite::all()
                } else {
                    let mut s = suites;
                    s.sort();
                    s.dedup();
                    s
                },
                golden_dir,
                emit_golden,
                out_path: out,
            };
            run_verify(cfg)
        }
        Command::Tables { k, family, out } => run_tables(k, family, out),
    }
}

fn run_verify(cfg: Config) -> ExitCode {
    if let Err(e) = cfg.validate() {
        eprintln!("configuration error: {e}");
        return ExitCode::from(2);
    }
    if let Some(dir) = &cfg.golden_dir {
        let p = PathBuf::from(dir);
        if !p.is_dir() && !cfg.emit_golden {
            eprintln!("golden directory {dir} is not readable");
            return ExitCode::from(2);
        }
        if cfg.emit_golden {
            if let Err(e) = std::fs::create_dir_all(&p) {
                eprintln!("cannot create golden directory {dir}: {e}");
                return ExitCode::from(2);
            }
        }
    }

    // suites run concurrently; assembly sorts by id, so the order of
    // completion never shows in the report
    let cfg_ref = &cfg;
    let mut checks = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg_ref
            .suites
            .iter()
            .map(|&suite| scope.spawn(move || suites::run_suite(suite, cfg_ref)))
            .collect();
        let mut all = Vec::new();
        for h in handles {
            all.extend(h.join().expect("suite thread panicked"));
        }
        all
    });
    checks.extend(suites::golden_checks(&cfg));

    let config_echo = serde_json::to_value(&cfg).expect("config serializes");
    let report = Report::new(config_echo, checks);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cfg.out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("cannot write report to {path}: {e}");
                return ExitCode::from(2);
            }
            eprintln!(
                "{} checks, {} passed, {} failed -> {}",
                report.checks.len(),
                report.passed,
                report.failed,
                path
            );
        }
        None => println!("{json}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_tables(k: u32, family: FamilyArg, out: PathBuf) -> ExitCode {
    if family == FamilyArg::EightK && k == 0 {
        eprintln!("configuration error: the 8k family needs k >= 1");
        return ExitCode::from(2);
    }
    if let Err(e) = std::fs::create_dir_all(&out) {
        eprintln!("cannot create {}: {e}", out.display());
        return ExitCode::from(2);
    }
    let fam_tag = match family {
        FamilyArg::EightKPlusFour => "8k4",
        FamilyArg::EightK => "8k",
    };
    let table = match build_extraction_table(k, family.to_family()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("extraction failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let br = BrTable::from_extraction(&table);
    let br_path = out.join(format!("br_k{k}_{fam_tag}.json"));
    let body = serde_json::to_string_pretty(&br).expect("serializable") + "\n";
    if let Err(e) = std::fs::write(&br_path, body) {
        eprintln!("cannot write {}: {e}", br_path.display());
        return ExitCode::from(2);
    }
    // twist quotients need the bundle rank 8k+4 (resp. 8k)
    let n = match family {
        FamilyArg::EightKPlusFour => 8 * k + 4,
        FamilyArg::EightK => 8 * k,
    };
    match extract_cr(&table.z, n, k + 2) {
        Ok((quotients, _)) => {
            let mut text = String::new();
            for (r, q) in quotients.iter().enumerate() {
                text.push_str(&format!("# C_{r}\n"));
                let rational = q.map_coeffs(num::BigRational::zero(), |c| {
                    num::BigRational::from(c.clone())
                });
                text.push_str(&poly_to_text(&rational));
            }
            let cr_path = out.join(format!("cr_k{k}_{fam_tag}.txt"));
            if let Err(e) = std::fs::write(&cr_path, text) {
                eprintln!("cannot write {}: {e}", cr_path.display());
                return ExitCode::from(2);
            }
            eprintln!("wrote {} and {}", br_path.display(), cr_path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("twist quotient extraction failed: {e}");
            ExitCode::FAILURE
        }
    }
}
