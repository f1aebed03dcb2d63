//! `ktr` command line: exact, brute-force, and Monte Carlo reliability of
//! PCA/CHD instances, the bipartite edge-cover reduction, and an instance
//! generator.
//!
//! Exit codes: 0 success, 1 failed check or I/O trouble, 2 parse error,
//! 3 validation error, 4 unsupported operation, 5 enumeration guard.

use clap::{Parser, Subcommand};
use ktr_core::error::Error;
use ktr_core::exact::ktr_exact_report;
use ktr_core::fmt::{
    emit_instance, emit_reduction, parse_instance, parse_instance_lenient, ParsedInput,
};
use ktr_core::gen::generate_instance;
use ktr_core::hardness::{build_circle_rep, count_edge_covers, verify_identity, BipartiteGraph};
use ktr_core::model::ReliabilityInstance;
use ktr_core::oracle::{ktr_brute, ktr_monte_carlo, MC_PRNG};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ktr", version, about = "K-terminal reliability of circular-arc and circle intersection models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact reliability of a proper circular-arc instance (PCA input)
    Exact {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also report the inner-loop step counter
        #[arg(long)]
        stats: bool,
        /// Zero out nonzero failure probabilities on targets instead of rejecting
        #[arg(long)]
        zero_target_q: bool,
    },
    /// Exhaustive reliability over all failure subsets (PCA or CHD input)
    Brute {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        zero_target_q: bool,
    },
    /// Seeded Monte Carlo estimate (PCA or CHD input)
    Mc {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        zero_target_q: bool,
    },
    /// Compile a bipartite graph (BIP input) into its circle representation
    Reduce {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count edge covers of a bipartite graph (BIP input)
    Covers {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify the edge-cover identity on a bipartite graph (BIP input)
    VerifyReduction {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random proper circular-arc instance
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Upper bound on per-arc reach
        #[arg(long, default_value_t = 3)]
        reach: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the exact solver and the brute-force oracle and compare
    Verify {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        zero_target_q: bool,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 2,
        Error::Validation(_) => 3,
        Error::Unsupported(_) => 4,
        Error::TooLarge(_) | Error::Generation(_) => 5,
        Error::Construction(_) => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn fmt_prob(v: f64) -> String {
    format!("{v:.12}")
}

fn parse_reliability(
    path: &Option<PathBuf>,
    coerce_targets: bool,
) -> Result<ReliabilityInstance, Failure> {
    let text = read_input(path)?;
    let parsed = if coerce_targets {
        let (parsed, coerced) = parse_instance_lenient(&text)?;
        if coerced > 0 {
            eprintln!("warning: zeroed failure probability on {coerced} target(s)");
        }
        parsed
    } else {
        parse_instance(&text)?
    };
    match parsed {
        ParsedInput::Instance(inst) => Ok(inst),
        ParsedInput::Bipartite(_) => Err(Failure {
            code: 4,
            message: "this subcommand needs a PCA or CHD instance, not a BIP graph".into(),
        }),
    }
}

fn parse_bipartite(path: &Option<PathBuf>) -> Result<BipartiteGraph, Failure> {
    let text = read_input(path)?;
    match parse_instance(&text)? {
        ParsedInput::Bipartite(b) => Ok(b),
        ParsedInput::Instance(_) => Err(Failure {
            code: 4,
            message: "this subcommand needs a BIP graph, not a reliability instance".into(),
        }),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Exact {
            input,
            output,
            stats,
            zero_target_q,
        } => {
            let inst = parse_reliability(&input, zero_target_q)?;
            let report = ktr_exact_report(&inst)?;
            let mut out = format!("KTR {}\n", fmt_prob(report.value));
            if stats {
                out.push_str(&format!("STEPS {}\n", report.steps));
            }
            write_output(&output, &out)
        }
        Command::Brute {
            input,
            output,
            zero_target_q,
        } => {
            let inst = parse_reliability(&input, zero_target_q)?;
            let value = ktr_brute(&inst)?;
            write_output(&output, &format!("KTR {}\n", fmt_prob(value)))
        }
        Command::Mc {
            input,
            output,
            samples,
            seed,
            zero_target_q,
        } => {
            let inst = parse_reliability(&input, zero_target_q)?;
            let est = ktr_monte_carlo(&inst, samples, seed)?;
            let out = format!(
                "# prng {MC_PRNG}\nMC {} {} {} {}\n",
                fmt_prob(est.estimate),
                fmt_prob(est.std_error),
                est.samples,
                est.seed
            );
            write_output(&output, &out)
        }
        Command::Reduce { input, output } => {
            let b = parse_bipartite(&input)?;
            let red = build_circle_rep(&b)?;
            write_output(&output, &emit_reduction(&red))
        }
        Command::Covers { input, output } => {
            let b = parse_bipartite(&input)?;
            let count = count_edge_covers(&b)?;
            write_output(&output, &format!("COUNT {count}\n"))
        }
        Command::VerifyReduction { input, output } => {
            let b = parse_bipartite(&input)?;
            let report = verify_identity(&b)?;
            let out = format!(
                "COVERS {}\nSUCCESS {}\nKTR {}\nIDENTITY {}\n",
                report.edge_covers,
                report.success_sets,
                fmt_prob(report.reliability),
                if report.pass { "PASS" } else { "FAIL" }
            );
            write_output(&output, &out)?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: "reduction identity check failed".into(),
                })
            }
        }
        Command::Gen {
            n,
            k,
            reach,
            seed,
            output,
        } => {
            let inst = generate_instance(n, k, reach, seed)?;
            write_output(&output, &emit_instance(&inst))
        }
        Command::Verify {
            input,
            output,
            zero_target_q,
        } => {
            let inst = parse_reliability(&input, zero_target_q)?;
            let exact = ktr_exact_report(&inst)?.value;
            let brute = ktr_brute(&inst)?;
            let diff = (exact - brute).abs();
            let pass = diff <= 1e-9;
            let out = format!(
                "VERIFY {} {} {diff:.3e} {}\n",
                fmt_prob(exact),
                fmt_prob(brute),
                if pass { "PASS" } else { "FAIL" }
            );
            write_output(&output, &out)?;
            if pass {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: "exact and brute-force values disagree".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
