use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use cgakin::batch;
use cgakin::ik::{JointPattern, SolveOptions};
use cgakin::io::{self, BranchRecord, PoseFile, SolutionFile};
use cgakin::{fk, solve, Error, RobotModel};

/// Worker thread count for `verify`.
const THREADS_ENV: &str = "CGAKIN_THREADS";
/// Seed used by `bench`, which takes no seed flag.
const BENCH_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "cgakin", version, about = "Rotor forward kinematics and closed-form inverse kinematics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the end-effector pose for a joint configuration.
    Fk {
        robot: PathBuf,
        #[arg(allow_negative_numbers = true, required = true)]
        q: Vec<f64>,
    },
    /// Print every closed-form solution for a target pose.
    Solve {
        robot: PathBuf,
        pose: PathBuf,
        /// Value of the redundant joint, required for 7-DoF models.
        #[arg(long, allow_negative_numbers = true)]
        redundant_value: Option<f64>,
        /// Also list candidates that failed the residual check.
        #[arg(long)]
        all: bool,
    },
    /// Round-trip fk and solve on seeded random configurations.
    Verify {
        robot: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Compare closed-form and numerical solve latency.
    Bench {
        robot: PathBuf,
        #[arg(long)]
        samples: usize,
    },
}

/// Exit statuses.
mod status {
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const UNREACHABLE: u8 = 4;
    pub const CONTRACT: u8 = 5;
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidModel(_) | Error::InvalidPose(_) | Error::ConfigurationLength { .. } => status::PARSE,
            Error::NoSphericalWrist | Error::UnsupportedPattern(_) | Error::ParallelAxes(_) => status::UNSUPPORTED,
            Error::UnreachableTarget | Error::InfeasibleParameter(_) | Error::ImaginaryPair => status::UNREACHABLE,
            Error::NoSolution => status::CONTRACT,
            _ => status::OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { code: status::PARSE, message: format!("{}: {e}", path.display()) })
}

fn load_robot(path: &Path) -> Result<RobotModel, Failure> {
    Ok(io::parse_robot(&read(path)?)?)
}

fn threads() -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.parse::<usize>().ok().filter(|n| *n > 0).ok_or(Failure {
            code: status::PARSE,
            message: format!("{THREADS_ENV} must be a positive integer, got {v:?}"),
        }),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn record(s: &cgakin::IkSolution) -> BranchRecord {
    BranchRecord { q: s.q.clone(), residual: s.residual, singular_wrist: s.singular_wrist }
}

/// Output document and whether every residual contract held.
fn run(command: Command) -> Result<(Value, bool), Failure> {
    match command {
        Command::Fk { robot, q } => {
            let model = load_robot(&robot)?;
            let pose = fk(&model, &q)?;
            Ok((serde_json::to_value(PoseFile::from_pose(&pose)).expect("serialisable"), true))
        }
        Command::Solve { robot, pose, redundant_value, all } => {
            let model = load_robot(&robot)?;
            let target = io::parse_pose(&read(&pose)?)?;
            if JointPattern::of_model(&model)?.is_redundant() && redundant_value.is_none() {
                return Err(Failure {
                    code: status::PARSE,
                    message: format!("{} is redundant, pass --redundant-value", model.name),
                });
            }
            let opts = SolveOptions { redundant_value, keep_rejected: all, ..SolveOptions::default() };
            let set = solve(&model, &target, &opts)?;
            let file = SolutionFile {
                branches: set.solutions.iter().map(record).collect(),
                count: set.len(),
                rejected: all.then(|| set.rejected.iter().map(record).collect()),
            };
            Ok((serde_json::to_value(&file).expect("serialisable"), true))
        }
        Command::Verify { robot, samples, seed } => {
            let model = load_robot(&robot)?;
            JointPattern::of_model(&model)?;
            let report = batch::verify(&model, samples, seed, threads()?);
            let ok = report.failed == 0;
            Ok((serde_json::to_value(&report).expect("serialisable"), ok))
        }
        Command::Bench { robot, samples } => {
            let model = load_robot(&robot)?;
            JointPattern::of_model(&model)?;
            let report = batch::bench(&model, samples, BENCH_SEED)?;
            Ok((serde_json::to_value(&report).expect("serialisable"), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((doc, ok)) => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("values serialise"));
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: residual contract violated");
                ExitCode::from(status::CONTRACT)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
