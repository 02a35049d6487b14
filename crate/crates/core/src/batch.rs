//! Seeded round-trip verification and latency benchmarks over many samples.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ik::{self, config_distance, redundant::redundant_joint, JointPattern, SolveOptions};
use crate::kinematics::{fk, JointType, Pose, RobotModel};
use crate::oracle;
use crate::Result;

/// Tolerance for matching a recovered configuration against its seed.
pub const SEED_MATCH_TOL: f64 = 1e-6;
/// Size of the start perturbation given to the numerical solver.
pub const DLS_PERTURBATION: f64 = 0.2;

/// Revolute values uniform in (−π, π], prismatic values uniform in [0.05, 1].
pub fn random_configuration(model: &RobotModel, rng: &mut ChaCha8Rng) -> Vec<f64> {
    model
        .rows
        .iter()
        .map(|r| match r.joint_type {
            JointType::Revolute => PI - rng.gen::<f64>() * 2.0 * PI,
            JointType::Prismatic => rng.gen_range(0.05..=1.0),
        })
        .collect()
}

pub fn sample_configurations(model: &RobotModel, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_configuration(model, &mut rng)).collect()
}

/// `q` plus a random offset of Euclidean length `size`.
pub fn perturb(q: &[f64], size: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let dir: Vec<f64> = q.iter().map(|_| rng.gen::<f64>() - 0.5).collect();
    let n = dir.iter().map(|d| d * d).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    q.iter().zip(&dir).map(|(v, d)| v + size * d / n).collect()
}

/// Solver options for a model, passing the seed's redundant joint value.
pub fn options_for(model: &RobotModel, seed_q: &[f64]) -> Result<SolveOptions> {
    let pattern = JointPattern::of_model(model)?;
    let redundant_value = if pattern.is_redundant() { Some(seed_q[redundant_joint(pattern)?]) } else { None };
    Ok(SolveOptions { redundant_value, ..SolveOptions::default() })
}

/// Runs `f` over `items` on `threads` workers, keeping input order.
pub fn parallel_map<T: Sync, U: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let threads = threads.max(1).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyFailure {
    pub q: Vec<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub samples: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    /// Largest residual over every emitted solution.
    pub max_residual: f64,
    pub max_branches: usize,
    pub failures: Vec<VerifyFailure>,
}

enum Outcome {
    Pass { residual: f64, branches: usize },
    Fail { residual: f64, branches: usize, reason: String },
}

fn verify_one(model: &RobotModel, q: &[f64]) -> Outcome {
    let run = || -> Result<Outcome> {
        let pose = fk(model, q)?;
        let set = ik::solve(model, &pose, &options_for(model, q)?)?;
        let residual = set.solutions.iter().map(|s| s.residual).fold(0.0, f64::max);
        let branches = set.len();
        let fail = |reason: String| Outcome::Fail { residual, branches, reason };
        if residual >= ik::RESIDUAL_TOL {
            return Ok(fail(format!("residual {residual:e}")));
        }
        if branches > 8 {
            return Ok(fail(format!("{branches} branches")));
        }
        if !set.contains(model, q, SEED_MATCH_TOL) {
            let best = set.solutions.iter().map(|s| config_distance(model, &s.q, q)).fold(f64::INFINITY, f64::min);
            return Ok(fail(format!("seed not recovered, nearest branch {best:e}")));
        }
        Ok(Outcome::Pass { residual, branches })
    };
    run().unwrap_or_else(|e| Outcome::Fail { residual: 0.0, branches: 0, reason: e.to_string() })
}

/// Round trip `fk → solve` on seeded random configurations.
pub fn verify(model: &RobotModel, samples: usize, seed: u64, threads: usize) -> VerifyReport {
    let qs = sample_configurations(model, samples, seed);
    let outcomes = parallel_map(&qs, threads, |q| verify_one(model, q));
    let mut report = VerifyReport {
        model: model.name.clone(),
        samples,
        seed,
        passed: 0,
        failed: 0,
        max_residual: 0.0,
        max_branches: 0,
        failures: Vec::new(),
    };
    for (q, o) in qs.iter().zip(outcomes) {
        match o {
            Outcome::Pass { residual, branches } => {
                report.passed += 1;
                report.max_residual = report.max_residual.max(residual);
                report.max_branches = report.max_branches.max(branches);
            }
            Outcome::Fail { residual, branches, reason } => {
                report.failed += 1;
                report.max_residual = report.max_residual.max(residual);
                report.max_branches = report.max_branches.max(branches);
                report.failures.push(VerifyFailure { q: q.clone(), reason });
            }
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatencyStats {
    pub median_us: f64,
    pub p99_us: f64,
}

impl LatencyStats {
    fn of(mut ns: Vec<f64>) -> Self {
        if ns.is_empty() {
            return Self { median_us: f64::NAN, p99_us: f64::NAN };
        }
        ns.sort_by(f64::total_cmp);
        let at = |f: f64| ns[((ns.len() - 1) as f64 * f).round() as usize] / 1e3;
        Self { median_us: at(0.5), p99_us: at(0.99) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub model: String,
    pub samples: usize,
    pub seed: u64,
    pub closed_form_solved: usize,
    pub dls_converged: usize,
    /// Wall-clock timing, not reproducible between runs.
    pub timing: BenchTiming,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchTiming {
    pub closed_form: LatencyStats,
    pub dls: LatencyStats,
    /// DLS median over closed-form median.
    pub speedup: f64,
}

/// Times the closed-form solver against the DLS oracle started from a
/// perturbed seed. Runs on one thread so latencies are comparable.
pub fn bench(model: &RobotModel, samples: usize, seed: u64) -> Result<BenchReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cf = Vec::with_capacity(samples);
    let mut dls = Vec::with_capacity(samples);
    let (mut solved, mut converged) = (0, 0);
    for _ in 0..samples {
        let q = random_configuration(model, &mut rng);
        let start = perturb(&q, DLS_PERTURBATION, &mut rng);
        let pose: Pose = fk(model, &q)?;
        let opts = options_for(model, &q)?;

        let t = Instant::now();
        let ok = ik::solve(model, &pose, &opts).is_ok();
        cf.push(t.elapsed().as_nanos() as f64);
        solved += ok as usize;

        let t = Instant::now();
        let ok = oracle::dls_ik(model, &pose, &start, ik::RESIDUAL_TOL, 100).is_ok();
        dls.push(t.elapsed().as_nanos() as f64);
        converged += ok as usize;
    }
    let closed_form = LatencyStats::of(cf);
    let dls = LatencyStats::of(dls);
    Ok(BenchReport {
        model: model.name.clone(),
        samples,
        seed,
        closed_form_solved: solved,
        dls_converged: converged,
        timing: BenchTiming { closed_form, dls, speedup: dls.median_us / closed_form.median_us },
    })
}
