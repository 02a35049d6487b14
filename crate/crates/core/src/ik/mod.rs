//! Closed-form inverse kinematics for spherical-wrist robots.
//!
//! The wrist centre decouples the problem: the positioning joints place it
//! (see [`position`] and [`redundant`]) and the residual rotation is split into
//! the three wrist angles (see [`orientation`]).

pub mod chain;
pub mod orientation;
pub mod position;
pub mod redundant;

use crate::ga::E23;
use crate::kinematics::{chain_motor, fk, normalize_angle, wrist_center, JointType, Pose, RobotModel};
use crate::motors::{append_row, plane_rotor, rotor_from_frames};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

pub use position::{JointPattern, PositionBranch};
pub use redundant::RedundancyParameter;

/// Largest full-pose residual of an emitted solution.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Orthonormality tolerance accepted on target rotations.
pub const TARGET_FRAME_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct IkSolution {
    pub q: Vec<f64>,
    /// Largest absolute difference between `fk(q)` and the target, over
    /// position and frame components.
    pub residual: f64,
    pub singular_wrist: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IkSolutionSet {
    /// Solutions sorted lexicographically by joint values.
    pub solutions: Vec<IkSolution>,
    /// Candidates that failed the residual check, when requested.
    pub rejected: Vec<IkSolution>,
}

impl IkSolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Whether a solution lies within `tol` of `q` (revolute joints mod 2π).
    pub fn contains(&self, model: &RobotModel, q: &[f64], tol: f64) -> bool {
        self.solutions.iter().any(|s| config_distance(model, &s.q, q) < tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Value of the redundant joint; required for 7-DoF models.
    pub redundant_value: Option<f64>,
    pub residual_tol: f64,
    /// Keep candidates that fail the residual check in `rejected`.
    pub keep_rejected: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { redundant_value: None, residual_tol: RESIDUAL_TOL, keep_rejected: false }
    }
}

/// Largest per-joint difference, revolute joints compared modulo 2π.
pub fn config_distance(model: &RobotModel, a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(&model.rows)
        .map(|((x, y), r)| match r.joint_type {
            JointType::Revolute => normalize_angle(x - y).abs(),
            JointType::Prismatic => (x - y).abs(),
        })
        .fold(0.0, f64::max)
}

/// Gram-Schmidt on the first two axes, the third from their cross product.
fn orthonormalize(frame: &[Vec3; 3]) -> [Vec3; 3] {
    let x = vec3::normalize(frame[0]);
    let y = vec3::normalize(vec3::reject(frame[1], x));
    [x, y, vec3::cross(x, y)]
}

/// All closed-form solutions reaching `pose`.
pub fn solve(model: &RobotModel, pose: &Pose, opts: &SolveOptions) -> Result<IkSolutionSet> {
    pose.validate(TARGET_FRAME_EPS)?;
    let target = Pose { p: pose.p, frame: orthonormalize(&pose.frame) };
    let pattern = JointPattern::of_model(model)?;
    let pw = wrist_center(model, &target)?;
    let branches = if pattern.is_redundant() {
        let value = opts
            .redundant_value
            .ok_or_else(|| Error::InfeasibleParameter(format!("{pattern} needs a redundant joint value")))?;
        let param = RedundancyParameter::for_pattern(pattern, value)?;
        redundant::solve_redundant(model, &pw, param)?
    } else {
        position::solve_position(model, &pw)?
    };
    assemble_full_solutions(model, &branches, &target, opts)
}

/// Combines each position branch with both wrist branches and keeps the
/// combinations whose forward kinematics reproduce the target.
pub fn assemble_full_solutions(
    model: &RobotModel,
    branches: &[PositionBranch],
    target: &Pose,
    opts: &SolveOptions,
) -> Result<IkSolutionSet> {
    let w = *model.wrist()?;
    let m = w.first;
    let rows = &model.rows;
    let r_target = rotor_from_frames(target.frame[0], target.frame[1], target.frame[2])?;
    let tool = plane_rotor(rows[m + 2].alpha, E23);
    let mut set = IkSolutionSet::default();
    for b in branches {
        let m_pos = chain_motor(&rows[..m], &b.q);
        let r_pos = m_pos.rotation_part();
        let r456 = orientation::residual_rotor(&r_target, &r_pos) * tool.reverse();
        for o in orientation::split_zyz_with(&r456, rows[m].theta) {
            let mut q = b.q.clone();
            q.push(normalize_angle(o.theta4 - rows[m].theta));
            q.push(normalize_angle(w.sign * o.theta5 - rows[m + 1].theta));
            q.push(normalize_angle(o.theta6 - rows[m + 2].theta));
            // Full forward kinematics, sharing the positioning prefix.
            let full = rows[m..].iter().zip(&q[m..]).fold(m_pos, |acc, (row, qi)| append_row(&acc, row, *qi));
            let residual = full.to_pose().residual(target);
            let sol = IkSolution { q, residual, singular_wrist: o.singular };
            let pool = if residual < opts.residual_tol {
                &mut set.solutions
            } else if opts.keep_rejected {
                &mut set.rejected
            } else {
                continue;
            };
            if !pool.iter().any(|s| config_distance(model, &s.q, &sol.q) < 1e-9) {
                pool.push(sol);
            }
        }
    }
    let lex = |a: &IkSolution, b: &IkSolution| {
        a.q.iter().zip(&b.q).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    };
    set.solutions.sort_by(lex);
    set.rejected.sort_by(lex);
    if set.solutions.is_empty() {
        return Err(Error::NoSolution);
    }
    Ok(set)
}

/// Residual of a configuration against a pose.
pub fn pose_residual(model: &RobotModel, q: &[f64], pose: &Pose) -> Result<f64> {
    Ok(fk(model, q)?.residual(pose))
}
