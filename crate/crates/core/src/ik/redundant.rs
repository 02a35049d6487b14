//! Position problem of 7-DoF chains with one parameterized joint.
//!
//! Fixing the redundant joint turns the four positioning joints into a
//! three-joint chain: PPPP and PPRP into PPP, RRPR and RRRR into RRR.

use crate::conformal::NullPoint;
use crate::ik::chain::Chain;
use crate::ik::position::{solve_chain, JointPattern, PositionBranch, PRISMATIC_TOL};
use crate::kinematics::{JointType, RobotModel};
use crate::{Error, Result};

/// Value of the redundant joint. `joint_index` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundancyParameter {
    pub joint_index: usize,
    pub value: f64,
}

impl RedundancyParameter {
    /// Parameter for the designated redundant joint of a pattern.
    pub fn for_pattern(pattern: JointPattern, value: f64) -> Result<Self> {
        Ok(Self { joint_index: redundant_joint(pattern)?, value })
    }
}

/// `d1` for PPPP, the third joint for PPRP, RRPR and RRRR.
pub fn redundant_joint(pattern: JointPattern) -> Result<usize> {
    match pattern {
        JointPattern::Pppp => Ok(0),
        JointPattern::Pprp | JointPattern::Rrpr | JointPattern::Rrrr => Ok(2),
        other => Err(Error::UnsupportedPattern(format!("{other} has no redundant joint"))),
    }
}

/// Side opposite `α3` in the triangle with sides `d2` and `d3`.
pub fn cosine_law_side(d2: f64, d3: f64, alpha3: f64) -> f64 {
    (d2 * d2 + d3 * d3 - 2.0 * d2 * d3 * alpha3.cos()).max(0.0).sqrt()
}

/// Solves the four positioning joints with the redundant one fixed.
pub fn solve_redundant(model: &RobotModel, pw: &NullPoint, param: RedundancyParameter) -> Result<Vec<PositionBranch>> {
    let pattern = JointPattern::of_model(model)?;
    let k = redundant_joint(pattern)?;
    if param.joint_index != k {
        return Err(Error::InfeasibleParameter(format!(
            "{pattern} is parameterized by joint {}, not joint {}",
            k + 1,
            param.joint_index + 1
        )));
    }
    if !param.value.is_finite() {
        return Err(Error::InfeasibleParameter("non-finite value".into()));
    }
    let chain = Chain::from_model(model)?;
    if chain.axes[k].joint_type == JointType::Prismatic && param.value < -PRISMATIC_TOL {
        return Err(Error::InfeasibleParameter(format!("negative prismatic value {}", param.value)));
    }
    let reduced = chain.fold(k, param.value)?;
    let branches = solve_chain(&reduced, pw.position()).map_err(|e| match e {
        Error::UnreachableTarget | Error::NoSolution => Error::InfeasibleParameter(format!(
            "target out of reach with joint {} at {}",
            k + 1,
            param.value
        )),
        other => other,
    })?;
    Ok(branches
        .into_iter()
        .map(|mut b| {
            b.q.insert(k, param.value);
            b
        })
        .collect())
}

fn solve_as(model: &RobotModel, pw: &NullPoint, value: f64, want: JointPattern) -> Result<Vec<PositionBranch>> {
    let got = JointPattern::of_model(model)?;
    if got != want {
        return Err(Error::UnsupportedPattern(format!("model is {got}, solver expects {want}")));
    }
    solve_redundant(model, pw, RedundancyParameter::for_pattern(want, value)?)
}

pub fn solve_pppp(model: &RobotModel, pw: &NullPoint, d1: f64) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, d1, JointPattern::Pppp)
}

pub fn solve_pprp(model: &RobotModel, pw: &NullPoint, theta3: f64) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, theta3, JointPattern::Pprp)
}

pub fn solve_rrpr(model: &RobotModel, pw: &NullPoint, d3: f64) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, d3, JointPattern::Rrpr)
}

pub fn solve_rrrr(model: &RobotModel, pw: &NullPoint, theta3: f64) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, theta3, JointPattern::Rrrr)
}
