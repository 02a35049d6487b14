//! JSON wire formats for robot descriptions, poses and solution sets.
//!
//! Angles are radians and lengths metres. Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::kinematics::{DhRow, JointType, Pose, RobotModel, WristOffset};
use crate::{Error, Result};

/// Orthonormality tolerance for rotations read from files.
pub const POSE_INPUT_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointDescription {
    #[serde(rename = "type")]
    pub joint_type: JointType,
    pub a: f64,
    pub alpha: f64,
    pub d: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotDescriptionFile {
    pub name: String,
    pub joints: Vec<JointDescription>,
    pub spherical_wrist: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wrist_offset: Option<WristOffset>,
}

impl RobotDescriptionFile {
    pub fn into_model(self) -> Result<RobotModel> {
        let rows = self
            .joints
            .iter()
            .map(|j| DhRow { joint_type: j.joint_type, a: j.a, alpha: j.alpha, d: j.d, theta: j.theta })
            .collect();
        RobotModel::new(self.name, rows, self.spherical_wrist, self.wrist_offset)
    }

    pub fn from_model(model: &RobotModel) -> Self {
        let joints = model
            .rows
            .iter()
            .map(|r| JointDescription { joint_type: r.joint_type, a: r.a, alpha: r.alpha, d: r.d, theta: r.theta })
            .collect();
        let wrist_offset = model.wrist().ok().map(|w| w.offset);
        Self { name: model.name.clone(), joints, spherical_wrist: model.spherical_wrist, wrist_offset }
    }
}

/// Parses and validates a robot description.
pub fn parse_robot(json: &str) -> Result<RobotModel> {
    let file: RobotDescriptionFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidModel(e.to_string()))?;
    file.into_model()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseFile {
    pub position: [f64; 3],
    /// Row-major rotation matrix.
    pub rotation: [f64; 9],
}

impl PoseFile {
    pub fn from_pose(pose: &Pose) -> Self {
        Self { position: pose.p, rotation: pose.rotation_row_major() }
    }

    pub fn to_pose(&self) -> Result<Pose> {
        let pose = Pose::from_row_major(self.position, self.rotation);
        pose.validate(POSE_INPUT_EPS)?;
        Ok(pose)
    }
}

pub fn parse_pose(json: &str) -> Result<Pose> {
    let file: PoseFile = serde_json::from_str(json).map_err(|e| Error::InvalidPose(e.to_string()))?;
    file.to_pose()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    pub q: Vec<f64>,
    pub residual: f64,
    pub singular_wrist: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub branches: Vec<BranchRecord>,
    pub count: usize,
    /// Candidates that failed the residual check, only written on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejected: Option<Vec<BranchRecord>>,
}
