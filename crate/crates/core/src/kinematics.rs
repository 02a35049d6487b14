//! Robot models from Denavit-Hartenberg tables and rotor forward kinematics.
//!
//! Rows use the standard (distal) convention: frame `i` is obtained from
//! frame `i−1` by `Rz(θ_i) Tz(d_i) Tx(a_i) Rx(α_i)`. As motors this is
//! `M_θi M_αi` with `M_θ = T(d z) R(θ, x∧y)` and `M_α = T(a x) R(α, y∧z)`, and
//! the end-effector motor is the product of all rows in chain order.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::conformal::{self, NullPoint};
use crate::motors::{self, Rotor};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Tolerance on the D-H constants that define a spherical wrist.
pub const WRIST_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointType {
    Revolute,
    Prismatic,
}

impl JointType {
    pub fn letter(self) -> char {
        match self {
            JointType::Revolute => 'R',
            JointType::Prismatic => 'P',
        }
    }
}

/// One row of a D-H table. `d` and `theta` are the constant parts; the joint
/// variable adds to `theta` for revolute joints and to `d` for prismatic ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhRow {
    pub joint_type: JointType,
    pub a: f64,
    pub alpha: f64,
    pub d: f64,
    pub theta: f64,
}

impl DhRow {
    pub fn revolute(a: f64, alpha: f64, d: f64, theta: f64) -> Self {
        Self { joint_type: JointType::Revolute, a, alpha, d, theta }
    }

    pub fn prismatic(a: f64, alpha: f64, d: f64, theta: f64) -> Self {
        Self { joint_type: JointType::Prismatic, a, alpha, d, theta }
    }

    pub fn theta_at(&self, q: f64) -> f64 {
        match self.joint_type {
            JointType::Revolute => self.theta + q,
            JointType::Prismatic => self.theta,
        }
    }

    pub fn d_at(&self, q: f64) -> f64 {
        match self.joint_type {
            JointType::Revolute => self.d,
            JointType::Prismatic => self.d + q,
        }
    }

    fn is_finite(&self) -> bool {
        [self.a, self.alpha, self.d, self.theta].iter().all(|v| v.is_finite())
    }
}

/// Fixed offsets around the wrist: `d6` from the wrist centre to the flange
/// along the approach axis and `a4` from frame 3 to the wrist centre along z3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WristOffset {
    pub d6: f64,
    pub a4: f64,
}

/// Spherical wrist geometry derived from the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WristGeometry {
    /// Index of the first wrist row (0-based).
    pub first: usize,
    /// `α` of the first wrist row is `sign · π/2`.
    pub sign: f64,
    pub offset: WristOffset,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobotModel {
    pub name: String,
    pub rows: Vec<DhRow>,
    pub spherical_wrist: bool,
    wrist: Option<WristGeometry>,
}

impl RobotModel {
    /// Validates the table. With `spherical_wrist` set the last three rows
    /// must describe intersecting revolute axes, and a given `wrist_offset`
    /// must agree with the table.
    pub fn new(
        name: impl Into<String>,
        rows: Vec<DhRow>,
        spherical_wrist: bool,
        wrist_offset: Option<WristOffset>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidModel("no joints".into()));
        }
        if let Some(i) = rows.iter().position(|r| !r.is_finite()) {
            return Err(Error::InvalidModel(format!("joint {} has a non-finite parameter", i + 1)));
        }
        let wrist = if spherical_wrist {
            let g = wrist_geometry(&rows)?;
            if let Some(o) = wrist_offset {
                let close = |x: f64, y: f64| (x - y).abs() <= WRIST_EPS * (1.0 + y.abs());
                if !close(o.d6, g.offset.d6) || !close(o.a4, g.offset.a4) {
                    return Err(Error::InvalidModel(format!(
                        "wrist_offset {{d6: {}, a4: {}}} disagrees with the table {{d6: {}, a4: {}}}",
                        o.d6, o.a4, g.offset.d6, g.offset.a4
                    )));
                }
            }
            Some(g)
        } else {
            if wrist_offset.is_some() {
                return Err(Error::InvalidModel("wrist_offset given without spherical_wrist".into()));
            }
            None
        };
        Ok(Self { name: name.into(), rows, spherical_wrist, wrist })
    }

    pub fn dof(&self) -> usize {
        self.rows.len()
    }

    pub fn wrist(&self) -> Result<&WristGeometry> {
        self.wrist.as_ref().ok_or(Error::NoSphericalWrist)
    }

    /// Joint letters of the positioning joints, e.g. `"RRR"` or `"RRPR"`.
    pub fn pattern(&self) -> String {
        let n = self.wrist.map_or(self.rows.len(), |w| w.first);
        self.rows[..n].iter().map(|r| r.joint_type.letter()).collect()
    }

    pub fn check_len(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.rows.len() {
            return Err(Error::ConfigurationLength { expected: self.rows.len(), got: q.len() });
        }
        Ok(())
    }
}

fn wrist_geometry(rows: &[DhRow]) -> Result<WristGeometry> {
    let n = rows.len();
    if n < 3 {
        return Err(Error::NoSphericalWrist);
    }
    let w = n - 3;
    let (r4, r5, r6) = (&rows[w], &rows[w + 1], &rows[w + 2]);
    let all_revolute = [r4, r5, r6].iter().all(|r| r.joint_type == JointType::Revolute);
    let zero = |x: f64| x.abs() <= WRIST_EPS;
    let sign = if (r4.alpha - FRAC_PI_2).abs() <= WRIST_EPS {
        1.0
    } else if (r4.alpha + FRAC_PI_2).abs() <= WRIST_EPS {
        -1.0
    } else {
        return Err(Error::NoSphericalWrist);
    };
    let ok = all_revolute
        && zero(r4.a)
        && zero(r5.a)
        && zero(r5.d)
        && (r5.alpha + sign * FRAC_PI_2).abs() <= WRIST_EPS
        && zero(r6.a);
    if !ok {
        return Err(Error::NoSphericalWrist);
    }
    Ok(WristGeometry { first: w, sign, offset: WristOffset { d6: r6.d, a4: r4.d } })
}

/// End-effector pose: position and the images of the base axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub p: Vec3,
    /// `frame[i]` is the i-th axis (a column of the rotation matrix).
    pub frame: [Vec3; 3],
}

impl Pose {
    pub fn identity() -> Self {
        Self { p: [0.0; 3], frame: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    /// Builds a pose from a row-major rotation matrix.
    pub fn from_row_major(p: Vec3, r: [f64; 9]) -> Self {
        let col = |j: usize| [r[j], r[3 + j], r[6 + j]];
        Self { p, frame: [col(0), col(1), col(2)] }
    }

    pub fn rotation_row_major(&self) -> [f64; 9] {
        let f = &self.frame;
        [
            f[0][0], f[1][0], f[2][0], //
            f[0][1], f[1][1], f[2][1], //
            f[0][2], f[1][2], f[2][2],
        ]
    }

    pub fn validate(&self, eps: f64) -> Result<()> {
        if !self.p.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidPose("non-finite position".into()));
        }
        motors::validate_frame(&self.frame, eps).map_err(|e| Error::InvalidPose(e.to_string()))
    }

    /// Largest absolute difference over position and frame components.
    pub fn residual(&self, other: &Pose) -> f64 {
        let mut r = vec3::max_abs_diff(self.p, other.p);
        for i in 0..3 {
            r = r.max(vec3::max_abs_diff(self.frame[i], other.frame[i]));
        }
        r
    }
}

/// Joint values with revolute entries normalized to (−π, π].
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub q: Vec<f64>,
}

impl Configuration {
    pub fn new(model: &RobotModel, q: Vec<f64>) -> Result<Self> {
        model.check_len(&q)?;
        let q = q
            .iter()
            .zip(&model.rows)
            .map(|(v, r)| match r.joint_type {
                JointType::Revolute => normalize_angle(*v),
                JointType::Prismatic => *v,
            })
            .collect();
        Ok(Self { q })
    }
}

/// Wraps an angle into (−π, π].
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Product of all D-H motors.
pub fn fk_motor(model: &RobotModel, q: &[f64]) -> Result<Rotor> {
    model.check_len(q)?;
    Ok(chain_motor(&model.rows, q))
}

pub(crate) fn chain_motor(rows: &[DhRow], q: &[f64]) -> Rotor {
    rows.iter().zip(q).fold(Rotor::identity(), |m, (row, qi)| motors::append_row(&m, row, *qi))
}

/// Forward kinematics `X′ = M X M̃` with `M = Π M_θi M_αi`.
pub fn fk(model: &RobotModel, q: &[f64]) -> Result<Pose> {
    Ok(fk_motor(model, q)?.to_pose())
}

/// Origin and axes of a joint frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointFrame {
    pub origin: NullPoint,
    pub axes: [Vec3; 3],
}

/// Frames `0..=n`: the base frame followed by the frame after each row.
pub fn joint_frames(model: &RobotModel, q: &[f64]) -> Result<Vec<JointFrame>> {
    model.check_len(q)?;
    let mut m = Rotor::identity();
    let mut out = Vec::with_capacity(q.len() + 1);
    let frame = |m: &Rotor| JointFrame { origin: conformal::embed(m.translation()), axes: m.frame() };
    out.push(frame(&m));
    for (row, qi) in model.rows.iter().zip(q) {
        m = motors::append_row(&m, row, *qi);
        out.push(frame(&m));
    }
    Ok(out)
}

/// Wrist centre `p_w = p − d6 z5`, where `z5` is the last joint axis
/// recovered from the flange frame through `α_n`.
pub fn wrist_center(model: &RobotModel, pose: &Pose) -> Result<NullPoint> {
    Ok(conformal::embed(wrist_center_position(model, pose)?))
}

pub(crate) fn wrist_center_position(model: &RobotModel, pose: &Pose) -> Result<Vec3> {
    let w = model.wrist()?;
    let last = model.rows[model.dof() - 1];
    let (s, c) = last.alpha.sin_cos();
    let approach = vec3::add(vec3::scale(pose.frame[1], s), vec3::scale(pose.frame[2], c));
    Ok(vec3::sub(pose.p, vec3::scale(approach, w.offset.d6)))
}
