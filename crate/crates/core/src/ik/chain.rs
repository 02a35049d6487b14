//! Positioning joints as screw axes at the zero configuration.
//!
//! The wrist centre at `q` is `E1(q1) ⋯ Em(qm) p0`, where `E_i` rotates about
//! or slides along axis `i` as it sits when every joint value is zero, and
//! `p0` is the wrist centre there. Fixing a joint folds it into the axes that
//! follow it, which is how the 7-DoF chains reduce to three joints.

use crate::kinematics::{JointType, RobotModel};
use crate::motors::Rotor;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub joint_type: JointType,
    /// A point on the axis.
    pub point: Vec3,
    /// Unit direction.
    pub dir: Vec3,
}

impl Axis {
    /// Rigid motion of this joint by `q`, applied to a point.
    pub fn move_point(&self, q: f64, x: Vec3) -> Vec3 {
        match self.joint_type {
            JointType::Prismatic => vec3::add(x, vec3::scale(self.dir, q)),
            JointType::Revolute => vec3::add(self.point, rotate(self.dir, q, vec3::sub(x, self.point))),
        }
    }

    /// Rotational part of the motion, applied to a direction.
    pub fn move_dir(&self, q: f64, v: Vec3) -> Vec3 {
        match self.joint_type {
            JointType::Prismatic => v,
            JointType::Revolute => rotate(self.dir, q, v),
        }
    }

    /// Foot of the perpendicular from `x` onto the axis.
    pub fn foot(&self, x: Vec3) -> Vec3 {
        vec3::add(self.point, vec3::scale(self.dir, vec3::dot(vec3::sub(x, self.point), self.dir)))
    }

    /// Distance from `x` to the axis line.
    pub fn radius(&self, x: Vec3) -> f64 {
        vec3::norm(vec3::reject(vec3::sub(x, self.point), self.dir))
    }
}

/// Rodrigues rotation of `v` by `q` about the unit `axis`.
pub fn rotate(axis: Vec3, q: f64, v: Vec3) -> Vec3 {
    let (s, c) = q.sin_cos();
    let k = vec3::dot(axis, v) * (1.0 - c);
    vec3::add(vec3::add(vec3::scale(v, c), vec3::scale(vec3::cross(axis, v), s)), vec3::scale(axis, k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub axes: Vec<Axis>,
    /// Wrist centre at the zero configuration.
    pub p0: Vec3,
}

impl Chain {
    /// Positioning axes of a spherical-wrist model.
    pub fn from_model(model: &RobotModel) -> Result<Self> {
        let w = model.wrist()?;
        let m = w.first;
        let mut motor = Rotor::identity();
        let mut axes = Vec::with_capacity(m);
        for row in &model.rows[..m] {
            axes.push(Axis {
                joint_type: row.joint_type,
                point: motor.translation(),
                dir: motor.frame()[2],
            });
            motor = motor * crate::motors::dh_motors(row, 0.0).product();
        }
        // frame m origin plus d along its z axis reaches the wrist centre
        let z = motor.frame()[2];
        let p0 = vec3::add(motor.translation(), vec3::scale(z, model.rows[m].d));
        Ok(Self { axes, p0 })
    }

    /// Wrist centre after applying joint values to the axes.
    pub fn wrist(&self, q: &[f64]) -> Vec3 {
        self.axes.iter().zip(q).rev().fold(self.p0, |x, (a, qi)| a.move_point(*qi, x))
    }

    /// Fixes joint `k` at `value`, moving the later axes and `p0` with it.
    pub fn fold(&self, k: usize, value: f64) -> Result<Chain> {
        let fixed = *self.axes.get(k).ok_or_else(|| Error::InvalidModel(format!("no joint {}", k + 1)))?;
        let mut axes: Vec<Axis> = self.axes[..k].to_vec();
        for a in &self.axes[k + 1..] {
            axes.push(Axis {
                joint_type: a.joint_type,
                point: fixed.move_point(value, a.point),
                dir: fixed.move_dir(value, a.dir),
            });
        }
        Ok(Chain { axes, p0: fixed.move_point(value, self.p0) })
    }

    pub fn pattern(&self) -> String {
        self.axes.iter().map(|a| a.joint_type.letter()).collect()
    }
}
