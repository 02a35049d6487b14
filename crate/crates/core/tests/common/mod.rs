#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use cgakin::io::parse_robot;
use cgakin::{JointType, RobotModel};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SIX_DOF: [&str; 11] = [
    "ppp", "ppp_offset", "ppr", "ppr_offset", "rpp", "rrp", "rrp_scara", "rpr", "rrr", "rrr_offset", "rrr_general",
];
pub const SEVEN_DOF: [&str; 4] = ["pppp", "pprp", "rrpr", "rrrr"];

pub fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

pub fn load(name: &str) -> RobotModel {
    let path = models_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_robot(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Revolute values uniform in (−π, π], prismatic values in [0.05, 1].
pub fn random_q(model: &RobotModel, rng: &mut ChaCha8Rng) -> Vec<f64> {
    model
        .rows
        .iter()
        .map(|r| match r.joint_type {
            JointType::Revolute => PI - rng.gen::<f64>() * 2.0 * PI,
            JointType::Prismatic => rng.gen_range(0.05..=1.0),
        })
        .collect()
}
