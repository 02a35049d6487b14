//! Robot kinematics in conformal geometric algebra.
//!
//! * [`ga`] is a fixed-layout multivector type for G(4,1).
//! * [`conformal`] embeds Euclidean points as null vectors and builds lines,
//!   planes and spheres together with their intersections.
//! * [`motors`] holds rotors, translators and the Denavit-Hartenberg motors.
//! * [`kinematics`] evaluates forward kinematics by composing motors.
//! * [`ik`] solves the inverse kinematics of 6-DoF and 7-DoF robots with a
//!   spherical wrist in closed form, returning every solution branch.
//! * [`oracle`] contains an independent homogeneous-matrix forward kinematics
//!   and a damped least squares solver used for validation.

pub mod batch;
pub mod conformal;
pub mod error;
pub mod ga;
pub mod ik;
pub mod io;
pub mod kinematics;
pub mod motors;
pub mod oracle;
pub mod vec3;

pub use error::{Error, Result};
pub use ga::Multivector;
pub use ik::{solve, IkSolution, IkSolutionSet, SolveOptions};
pub use kinematics::{fk, joint_frames, wrist_center, Configuration, DhRow, JointType, Pose, RobotModel};
pub use motors::Rotor;
