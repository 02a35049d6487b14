//! Wrist angles from the residual rotor by a ZYZ split.
//!
//! With `R4 = R(θ4, e12)`, `R5 = R(θ5, e13)` and `R6 = R(θ6, e12)` the product
//! `R4 R5 R6` has coefficients
//!
//! ```text
//! α   =  cos(θ5/2) cos((θ4+θ6)/2)      β′3 (e12) = −cos(θ5/2) sin((θ4+θ6)/2)
//! β′1 =  sin(θ5/2) sin((θ6−θ4)/2)      β′2 (e13) = −sin(θ5/2) cos((θ6−θ4)/2)
//! ```
//!
//! on `1, e23, e13, e12`, and the angles follow by two-argument arctangents.

use crate::ga::{Multivector, E12, E13, E23};
use crate::motors::{plane_rotor, Rotor};

/// Divisor guard on `|sin(θ5/2) cos(θ5/2)|`.
pub const SINGULAR_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorSplitCoefficients {
    pub alpha: f64,
    pub beta1p: f64,
    pub beta2p: f64,
    pub beta3p: f64,
}

impl RotorSplitCoefficients {
    pub fn of(r: &Rotor) -> Self {
        let m = r.mv();
        Self { alpha: m.scalar_part(), beta1p: m.get(E23), beta2p: m.get(E13), beta3p: m.get(E12) }
    }

    pub fn to_rotor(self) -> Rotor {
        let mut mv = Multivector::scalar(self.alpha);
        mv[E23] = self.beta1p;
        mv[E13] = self.beta2p;
        mv[E12] = self.beta3p;
        Rotor::from_mv_unchecked(mv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationBranch {
    pub theta4: f64,
    pub theta5: f64,
    pub theta6: f64,
    pub singular: bool,
    /// `θ4 + θ6` when only the sum is determined (`θ5 = 0`).
    pub theta_sum: Option<f64>,
    /// `θ6 − θ4` when only the difference is determined (`θ5 = ±π`).
    pub theta_diff: Option<f64>,
}

/// `R456 = R̃123 R_target`.
pub fn residual_rotor(target: &Rotor, r123: &Rotor) -> Rotor {
    r123.reverse() * *target
}

/// `R(θ4, e12) R(θ5, e13) R(θ6, e12)`.
pub fn compose_zyz(theta4: f64, theta5: f64, theta6: f64) -> Rotor {
    plane_rotor(theta4, E12) * plane_rotor(theta5, E13) * plane_rotor(theta6, E12)
}

/// Splits a unit G(3) rotor into ZYZ angles.
///
/// Regular rotors give two branches, one for each sign of `sin(θ5/2)`. At a
/// representation singularity one branch is returned with `θ4 = 0` and the
/// determined combination stored in `theta_sum` or `theta_diff`.
pub fn split_zyz(r456: &Rotor) -> Vec<OrientationBranch> {
    split_zyz_with(r456, 0.0)
}

/// As [`split_zyz`], placing `θ4 = theta4_hint` at a singularity.
pub fn split_zyz_with(r456: &Rotor, theta4_hint: f64) -> Vec<OrientationBranch> {
    let RotorSplitCoefficients { alpha, beta1p, beta2p, beta3p } = RotorSplitCoefficients::of(r456);
    let c5 = alpha.hypot(beta3p);
    let s5 = beta1p.hypot(beta2p);
    if s5 * c5 < SINGULAR_EPS {
        if s5 <= c5 {
            let sum = 2.0 * (-beta3p).atan2(alpha);
            return vec![OrientationBranch {
                theta4: theta4_hint,
                theta5: 0.0,
                theta6: sum - theta4_hint,
                singular: true,
                theta_sum: Some(sum),
                theta_diff: None,
            }];
        }
        let diff = 2.0 * beta1p.atan2(-beta2p);
        return vec![OrientationBranch {
            theta4: theta4_hint,
            theta5: std::f64::consts::PI,
            theta6: diff + theta4_hint,
            singular: true,
            theta_sum: None,
            theta_diff: Some(diff),
        }];
    }
    let half_sum = (-beta3p / c5).atan2(alpha / c5);
    [s5, -s5]
        .iter()
        .map(|&s| {
            let half_diff = (beta1p / s).atan2(-beta2p / s);
            OrientationBranch {
                theta4: half_sum - half_diff,
                theta5: 2.0 * s.atan2(c5),
                theta6: half_sum + half_diff,
                singular: false,
                theta_sum: None,
                theta_diff: None,
            }
        })
        .collect()
}

/// Distance between two rotors modulo the global sign.
pub fn rotor_distance(a: &Rotor, b: &Rotor) -> f64 {
    let d1 = (*a.mv() - *b.mv()).max_abs();
    let d2 = (*a.mv() + *b.mv()).max_abs();
    d1.min(d2)
}
