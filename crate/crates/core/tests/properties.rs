use std::f64::consts::PI;

use cgakin::conformal::{distance, embed};
use cgakin::ga::DIM;
use cgakin::ik::orientation::{compose_zyz, rotor_distance, split_zyz};
use cgakin::kinematics::joint_frames;
use cgakin::motors::{pose_rotor, rotor, translator};
use cgakin::vec3;
use cgakin::{fk, oracle, DhRow, Multivector, RobotModel};
use proptest::prelude::*;

fn mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform32(-1.0..1.0f64).prop_map(|c| {
        let mut m = Multivector::default();
        for (i, v) in c.iter().enumerate().take(DIM) {
            m[i as u8] = *v;
        }
        m
    })
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-3.0..3.0f64)
}

fn row() -> impl Strategy<Value = DhRow> {
    (any::<bool>(), -1.0..1.0f64, -PI..PI, -1.0..1.0f64, -PI..PI).prop_map(|(p, a, alpha, d, theta)| {
        if p {
            DhRow::prismatic(a, alpha, d, theta)
        } else {
            DhRow::revolute(a, alpha, d, theta)
        }
    })
}

/// A translator times a rotor about a random unit bivector.
fn motor() -> impl Strategy<Value = cgakin::Rotor> {
    (point(), point(), -PI..PI).prop_filter_map("zero axis", |(t, axis, theta)| {
        let n = vec3::norm(axis);
        (n > 1e-3).then(|| {
            let [x, y, z] = vec3::scale(axis, 1.0 / n);
            let b = Multivector::bivector3(z, -y, x);
            translator(t) * rotor(theta, &b).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn reverse_is_an_anti_automorphism(a in mv(), b in mv()) {
        let lhs = a.gp(&b).reverse();
        let rhs = b.reverse().gp(&a.reverse());
        prop_assert!((lhs - rhs).max_abs() < 1e-12);
    }

    #[test]
    fn undual_inverts_dual(a in mv()) {
        prop_assert!((a.dual().undual() - a).max_abs() < 1e-15);
    }

    #[test]
    fn vector_square_is_scalar(v in point()) {
        let m = Multivector::vector(v);
        let sq = m.gp(&m);
        prop_assert!((sq.scalar_part() - vec3::dot(v, v)).abs() < 1e-12);
        prop_assert!((sq - Multivector::scalar(sq.scalar_part())).max_abs() < 1e-12);
    }

    #[test]
    fn motors_preserve_distance(m in motor(), a in point(), b in point()) {
        let (pa, pb) = (m.apply_point(a), m.apply_point(b));
        prop_assert!((vec3::distance(pa, pb) - vec3::distance(a, b)).abs() < 1e-10);
        prop_assert!((distance(&embed(pa), &embed(pb)) - vec3::distance(a, b)).abs() < 1e-10);
        prop_assert!(m.unit_error() < 1e-12);
    }

    #[test]
    fn pose_rotor_round_trips(m in motor()) {
        let pose = m.to_pose();
        let back = pose_rotor(&pose).unwrap();
        prop_assert!(back.to_pose().residual(&pose) < 1e-12);
    }

    #[test]
    fn rotor_fk_matches_matrix_fk(rows in prop::collection::vec(row(), 1..8), seed in prop::collection::vec(-PI..PI, 8)) {
        let model = RobotModel::new("p", rows, false, None).unwrap();
        let q = &seed[..model.dof()];
        let a = fk(&model, q).unwrap();
        let b = oracle::matrix_fk(&model, q).unwrap();
        prop_assert!(a.residual(&b) < 1e-12);
        let frames = joint_frames(&model, q).unwrap();
        let last = frames.last().unwrap();
        prop_assert!(vec3::max_abs_diff(last.origin.position(), a.p) < 1e-12);
    }

    #[test]
    fn zyz_split_rebuilds(t4 in -PI..PI, t5 in -PI..PI, t6 in -PI..PI) {
        let r = compose_zyz(t4, t5, t6);
        for b in split_zyz(&r) {
            prop_assert!(rotor_distance(&compose_zyz(b.theta4, b.theta5, b.theta6), &r) < 1e-10);
        }
    }
}
