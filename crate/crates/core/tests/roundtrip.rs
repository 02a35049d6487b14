mod common;

use cgakin::ik::{config_distance, redundant, SolveOptions};
use cgakin::{fk, solve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn six_dof_models_round_trip() {
    for name in common::SIX_DOF {
        let model = common::load(name);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut misses = 0;
        for _ in 0..200 {
            let q = common::random_q(&model, &mut rng);
            let pose = fk(&model, &q).unwrap();
            match solve(&model, &pose, &SolveOptions::default()) {
                Ok(set) => {
                    assert!(set.len() <= 8, "{name}: {} branches", set.len());
                    if !set.contains(&model, &q, 1e-6) {
                        misses += 1;
                        let best = set.solutions.iter().map(|s| config_distance(&model, &s.q, &q)).fold(f64::INFINITY, f64::min);
                        eprintln!("{name}: seed {q:?} not recovered, best {best:e}");
                    }
                }
                Err(e) => {
                    misses += 1;
                    eprintln!("{name}: seed {q:?} failed: {e}");
                }
            }
        }
        assert_eq!(misses, 0, "{name}");
    }
}

#[test]
fn seven_dof_models_round_trip() {
    for name in common::SEVEN_DOF {
        let model = common::load(name);
        let k = redundant::redundant_joint(cgakin::ik::JointPattern::of_model(&model).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut misses = 0;
        for _ in 0..200 {
            let q = common::random_q(&model, &mut rng);
            let pose = fk(&model, &q).unwrap();
            let opts = SolveOptions { redundant_value: Some(q[k]), ..Default::default() };
            match solve(&model, &pose, &opts) {
                Ok(set) => {
                    if !set.contains(&model, &q, 1e-6) {
                        misses += 1;
                        eprintln!("{name}: seed {q:?} not recovered");
                    }
                }
                Err(e) => {
                    misses += 1;
                    eprintln!("{name}: seed {q:?} failed: {e}");
                }
            }
        }
        assert_eq!(misses, 0, "{name}");
    }
}
