//! Acceptance suite. Prints one line per criterion and exits non-zero when a
//! criterion fails that is not listed in `KNOWN_FAILURES`.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use cgakin::conformal::{self, classify_pair, embed, extract_points, make_plane, make_sphere, meet, PairClass};
use cgakin::ga::{DEFAULT_EPS, DIM, EM};
use cgakin::ik::orientation::{compose_zyz, rotor_distance, split_zyz};
use cgakin::ik::{config_distance, redundant, JointPattern, SolveOptions};
use cgakin::kinematics::normalize_angle;
use cgakin::vec3::{self, Vec3};
use cgakin::{batch, fk, oracle, solve, DhRow, JointType, Multivector, RobotModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot pass as stated; see the README.
const KNOWN_FAILURES: [u32; 2] = [6, 9];

#[derive(Clone, Copy, PartialEq)]
enum Status {
    Pass,
    Report,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vec(rng: &mut ChaCha8Rng, scale: f64) -> Vec3 {
    [0; 3].map(|_| rng.gen_range(-scale..scale))
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = random_vec(rng, 1.0);
        let n = vec3::norm(v);
        if n > 0.1 && n <= 1.0 {
            return vec3::scale(v, 1.0 / n);
        }
    }
}

/// Some unit vector orthogonal to `a`.
fn orthogonal_unit(rng: &mut ChaCha8Rng, a: Vec3) -> Vec3 {
    loop {
        let v = vec3::cross(a, random_unit(rng));
        if vec3::norm(v) > 0.1 {
            return vec3::normalize(v);
        }
    }
}

// Criterion 1 ---------------------------------------------------------------

/// Product of basis blades by sorting index lists, independent of the
/// library's sign table. Returns (sign, mask).
fn reference_blade_product(a: u8, b: u8) -> (f64, u8) {
    let mut idx: Vec<u8> = (0..5).filter(|i| a & (1 << i) != 0).chain((0..5).filter(|i| b & (1 << i) != 0)).collect();
    let mut sign = 1.0;
    // Bubble sort, counting transpositions.
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut mask = 0u8;
    let mut k = 0;
    while k < idx.len() {
        if k + 1 < idx.len() && idx[k] == idx[k + 1] {
            // e4 = ē squares to −1, the rest to +1.
            if idx[k] == 4 {
                sign = -sign;
            }
            k += 2;
        } else {
            mask |= 1 << idx[k];
            k += 1;
        }
    }
    (sign, mask)
}

fn random_mv(rng: &mut ChaCha8Rng) -> Multivector {
    let mut m = Multivector::default();
    for i in 0..DIM as u8 {
        m[i] = rng.gen_range(-1.0..1.0);
    }
    m
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut table_errors = 0;
    for a in 0..DIM as u8 {
        for b in 0..DIM as u8 {
            let (s, mask) = reference_blade_product(a, b);
            let got = Multivector::basis(a).gp(&Multivector::basis(b));
            let mut want = Multivector::default();
            want[mask] = s;
            if got != want {
                table_errors += 1;
            }
        }
    }
    let metric_ok = (0..5u8).all(|i| {
        let e = Multivector::basis(1 << i);
        let sq = e.gp(&e).scalar_part();
        sq == if 1 << i == EM { -1.0 } else { 1.0 }
    });
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b, c) = (random_mv(&mut r), random_mv(&mut r), random_mv(&mut r));
        let rel = |x: Multivector, y: Multivector| (x - y).max_abs() / x.max_abs().max(y.max_abs()).max(1.0);
        worst = worst.max(rel(a.gp(&b).gp(&c), a.gp(&b.gp(&c))));
        worst = worst.max(rel(a.gp(&(b + c)), a.gp(&b) + a.gp(&c)));
        worst = worst.max(rel((a + b).gp(&c), a.gp(&c) + b.gp(&c)));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        table_errors == 0 && metric_ok && worst < 1e-10 && secs < 5.0,
        format!("table mismatches {table_errors}, metric ok {metric_ok}, worst relative error {worst:.2e}, {secs:.2} s"),
    )
}

// Criterion 2 ---------------------------------------------------------------

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let (mut nullity, mut dist): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let (x1, x2) = (random_vec(&mut r, 2.0), random_vec(&mut r, 2.0));
        let (p1, p2) = (embed(x1), embed(x2));
        nullity = nullity.max(p1.mv().gp(p1.mv()).max_abs());
        let d2 = vec3::norm(vec3::sub(x1, x2)).powi(2);
        dist = dist.max((-2.0 * p1.mv().scalar_product(p2.mv()) - d2).abs());
    }
    outcome(nullity < 1e-12 && dist < 1e-10, format!("max |X²| {nullity:.2e}, max distance identity error {dist:.2e}"))
}

// Criterion 3 ---------------------------------------------------------------

fn random_model(r: &mut ChaCha8Rng, i: usize) -> RobotModel {
    let n = r.gen_range(1..=7);
    let rows = (0..n)
        .map(|_| {
            let (a, alpha, d, theta) =
                (r.gen_range(-1.0..1.0), r.gen_range(-PI..PI), r.gen_range(-1.0..1.0), r.gen_range(-PI..PI));
            if r.gen_bool(0.3) {
                DhRow::prismatic(a, alpha, d, theta)
            } else {
                DhRow::revolute(a, alpha, d, theta)
            }
        })
        .collect();
    RobotModel::new(format!("random{i}"), rows, false, None).unwrap()
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut pos, mut rot): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let model = random_model(&mut r, i);
        for _ in 0..100 {
            let q: Vec<f64> = model
                .rows
                .iter()
                .map(|row| match row.joint_type {
                    JointType::Revolute => r.gen_range(-PI..PI),
                    JointType::Prismatic => r.gen_range(-1.0..1.0),
                })
                .collect();
            let a = fk(&model, &q).unwrap();
            let b = oracle::matrix_fk(&model, &q).unwrap();
            pos = pos.max(vec3::max_abs_diff(a.p, b.p));
            for k in 0..3 {
                rot = rot.max(vec3::max_abs_diff(a.frame[k], b.frame[k]));
            }
        }
    }
    outcome(pos < 1e-9 && rot < 1e-9, format!("max position deviation {pos:.2e}, max frame deviation {rot:.2e}"))
}

// Criterion 4 ---------------------------------------------------------------

/// Two planes `n·x = d` and a sphere, solved as line plus quadratic.
struct Direct {
    disc: f64,
    points: Vec<Vec3>,
}

/// A point and unit direction of the line where two planes meet.
fn line_of_planes(n1: Vec3, d1: f64, n2: Vec3, d2: f64) -> (Vec3, Vec3) {
    let v = vec3::cross(n1, n2);
    let vv = vec3::dot(v, v);
    let p = vec3::scale(vec3::add(vec3::scale(vec3::cross(n2, v), d1), vec3::scale(vec3::cross(v, n1), d2)), 1.0 / vv);
    (p, vec3::scale(v, 1.0 / vv.sqrt()))
}

fn direct_planes_sphere(n1: Vec3, d1: f64, n2: Vec3, d2: f64, c: Vec3, rad: f64) -> Direct {
    let (p, u) = line_of_planes(n1, d1, n2, d2);
    let w = vec3::sub(p, c);
    let b = vec3::dot(u, w);
    let disc = b * b - (vec3::dot(w, w) - rad * rad);
    // Clamped so that constructed tangent cases still yield their point.
    let s = disc.max(0.0).sqrt();
    let points = vec![vec3::add(p, vec3::scale(u, -b - s)), vec3::add(p, vec3::scale(u, -b + s))];
    Direct { disc, points }
}

/// Radical plane of two spheres, `2(c2−c1)·x = |c2|²−|c1|²+r1²−r2²`, normalised.
fn radical_plane(c1: Vec3, r1: f64, c2: Vec3, r2: f64) -> (Vec3, f64) {
    let n = vec3::sub(c2, c1);
    let l = vec3::norm(n);
    let d = (vec3::dot(c2, c2) - vec3::dot(c1, c1) + r1 * r1 - r2 * r2) / 2.0;
    (vec3::scale(n, 1.0 / l), d / l)
}

struct Instance {
    objects: [conformal::GeometricObject; 3],
    direct: Direct,
    tangent: bool,
}

fn sphere_sphere_plane(r: &mut ChaCha8Rng, tangent: bool) -> Instance {
    let c1 = random_vec(r, 2.0);
    let a = random_unit(r);
    let (r1, r2): (f64, f64) = (r.gen_range(0.5..2.0), r.gen_range(0.5..2.0));
    let dist = if tangent { r.gen_range((r1 - r2).abs() + 0.1..r1 + r2 - 0.1) } else { r.gen_range(0.1..4.0) };
    let c2 = vec3::add(c1, vec3::scale(a, dist));
    let (n, delta) = if tangent {
        let h = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
        let rho = (r1 * r1 - h * h).sqrt();
        let u = orthogonal_unit(r, a);
        (u, vec3::dot(u, vec3::add(c1, vec3::scale(a, h))) + rho)
    } else {
        let n = random_unit(r);
        (n, vec3::dot(n, c1) + r.gen_range(-1.5..1.5))
    };
    let (nr, dr) = radical_plane(c1, r1, c2, r2);
    Instance {
        objects: [make_sphere(&embed(c1), r1), make_sphere(&embed(c2), r2), make_plane(n, delta)],
        direct: direct_planes_sphere(nr, dr, n, delta, c1, r1),
        tangent,
    }
}

fn plane_plane_sphere(r: &mut ChaCha8Rng, tangent: bool) -> Instance {
    let (n1, n2) = loop {
        let (a, b) = (random_unit(r), random_unit(r));
        if vec3::norm(vec3::cross(a, b)) > 0.2 {
            break (a, b);
        }
    };
    let (d1, d2) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
    let rad = r.gen_range(0.5..2.0);
    let c = if tangent {
        let (p, v) = line_of_planes(n1, d1, n2, d2);
        let on_line = vec3::add(p, vec3::scale(v, r.gen_range(-1.0..1.0)));
        vec3::add(on_line, vec3::scale(orthogonal_unit(r, v), rad))
    } else {
        let (p, _) = line_of_planes(n1, d1, n2, d2);
        vec3::add(p, random_vec(r, 1.5))
    };
    Instance {
        objects: [make_plane(n1, d1), make_plane(n2, d2), make_sphere(&embed(c), rad)],
        direct: direct_planes_sphere(n1, d1, n2, d2, c, rad),
        tangent,
    }
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let (mut worst, mut class_errors, mut checked, mut skipped) = (0.0f64, 0, 0, 0);
    let mut counts = [0usize; 3];
    for i in 0..400 {
        let tangent = i % 10 == 0;
        let inst = if i < 200 { sphere_sphere_plane(&mut r, tangent) } else { plane_plane_sphere(&mut r, tangent) };
        let [a, b, c] = &inst.objects;
        let pair = classify_pair(&meet(&[a, b, c]).unwrap(), DEFAULT_EPS);
        let expected = if inst.tangent {
            PairClass::Tangent
        } else if inst.direct.disc.abs() < 1e-6 {
            skipped += 1;
            continue;
        } else if inst.direct.disc > 0.0 {
            PairClass::Real
        } else {
            PairClass::Imaginary
        };
        checked += 1;
        if pair.class != expected {
            class_errors += 1;
            continue;
        }
        counts[match expected {
            PairClass::Real => 0,
            PairClass::Tangent => 1,
            _ => 2,
        }] += 1;
        if expected == PairClass::Imaginary {
            continue;
        }
        let got: Vec<Vec3> = extract_points(&pair).unwrap().to_vec().iter().map(|p| p.position()).collect();
        let want = &inst.direct.points;
        let err = if got.len() == 1 {
            let mid = vec3::scale(vec3::add(want[0], want[1]), 0.5);
            vec3::max_abs_diff(got[0], mid)
        } else {
            let straight = vec3::max_abs_diff(got[0], want[0]).max(vec3::max_abs_diff(got[1], want[1]));
            let crossed = vec3::max_abs_diff(got[0], want[1]).max(vec3::max_abs_diff(got[1], want[0]));
            straight.min(crossed)
        };
        worst = worst.max(err);
    }
    outcome(
        worst < 1e-9 && class_errors == 0,
        format!(
            "{checked} instances ({} real, {} tangent, {} imaginary, {skipped} near-tangent skipped), \
             class mismatches {class_errors}, max point error {worst:.2e}",
            counts[0], counts[1], counts[2]
        ),
    )
}

// Criteria 5 and 7 ----------------------------------------------------------

struct RoundTrip {
    failures: Vec<String>,
    max_residual: f64,
    max_branches: usize,
    max_positions: usize,
}

/// `fk → solve` on `seeds` configurations. For redundant models the seed's
/// redundant joint value is passed to the solver.
fn round_trip(names: &[&str], seeds: usize, seed: u64) -> RoundTrip {
    let mut out = RoundTrip { failures: vec![], max_residual: 0.0, max_branches: 0, max_positions: 0 };
    for name in names {
        let model = common::load(name);
        let pattern = JointPattern::of_model(&model).unwrap();
        let m = model.wrist().unwrap().first;
        let mut r = rng(seed);
        for _ in 0..seeds {
            let q = common::random_q(&model, &mut r);
            let redundant_value =
                pattern.is_redundant().then(|| q[redundant::redundant_joint(pattern).unwrap()]);
            let opts = SolveOptions { redundant_value, ..SolveOptions::default() };
            let set = match solve(&model, &fk(&model, &q).unwrap(), &opts) {
                Ok(set) => set,
                Err(e) => {
                    out.failures.push(format!("{name}: {q:?}: {e}"));
                    continue;
                }
            };
            let residual = set.solutions.iter().map(|s| s.residual).fold(0.0, f64::max);
            let mut prefixes: Vec<&[f64]> = set.solutions.iter().map(|s| &s.q[..m]).collect();
            prefixes.dedup_by(|a, b| config_distance(&model, a, b) < 1e-9);
            out.max_residual = out.max_residual.max(residual);
            out.max_branches = out.max_branches.max(set.len());
            out.max_positions = out.max_positions.max(prefixes.len());
            if residual >= 1e-8 || !set.contains(&model, &q, 1e-6) {
                out.failures.push(format!("{name}: {q:?}: residual {residual:e}, seed recovered {}", set.contains(&model, &q, 1e-6)));
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let rt = round_trip(&common::SIX_DOF, 500, 5);
    let secs = start.elapsed().as_secs_f64();
    for f in rt.failures.iter().take(5) {
        eprintln!("  {f}");
    }
    outcome(
        rt.failures.is_empty() && rt.max_branches <= 8 && rt.max_positions <= 4 && secs < 60.0,
        format!(
            "{} models x 500 seeds, {} failures, max residual {:.2e}, max branches {}, max position branches {}, {secs:.1} s",
            common::SIX_DOF.len(),
            rt.failures.len(),
            rt.max_residual,
            rt.max_branches,
            rt.max_positions
        ),
    )
}

fn criterion_7() -> Outcome {
    let rt = round_trip(&common::SEVEN_DOF, 200, 7);
    for f in rt.failures.iter().take(5) {
        eprintln!("  {f}");
    }
    outcome(
        rt.failures.is_empty(),
        format!(
            "{} models x 200 seeds, {} failures, max residual {:.2e}, max branches {}",
            common::SEVEN_DOF.len(),
            rt.failures.len(),
            rt.max_residual,
            rt.max_branches
        ),
    )
}

// Criterion 6 ---------------------------------------------------------------

fn angle_close(a: f64, b: f64, tol: f64) -> bool {
    normalize_angle(a - b).abs() < tol
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let (mut rebuild, mut misses) = (0.0f64, 0);
    let mut regular = 0;
    while regular < 1000 {
        let (t4, t5, t6) = (r.gen_range(-PI..PI), r.gen_range(-PI..PI), r.gen_range(-PI..PI));
        if t5.sin().abs() <= 1e-3 {
            continue;
        }
        regular += 1;
        let rot = compose_zyz(t4, t5, t6);
        let branches = split_zyz(&rot);
        for b in &branches {
            rebuild = rebuild.max(rotor_distance(&compose_zyz(b.theta4, b.theta5, b.theta6), &rot));
        }
        let hit = branches
            .iter()
            .any(|b| angle_close(b.theta4, t4, 1e-9) && angle_close(b.theta5, t5, 1e-9) && angle_close(b.theta6, t6, 1e-9));
        misses += !hit as usize;
    }
    let mut sum_misses = [0usize; 2];
    for i in 0..100 {
        let (t4, t6) = (r.gen_range(-PI..PI), r.gen_range(-PI..PI));
        let t5 = if i % 2 == 0 { 0.0 } else { PI };
        let b = split_zyz(&compose_zyz(t4, t5, t6))[0];
        if !angle_close(b.theta4 + b.theta6, t4 + t6, 1e-9) {
            sum_misses[i % 2] += 1;
        }
    }
    outcome(
        rebuild < 1e-10 && misses == 0 && sum_misses == [0, 0],
        format!(
            "regular: max rebuild error {rebuild:.2e}, seeds missed {misses}/1000; \
             singular θ4+θ6 missed: {}/50 at θ5 = 0, {}/50 at θ5 = π",
            sum_misses[0], sum_misses[1]
        ),
    )
}

// Criterion 8 ---------------------------------------------------------------

fn criterion_8() -> Outcome {
    let names: Vec<&str> = common::SIX_DOF.iter().chain(&common::SEVEN_DOF).copied().collect();
    let mut r = rng(8);
    let (mut converged, mut worst, mut failures) = (0, 0.0f64, 0);
    for i in 0..100 {
        let model = common::load(names[i % names.len()]);
        let q = common::random_q(&model, &mut r);
        let start = batch::perturb(&q, batch::DLS_PERTURBATION, &mut r);
        let pose = fk(&model, &q).unwrap();
        let Ok(dls) = oracle::dls_ik(&model, &pose, &start, 1e-8, 200) else { continue };
        converged += 1;
        let opts = batch::options_for(&model, &dls.q).unwrap();
        let nearest = match solve(&model, &pose, &opts) {
            Ok(set) => set.solutions.iter().map(|s| config_distance(&model, &s.q, &dls.q)).fold(f64::INFINITY, f64::min),
            Err(_) => f64::INFINITY,
        };
        if nearest >= 1e-4 {
            failures += 1;
            eprintln!("  {}: DLS {:?} has no closed-form branch nearby ({nearest:e})", model.name, dls.q);
        }
        worst = worst.max(nearest);
    }
    outcome(
        failures == 0,
        format!("{converged}/100 DLS runs converged, {failures} without a closed-form match, max distance {worst:.2e}"),
    )
}

// Criterion 9 ---------------------------------------------------------------

fn criterion_9() -> Outcome {
    let report = batch::bench(&common::load("rrr"), 10_000, 9).unwrap();
    let t = &report.timing;
    let status = if t.speedup >= 10.0 {
        Status::Pass
    } else if t.speedup >= 3.0 {
        Status::Report
    } else {
        Status::Fail
    };
    Outcome {
        status,
        detail: format!(
            "closed form median {:.2} us, DLS median {:.2} us, ratio {:.2} (solved {}, converged {})",
            t.closed_form.median_us, t.dls.median_us, t.speedup, report.closed_form_solved, report.dls_converged
        ),
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = vec![];
    for (n, run) in criteria {
        let o = run();
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Report => "REPORT",
            Status::Fail => "FAIL",
        };
        let known = if o.status == Status::Fail && KNOWN_FAILURES.contains(&n) { " (known)" } else { "" };
        println!("criterion {n}: {tag}{known}: {}", o.detail);
        if o.status == Status::Fail && known.is_empty() {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
