//! Closed-form position problem for the three joints ahead of the wrist.
//!
//! Every solver intersects spheres, planes and lines built from the joint
//! axes and reads joint values off the resulting points. Revolute values are
//! signed by `atan2` about the joint axis; prismatic values are the signed
//! travel along it.

use std::fmt;

use crate::conformal::{self, make_line, make_plane, make_sphere, GeometricObject, NullPoint};
use crate::ga::DEFAULT_EPS;
use crate::ik::chain::{Axis, Chain};
use crate::kinematics::{normalize_angle, JointType, RobotModel};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Largest distance between the reached and the requested wrist centre.
pub const POSITION_TOL: f64 = 1e-8;
/// Prismatic values below `−PRISMATIC_TOL` are discarded.
pub const PRISMATIC_TOL: f64 = 1e-9;
/// Threshold for parallel and orthogonal axis tests.
pub const AXIS_EPS: f64 = 1e-9;

/// Joint values of the positioning joints plus the constructed points that
/// led to them.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionBranch {
    pub q: Vec<f64>,
    pub witness_points: Vec<NullPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JointPattern {
    Ppp,
    Ppr,
    Rpp,
    Rrp,
    Rpr,
    Rrr,
    Pppp,
    Pprp,
    Rrpr,
    Rrrr,
}

impl JointPattern {
    pub fn parse(tag: &str) -> Result<Self> {
        Ok(match tag {
            "PPP" => Self::Ppp,
            "PPR" => Self::Ppr,
            "RPP" => Self::Rpp,
            "RRP" => Self::Rrp,
            "RPR" => Self::Rpr,
            "RRR" => Self::Rrr,
            "PPPP" => Self::Pppp,
            "PPRP" => Self::Pprp,
            "RRPR" => Self::Rrpr,
            "RRRR" => Self::Rrrr,
            other => return Err(Error::UnsupportedPattern(other.to_string())),
        })
    }

    pub fn of_model(model: &RobotModel) -> Result<Self> {
        model.wrist()?;
        Self::parse(&model.pattern())
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::Ppp => "PPP",
            Self::Ppr => "PPR",
            Self::Rpp => "RPP",
            Self::Rrp => "RRP",
            Self::Rpr => "RPR",
            Self::Rrr => "RRR",
            Self::Pppp => "PPPP",
            Self::Pprp => "PPRP",
            Self::Rrpr => "RRPR",
            Self::Rrrr => "RRRR",
        }
    }

    pub fn is_redundant(self) -> bool {
        self.tag().len() == 4
    }
}

impl fmt::Display for JointPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Which construction applies to a three-joint chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Ppp,
    Ppr,
    Rpp,
    /// Axes 1 and 2 meet at the given point.
    RrpIntersecting(Vec3),
    /// Axes 1 and 2 are parallel.
    RrpParallel,
    Rpr,
    /// Axis 1 is orthogonal to axes 2 and 3, which are parallel.
    RrrPlanar,
    /// Axes 1 and 2 meet at the given point.
    RrrIntersecting(Vec3),
}

fn parallel(a: Vec3, b: Vec3) -> bool {
    vec3::norm(vec3::cross(a, b)) < AXIS_EPS
}

fn orthogonal(a: Vec3, b: Vec3) -> bool {
    vec3::dot(a, b).abs() < AXIS_EPS
}

fn axes_meet(a: &Axis, b: &Axis) -> Option<Vec3> {
    let l1 = make_line(a.point, a.dir);
    let l2 = make_line(b.point, b.dir);
    conformal::line_line_intersect(&l1, &l2).ok().map(|p| p.position())
}

fn unsupported(chain: &Chain, why: &str) -> Error {
    Error::UnsupportedPattern(format!("{}: {why}", chain.pattern()))
}

/// Picks the construction for a three-joint chain or explains why none fits.
pub fn classify(chain: &Chain) -> Result<Geometry> {
    if chain.axes.len() != 3 {
        return Err(unsupported(chain, "expected three positioning joints"));
    }
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let (w1, w2, w3) = (a1.dir, a2.dir, a3.dir);
    match chain.pattern().as_str() {
        "PPP" => {
            let vol = vec3::dot(vec3::cross(w1, w2), w3);
            if vol.abs() < AXIS_EPS {
                return Err(Error::ParallelAxes("prismatic axes are coplanar".into()));
            }
            Ok(Geometry::Ppp)
        }
        "PPR" => {
            if parallel(w1, w2) {
                return Err(Error::ParallelAxes("prismatic axes 1 and 2".into()));
            }
            if parallel(vec3::cross(w1, w2), w3) {
                return Err(unsupported(chain, "axis 3 is normal to the plane of the prismatic axes"));
            }
            if a3.radius(chain.p0) < AXIS_EPS {
                return Err(unsupported(chain, "wrist centre on axis 3"));
            }
            Ok(Geometry::Ppr)
        }
        "RPP" => {
            if parallel(w2, w3) {
                return Err(Error::ParallelAxes("prismatic axes 2 and 3".into()));
            }
            if parallel(vec3::cross(w2, w3), w1) {
                return Err(unsupported(chain, "axis 1 is normal to the plane of the prismatic axes"));
            }
            Ok(Geometry::Rpp)
        }
        "RRP" => {
            if parallel(w1, w2) {
                if orthogonal(w1, w3) {
                    return Err(unsupported(chain, "prismatic axis orthogonal to parallel revolute axes"));
                }
                if a1.radius(a2.point) < AXIS_EPS {
                    return Err(unsupported(chain, "revolute axes coincide"));
                }
                return Ok(Geometry::RrpParallel);
            }
            match axes_meet(&a1, &a2) {
                Some(o) => Ok(Geometry::RrpIntersecting(o)),
                None => Err(unsupported(chain, "revolute axes are skew")),
            }
        }
        "RPR" => {
            if !orthogonal(w2, w3) {
                return Err(unsupported(chain, "axis 3 not orthogonal to the prismatic axis"));
            }
            if parallel(w1, w3) {
                return Err(unsupported(chain, "axes 1 and 3 are parallel"));
            }
            if a3.radius(chain.p0) < AXIS_EPS {
                return Err(unsupported(chain, "wrist centre on axis 3"));
            }
            Ok(Geometry::Rpr)
        }
        "RRR" => {
            if parallel(w1, w2) && parallel(w2, w3) {
                return Err(Error::ParallelAxes("all three revolute axes".into()));
            }
            if parallel(w2, w3) && orthogonal(w1, w2) {
                if a2.radius(a3.point) < AXIS_EPS {
                    return Err(unsupported(chain, "axes 2 and 3 coincide"));
                }
                if a3.radius(chain.p0) < AXIS_EPS {
                    return Err(unsupported(chain, "wrist centre on axis 3"));
                }
                return Ok(Geometry::RrrPlanar);
            }
            if !parallel(w1, w2) {
                if let Some(o) = axes_meet(&a1, &a2) {
                    if a3.radius(o) < AXIS_EPS {
                        return Err(unsupported(chain, "all axes pass through one point"));
                    }
                    return Ok(Geometry::RrrIntersecting(o));
                }
            }
            Err(unsupported(chain, "axes 1 and 2 neither intersect nor form a planar arm"))
        }
        _ => Err(unsupported(chain, "no construction for this joint order")),
    }
}

/// Points of the meet of the objects; an imaginary pair means the target is
/// out of reach.
fn meet_points(objs: &[&GeometricObject]) -> Result<Vec<Vec3>> {
    match conformal::intersect_points(objs, DEFAULT_EPS) {
        Ok(p) => Ok(p.to_vec().iter().map(|x| x.position()).collect()),
        Err(Error::ImaginaryPair) | Err(Error::UnreachableTarget) => Err(Error::UnreachableTarget),
        Err(e) => Err(e),
    }
}

/// Sphere around the foot of `x` on `axis` through `x`, and the plane
/// orthogonal to the axis through `x`: together they cut out the circle `x`
/// sweeps about the axis.
fn circle_about(axis: &Axis, x: Vec3) -> (GeometricObject, GeometricObject) {
    let c = axis.foot(x);
    (
        make_sphere(&conformal::embed(c), axis.radius(x)),
        make_plane(axis.dir, vec3::dot(axis.dir, x)),
    )
}

fn line_point(from: Vec3, a: Vec3, to: Vec3, b: Vec3) -> Result<Vec3> {
    let p = conformal::line_line_intersect(&make_line(from, a), &make_line(to, b))?;
    Ok(p.position())
}

type Candidate = (Vec<f64>, Vec<Vec3>);

fn solve_ppp(chain: &Chain, p: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let n = vec3::normalize(vec3::cross(a1.dir, a2.dir));
    let plane = make_plane(n, vec3::dot(n, chain.p0));
    let line = make_line(p, a3.dir);
    let x = meet_points(&[&line, &plane])?[0];
    let q3 = vec3::dot(a3.dir, vec3::sub(p, x));
    let y = line_point(chain.p0, a1.dir, x, a2.dir)?;
    let q1 = vec3::dot(a1.dir, vec3::sub(y, chain.p0));
    let q2 = vec3::dot(a2.dir, vec3::sub(x, y));
    Ok(vec![(vec![q1, q2, q3], vec![x, y])])
}

fn solve_ppr(chain: &Chain, p: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let n = vec3::normalize(vec3::cross(a1.dir, a2.dir));
    let through_target = make_plane(n, vec3::dot(n, p));
    let (s3, pl3) = circle_about(&a3, chain.p0);
    let c3 = a3.foot(chain.p0);
    let mut out = Vec::new();
    for u in meet_points(&[&through_target, &pl3, &s3])? {
        let q3 = vec3::signed_angle(vec3::sub(chain.p0, c3), vec3::sub(u, c3), a3.dir);
        let y = line_point(u, a1.dir, p, a2.dir)?;
        let q1 = vec3::dot(a1.dir, vec3::sub(y, u));
        let q2 = vec3::dot(a2.dir, vec3::sub(p, y));
        out.push((vec![q1, q2, q3], vec![u, y]));
    }
    Ok(out)
}

fn solve_rpp(chain: &Chain, p: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let n = vec3::normalize(vec3::cross(a2.dir, a3.dir));
    let reach = make_plane(n, vec3::dot(n, chain.p0));
    let (s1, pl1) = circle_about(&a1, p);
    let c1 = a1.foot(p);
    let mut out = Vec::new();
    for x in meet_points(&[&reach, &pl1, &s1])? {
        let q1 = vec3::signed_angle(vec3::sub(x, c1), vec3::sub(p, c1), a1.dir);
        let y = line_point(chain.p0, a2.dir, x, a3.dir)?;
        let q2 = vec3::dot(a2.dir, vec3::sub(y, chain.p0));
        let q3 = vec3::dot(a3.dir, vec3::sub(x, y));
        out.push((vec![q1, q2, q3], vec![x, y]));
    }
    Ok(out)
}

/// Non-negative roots `d3` of `dist² = d2² + d3² − 2 d2 d3 cos α3`.
pub fn prismatic_roots(d2: f64, alpha3: f64, dist: f64) -> Vec<f64> {
    quadratic_roots(-2.0 * d2 * alpha3.cos(), d2 * d2 - dist * dist)
        .into_iter()
        .filter(|r| *r >= -PRISMATIC_TOL)
        .collect()
}

/// Real roots of `t² + b t + c = 0`, ascending; a double root appears once.
fn quadratic_roots(b: f64, c: f64) -> Vec<f64> {
    let half = -0.5 * b;
    let disc = half * half - c;
    let scale = (half * half).max(c.abs()).max(1.0);
    if disc < -1e-14 * scale {
        return Vec::new();
    }
    if disc <= 1e-14 * scale {
        return vec![half];
    }
    let s = disc.sqrt();
    vec![half - s, half + s]
}

/// Shoulder step shared by the intersecting-axes cases: given the point `y`
/// that axis 2 must carry onto the target circle of axis 1, find `q1, q2`.
fn shoulder(a1: &Axis, a2: &Axis, o: Vec3, y: Vec3, p: Vec3) -> Result<Vec<(f64, f64, Vec3)>> {
    let reach = make_sphere(&conformal::embed(o), vec3::distance(p, o));
    let pl2 = make_plane(a2.dir, vec3::dot(a2.dir, y));
    let pl1 = make_plane(a1.dir, vec3::dot(a1.dir, p));
    let mut out = Vec::new();
    for z in meet_points(&[&reach, &pl2, &pl1])? {
        let q2 = vec3::signed_angle(vec3::sub(y, o), vec3::sub(z, o), a2.dir);
        let q1 = vec3::signed_angle(vec3::sub(z, o), vec3::sub(p, o), a1.dir);
        out.push((q1, q2, z));
    }
    Ok(out)
}

fn solve_rrp_intersecting(chain: &Chain, p: Vec3, o: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let v = vec3::sub(chain.p0, o);
    let dist = vec3::distance(p, o);
    let roots = quadratic_roots(2.0 * vec3::dot(v, a3.dir), vec3::dot(v, v) - dist * dist);
    if roots.is_empty() {
        return Err(Error::UnreachableTarget);
    }
    let mut out = Vec::new();
    let mut last_err = None;
    for q3 in roots.into_iter().filter(|r| *r >= -PRISMATIC_TOL) {
        let y = vec3::add(chain.p0, vec3::scale(a3.dir, q3));
        match shoulder(&a1, &a2, o, y, p) {
            Ok(v) => out.extend(v.into_iter().map(|(q1, q2, z)| (vec![q1, q2, q3], vec![y, z]))),
            Err(e) => last_err = Some(e),
        }
    }
    finish(out, last_err)
}

fn finish(out: Vec<Candidate>, last_err: Option<Error>) -> Result<Vec<Candidate>> {
    match (out.is_empty(), last_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(out),
    }
}

/// Planar two-link step: points `e` at distance `r_a` from `o` and `r_b`
/// from `z` inside the plane `n·x = h`.
fn elbow(o: Vec3, r_a: f64, z: Vec3, r_b: f64, n: Vec3, h: f64) -> Result<Vec<Vec3>> {
    let s1 = make_sphere(&conformal::embed(o), r_a);
    let s2 = make_sphere(&conformal::embed(z), r_b);
    let pl = make_plane(n, h);
    meet_points(&[&s1, &s2, &pl])
}

fn solve_rrp_parallel(chain: &Chain, p: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let w = a1.dir;
    let q3 = vec3::dot(w, vec3::sub(p, chain.p0)) / vec3::dot(w, a3.dir);
    if q3 < -PRISMATIC_TOL {
        return Err(Error::UnreachableTarget);
    }
    let y = vec3::add(chain.p0, vec3::scale(a3.dir, q3));
    let e0 = a2.foot(y);
    let o1 = a1.foot(p);
    let mut out = Vec::new();
    for e in elbow(o1, a1.radius(e0), p, a2.radius(y), w, vec3::dot(w, p))? {
        let q1 = vec3::signed_angle(vec3::sub(e0, o1), vec3::sub(e, o1), w);
        let z = a1.move_point(-q1, p);
        let q2 = vec3::signed_angle(vec3::sub(y, e0), vec3::sub(z, e0), a2.dir);
        out.push((vec![q1, q2, q3], vec![y, e]));
    }
    Ok(out)
}

fn solve_rpr(chain: &Chain, p: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let c3 = a3.foot(chain.p0);
    let rho = a3.radius(chain.p0);
    let pl3 = make_plane(a3.dir, vec3::dot(a3.dir, c3));
    let (s1, pl1) = circle_about(&a1, p);
    let c1 = a1.foot(p);
    let slide = make_line(c3, a2.dir);
    let mut out = Vec::new();
    let mut last_err = None;
    for x in meet_points(&[&pl3, &pl1, &s1])? {
        let q1 = vec3::signed_angle(vec3::sub(x, c1), vec3::sub(p, c1), a1.dir);
        let s = make_sphere(&conformal::embed(x), rho);
        match meet_points(&[&slide, &s]) {
            Ok(cs) => {
                for c in cs {
                    let q2 = vec3::dot(a2.dir, vec3::sub(c, c3));
                    let q3 = vec3::signed_angle(vec3::sub(chain.p0, c3), vec3::sub(x, c), a3.dir);
                    out.push((vec![q1, q2, q3], vec![x, c]));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    finish(out, last_err)
}

fn solve_rrr_planar(chain: &Chain, p: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let k = vec3::dot(a2.dir, chain.p0);
    let arm_plane = make_plane(a2.dir, k);
    let (s1, pl1) = circle_about(&a1, p);
    let c1 = a1.foot(p);
    let e0 = a3.foot(chain.p0);
    let r_b = a3.radius(chain.p0);
    let mut out = Vec::new();
    let mut last_err = None;
    for z in meet_points(&[&arm_plane, &pl1, &s1])? {
        let q1 = vec3::signed_angle(vec3::sub(z, c1), vec3::sub(p, c1), a1.dir);
        let o2 = a2.foot(z);
        let r_a = vec3::distance(e0, a2.foot(e0));
        match elbow(o2, r_a, z, r_b, a2.dir, k) {
            Ok(es) => {
                for e in es {
                    let o2e = a2.foot(e0);
                    let q2 = vec3::signed_angle(vec3::sub(e0, o2e), vec3::sub(e, o2), a2.dir);
                    let back = a2.move_point(-q2, z);
                    let q3 = vec3::signed_angle(vec3::sub(chain.p0, e0), vec3::sub(back, e0), a3.dir);
                    out.push((vec![q1, q2, q3], vec![z, e]));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    finish(out, last_err)
}

fn solve_rrr_intersecting(chain: &Chain, p: Vec3, o: Vec3) -> Result<Vec<Candidate>> {
    let [a1, a2, a3] = [chain.axes[0], chain.axes[1], chain.axes[2]];
    let (s3, pl3) = circle_about(&a3, chain.p0);
    let c3 = a3.foot(chain.p0);
    let reach = make_sphere(&conformal::embed(o), vec3::distance(p, o));
    let mut out = Vec::new();
    let mut last_err = None;
    for y in meet_points(&[&s3, &pl3, &reach])? {
        let q3 = vec3::signed_angle(vec3::sub(chain.p0, c3), vec3::sub(y, c3), a3.dir);
        match shoulder(&a1, &a2, o, y, p) {
            Ok(v) => out.extend(v.into_iter().map(|(q1, q2, z)| (vec![q1, q2, q3], vec![y, z]))),
            Err(e) => last_err = Some(e),
        }
    }
    finish(out, last_err)
}

/// All position branches of a three-joint chain reaching `p`.
pub fn solve_chain(chain: &Chain, p: Vec3) -> Result<Vec<PositionBranch>> {
    let candidates = match classify(chain)? {
        Geometry::Ppp => solve_ppp(chain, p)?,
        Geometry::Ppr => solve_ppr(chain, p)?,
        Geometry::Rpp => solve_rpp(chain, p)?,
        Geometry::RrpIntersecting(o) => solve_rrp_intersecting(chain, p, o)?,
        Geometry::RrpParallel => solve_rrp_parallel(chain, p)?,
        Geometry::Rpr => solve_rpr(chain, p)?,
        Geometry::RrrPlanar => solve_rrr_planar(chain, p)?,
        Geometry::RrrIntersecting(o) => solve_rrr_intersecting(chain, p, o)?,
    };
    let mut out: Vec<PositionBranch> = Vec::new();
    let mut any_negative = false;
    for (mut q, witness) in candidates {
        let mut ok = true;
        for (qi, a) in q.iter_mut().zip(&chain.axes) {
            match a.joint_type {
                JointType::Revolute => *qi = normalize_angle(*qi),
                JointType::Prismatic => {
                    if *qi < -PRISMATIC_TOL {
                        ok = false;
                        any_negative = true;
                    }
                }
            }
        }
        if !ok || !q.iter().all(|v| v.is_finite()) {
            continue;
        }
        if vec3::distance(chain.wrist(&q), p) >= POSITION_TOL {
            continue;
        }
        if out.iter().any(|b| joint_distance(&b.q, &q, &chain.axes) < 1e-9) {
            continue;
        }
        let witness_points = witness.into_iter().map(conformal::embed).collect();
        out.push(PositionBranch { q, witness_points });
    }
    if out.is_empty() {
        return Err(if any_negative { Error::UnreachableTarget } else { Error::NoSolution });
    }
    Ok(out)
}

/// Largest per-joint difference, revolute values compared modulo 2π.
pub(crate) fn joint_distance(a: &[f64], b: &[f64], axes: &[Axis]) -> f64 {
    a.iter()
        .zip(b)
        .zip(axes)
        .map(|((x, y), ax)| match ax.joint_type {
            JointType::Revolute => normalize_angle(x - y).abs(),
            JointType::Prismatic => (x - y).abs(),
        })
        .fold(0.0, f64::max)
}

/// Dispatches a 6-DoF spherical-wrist model to the solver for its pattern.
pub fn solve_position(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    let pattern = JointPattern::of_model(model)?;
    if pattern.is_redundant() {
        return Err(Error::UnsupportedPattern(format!("{pattern} needs a redundancy parameter")));
    }
    solve_chain(&Chain::from_model(model)?, pw.position())
}

fn solve_as(model: &RobotModel, pw: &NullPoint, want: JointPattern) -> Result<Vec<PositionBranch>> {
    let got = JointPattern::of_model(model)?;
    if got != want {
        return Err(Error::UnsupportedPattern(format!("model is {got}, solver expects {want}")));
    }
    solve_position(model, pw)
}

pub fn solve_ppp_model(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, JointPattern::Ppp)
}

pub fn solve_ppr_model(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, JointPattern::Ppr)
}

pub fn solve_rpp_model(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, JointPattern::Rpp)
}

pub fn solve_rrp_model(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, JointPattern::Rrp)
}

pub fn solve_rpr_model(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, JointPattern::Rpr)
}

pub fn solve_rrr_model(model: &RobotModel, pw: &NullPoint) -> Result<Vec<PositionBranch>> {
    solve_as(model, pw, JointPattern::Rrr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(t: JointType, point: Vec3, dir: Vec3) -> Axis {
        Axis { joint_type: t, point, dir: vec3::normalize(dir) }
    }

    #[test]
    fn cosine_law_roots() {
        let r = prismatic_roots(1.0, std::f64::consts::FRAC_PI_2, 2f64.sqrt());
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-12);
        let r = prismatic_roots(1.0, 0.0, 0.5);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.5).abs() < 1e-12 && (r[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn cartesian_reads_coordinates() {
        let chain = Chain {
            axes: vec![
                axis(JointType::Prismatic, [0.0; 3], [1.0, 0.0, 0.0]),
                axis(JointType::Prismatic, [0.0; 3], [0.0, 1.0, 0.0]),
                axis(JointType::Prismatic, [0.0; 3], [0.0, 0.0, 1.0]),
            ],
            p0: [0.0; 3],
        };
        let b = solve_chain(&chain, [1.0, 2.0, 3.0]).unwrap();
        assert_eq!(b.len(), 1);
        assert!(vec3::max_abs_diff([b[0].q[0], b[0].q[1], b[0].q[2]], [1.0, 2.0, 3.0]) < 1e-12);
    }

    #[test]
    fn planar_arm_has_elbow_up_and_down() {
        // base yaw about z, two parallel pitch axes along y
        let chain = Chain {
            axes: vec![
                axis(JointType::Revolute, [0.0; 3], [0.0, 0.0, 1.0]),
                axis(JointType::Revolute, [0.0, 0.0, 0.5], [0.0, 1.0, 0.0]),
                axis(JointType::Revolute, [0.6, 0.0, 0.5], [0.0, 1.0, 0.0]),
            ],
            p0: [1.1, 0.0, 0.5],
        };
        assert_eq!(classify(&chain).unwrap(), Geometry::RrrPlanar);
        let q = [0.3, -0.4, 0.8];
        let p = chain.wrist(&q);
        let b = solve_chain(&chain, p).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.iter().any(|x| joint_distance(&x.q, &q, &chain.axes) < 1e-9));
        // full extension gives a tangent elbow
        let p = chain.wrist(&[0.3, -0.4, 0.0]);
        let b = solve_chain(&chain, p).unwrap();
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn unreachable() {
        let chain = Chain {
            axes: vec![
                axis(JointType::Revolute, [0.0; 3], [0.0, 0.0, 1.0]),
                axis(JointType::Revolute, [0.0, 0.0, 0.5], [0.0, 1.0, 0.0]),
                axis(JointType::Revolute, [0.6, 0.0, 0.5], [0.0, 1.0, 0.0]),
            ],
            p0: [1.1, 0.0, 0.5],
        };
        assert!(matches!(solve_chain(&chain, [3.0, 0.0, 0.5]), Err(Error::UnreachableTarget)));
    }
}
