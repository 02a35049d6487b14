//! Conformal model of Euclidean 3-space.
//!
//! Points are null vectors `X = x + ½x²e∞ + e0`. Objects carry either an
//! inner representation `k` (points satisfy `X·k = 0`) or an outer one
//! `K = I5 k`. Intersections are taken on inner representations as
//! `k1 ∨ k2 = (k1 ∧ k2)*`, which for a sphere/plane triple yields a point-pair
//! bivector.

use crate::ga::{Multivector, DEFAULT_EPS, E1, E13, E2, E23, E3, E12, EM};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// A normalized conformal point (coefficient of `e0` equal to one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullPoint {
    mv: Multivector,
}

impl NullPoint {
    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn position(&self) -> Vec3 {
        self.mv.euclidean()
    }

    /// Normalizes a conformal vector by `−X·e∞` and snaps it back onto the
    /// null cone. Fails when `|X²|` exceeds `eps` after normalization.
    pub fn from_vector(x: &Multivector, eps: f64) -> Result<Self> {
        let (w, _) = x.null_coords();
        if w.abs() < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::NotNull(f64::INFINITY));
        }
        let v = x.grade(1).scale(1.0 / w);
        let sq = v.scalar_product(&v);
        let p = v.euclidean();
        if sq.abs() > eps * (1.0 + vec3::dot(p, p)) {
            return Err(Error::NotNull(sq));
        }
        Ok(embed(p))
    }

    /// Normalized point from any vector whose Euclidean part divided by its
    /// `e0` weight is the intended location, null or not.
    pub(crate) fn from_weighted(x: &Multivector) -> Result<Self> {
        let (w, _) = x.null_coords();
        if w.abs() < 1e-300 {
            return Err(Error::DegenerateMeet(w.abs()));
        }
        Ok(embed(vec3::scale(x.euclidean(), 1.0 / w)))
    }
}

/// Hestenes embedding `x ↦ x + ½x²e∞ + e0`.
pub fn embed(x: Vec3) -> NullPoint {
    let mut mv = Multivector::vector(x);
    let half_sq = 0.5 * vec3::dot(x, x);
    // e0 = ½(e + ē), e∞ = ē − e
    mv[crate::ga::EP] = 0.5 - half_sq;
    mv[EM] = 0.5 + half_sq;
    NullPoint { mv }
}

/// Inverse of [`embed`]. Accepts an un-normalized null vector.
pub fn project(x: &Multivector) -> Result<Vec3> {
    let p = NullPoint::from_vector(x, DEFAULT_EPS)?;
    Ok(p.position())
}

/// `d(X1, X2) = √(−2 X1·X2)`.
pub fn distance(a: &NullPoint, b: &NullPoint) -> f64 {
    (-2.0 * a.mv.scalar_product(&b.mv)).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Point,
    PointPair,
    Line,
    Circle,
    Plane,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Inner,
    Outer,
}

/// Tagged conformal object. Stored un-normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricObject {
    pub kind: ObjectKind,
    pub rep: Representation,
    pub mv: Multivector,
}

impl GeometricObject {
    pub fn inner(kind: ObjectKind, mv: Multivector) -> Self {
        Self { kind, rep: Representation::Inner, mv }
    }

    pub fn outer(kind: ObjectKind, mv: Multivector) -> Self {
        Self { kind, rep: Representation::Outer, mv }
    }

    pub fn inner_mv(&self) -> Multivector {
        match self.rep {
            Representation::Inner => self.mv,
            Representation::Outer => self.mv.undual(),
        }
    }

    pub fn outer_mv(&self) -> Multivector {
        match self.rep {
            Representation::Inner => self.mv.dual(),
            Representation::Outer => self.mv,
        }
    }

    pub fn to_inner(&self) -> Self {
        Self::inner(self.kind, self.inner_mv())
    }

    pub fn to_outer(&self) -> Self {
        Self::outer(self.kind, self.outer_mv())
    }

    /// Incidence residual `|X·k|` for a point, relative to the object's scale.
    pub fn incidence(&self, x: &NullPoint) -> f64 {
        let k = self.inner_mv();
        x.mv.inner(&k).max_abs() / k.max_abs().max(f64::MIN_POSITIVE)
    }

    /// Applies a versor by sandwiching.
    pub fn transformed(&self, m: &crate::motors::Rotor) -> Self {
        Self { mv: m.apply(&self.mv), ..*self }
    }
}

/// Line through `p` with unit direction `v`: `ℓ = v I3 − (p∧v) I3 e∞`.
pub fn make_line(p: Vec3, v: Vec3) -> GeometricObject {
    let i3 = Multivector::pseudoscalar3();
    let vm = Multivector::vector(v);
    let pv = Multivector::vector(p).wedge(&vm);
    let mv = vm * i3 - pv * i3 * Multivector::einf();
    GeometricObject::inner(ObjectKind::Line, mv)
}

/// Plane `n·x = δ` with unit normal `n`: `π = n + δ e∞`.
pub fn make_plane(n: Vec3, delta: f64) -> GeometricObject {
    let mv = Multivector::vector(n) + Multivector::einf().scale(delta);
    GeometricObject::inner(ObjectKind::Plane, mv)
}

/// Sphere of radius `r` around `center`: `s = Z − ½r² e∞`.
pub fn make_sphere(center: &NullPoint, r: f64) -> GeometricObject {
    let mv = center.mv - Multivector::einf().scale(0.5 * r * r);
    GeometricObject::inner(ObjectKind::Sphere, mv)
}

/// Outer representation `P1 ∧ P2 ∧ e∞` of the line through two points.
pub fn line_through(a: &NullPoint, b: &NullPoint) -> GeometricObject {
    GeometricObject::outer(ObjectKind::Line, a.mv.wedge(&b.mv).wedge(&Multivector::einf()))
}

/// Outer representation `P1 ∧ P2 ∧ P3 ∧ e∞` of the plane through three points.
pub fn plane_through(a: &NullPoint, b: &NullPoint, c: &NullPoint) -> GeometricObject {
    let mv = a.mv.wedge(&b.mv).wedge(&c.mv).wedge(&Multivector::einf());
    GeometricObject::outer(ObjectKind::Plane, mv)
}

/// Outer representation of the pair `{a, b}`.
pub fn pair_through(a: &NullPoint, b: &NullPoint) -> GeometricObject {
    GeometricObject::outer(ObjectKind::PointPair, a.mv.wedge(&b.mv))
}

/// Direction and closest-to-origin point of an inner-representation line.
pub fn line_parameters(line: &GeometricObject) -> Result<(Vec3, Vec3)> {
    let l = line.inner_mv();
    // v I3 maps e1→e23, e2→−e13, e3→e12; the moment sits on e_i∧ē.
    let v = [l.get(E23), -l.get(E13), l.get(E12)];
    let m = [l.get(E1 | EM), l.get(E2 | EM), l.get(E3 | EM)];
    let vv = vec3::dot(v, v);
    if vv < 1e-300 {
        return Err(Error::ZeroBlade);
    }
    let p = vec3::scale(vec3::cross(v, m), 1.0 / vv);
    Ok((p, vec3::scale(v, 1.0 / vv.sqrt())))
}

/// Normal (unit) and signed offset of an inner-representation plane.
pub fn plane_parameters(plane: &GeometricObject) -> Result<(Vec3, f64)> {
    let p = plane.inner_mv();
    let n = p.euclidean();
    let len = vec3::norm(n);
    if len < 1e-300 {
        return Err(Error::ZeroBlade);
    }
    let (_, delta) = p.null_coords();
    Ok((vec3::scale(n, 1.0 / len), delta / len))
}

/// Meet of two or three objects, `(k1 ∧ k2 [∧ k3])*` on inner representations.
pub fn meet(objects: &[&GeometricObject]) -> Result<Multivector> {
    let mut wedge = Multivector::scalar(1.0);
    let mut scale = 1.0;
    for o in objects {
        let k = o.inner_mv();
        scale *= k.max_abs().max(f64::MIN_POSITIVE);
        wedge = wedge.wedge(&k);
    }
    let out = wedge.dual();
    let mag = out.max_abs();
    if mag < DEFAULT_EPS * scale {
        return Err(Error::DegenerateMeet(mag / scale));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    Real,
    Tangent,
    Imaginary,
    Flat,
}

/// A point-pair bivector (outer representation) and its classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointPair {
    pub bivector: Multivector,
    pub class: PairClass,
    /// Signed squared half-separation of the two points, `d²/4`.
    pub half_separation_sq: f64,
}

/// Points recovered from a [`PointPair`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum PairPoints {
    Two(NullPoint, NullPoint),
    One(NullPoint),
}

impl PairPoints {
    pub fn to_vec(self) -> Vec<NullPoint> {
        match self {
            PairPoints::Two(a, b) => vec![a, b],
            PairPoints::One(a) => vec![a],
        }
    }
}

/// Classifies a point-pair bivector.
///
/// `eps` is the relative zero threshold. A pair is tangent when its
/// half-separation is below `100·eps` times the pair's scale, the larger of
/// one metre and the distance of its centre from the origin.
pub fn classify_pair(b: &Multivector, eps: f64) -> PointPair {
    let einf = Multivector::einf();
    let flatness = einf.wedge(b).max_abs();
    if flatness <= eps * b.max_abs() {
        return PointPair { bivector: *b, class: PairClass::Flat, half_separation_sq: 0.0 };
    }
    let dir = einf.inner(b);
    let num = b.scalar_product(b);
    let den = dir.scalar_product(&dir);
    let r2 = num / den;
    // centre of the round: B e∞ B, weighted
    let center = b.gp(&einf).gp(b).grade(1);
    let (w, _) = center.null_coords();
    let c = if w.abs() > 0.0 { vec3::norm(center.euclidean()) / w.abs() } else { 0.0 };
    let s = c.max(1.0);
    let tol = 100.0 * eps * s;
    let class = if r2.abs() <= tol * tol {
        PairClass::Tangent
    } else if r2 > 0.0 {
        PairClass::Real
    } else {
        PairClass::Imaginary
    };
    PointPair { bivector: *b, class, half_separation_sq: r2 }
}

/// Extracts the points of a pair: `(B ∓ √B²)(e∞⌋B)` for real pairs, the
/// touching point for tangent pairs and `e0⌋B` for a flat point `P∧e∞`.
pub fn extract_points(pair: &PointPair) -> Result<PairPoints> {
    let b = &pair.bivector;
    let einf = Multivector::einf();
    match pair.class {
        PairClass::Imaginary => Err(Error::ImaginaryPair),
        PairClass::Flat => {
            let x = Multivector::e0().inner(b);
            Ok(PairPoints::One(NullPoint::from_weighted(&x)?))
        }
        PairClass::Tangent => {
            let x = b.gp(&einf.inner(b)).grade(1);
            Ok(PairPoints::One(NullPoint::from_weighted(&x)?))
        }
        PairClass::Real => {
            let dir = einf.inner(b);
            let beta = b.scalar_product(b).max(0.0).sqrt();
            let p1 = (*b - Multivector::scalar(beta)).gp(&dir).grade(1);
            let p2 = (*b + Multivector::scalar(beta)).gp(&dir).grade(1);
            Ok(PairPoints::Two(NullPoint::from_weighted(&p1)?, NullPoint::from_weighted(&p2)?))
        }
    }
}

/// Meets the objects and extracts the resulting pair's points.
pub fn intersect_points(objects: &[&GeometricObject], eps: f64) -> Result<PairPoints> {
    let b = meet(objects)?;
    let pair = classify_pair(&b, eps);
    match pair.class {
        PairClass::Imaginary => Err(Error::UnreachableTarget),
        _ => extract_points(&pair),
    }
}

/// Intersection point of two coplanar inner-representation lines.
///
/// The second line is met with the plane that contains the first line and is
/// orthogonal to their common plane, which yields a flat point.
pub fn line_line_intersect(l1: &GeometricObject, l2: &GeometricObject) -> Result<NullPoint> {
    let (p1, v1) = line_parameters(l1)?;
    let (p2, v2) = line_parameters(l2)?;
    let c = vec3::cross(v1, v2);
    let s = vec3::norm(c);
    if s < DEFAULT_EPS {
        return Err(Error::ParallelLines);
    }
    let gap = vec3::dot(vec3::sub(p2, p1), c).abs() / s;
    let scale = 1.0 + vec3::norm(p1).max(vec3::norm(p2));
    if gap > DEFAULT_EPS * scale {
        return Err(Error::SkewLines(gap));
    }
    let n = vec3::normalize(vec3::cross(v1, c));
    let plane = make_plane(n, vec3::dot(n, p1));
    let b = meet(&[&l2.to_inner(), &plane])?;
    match extract_points(&classify_pair(&b, DEFAULT_EPS))? {
        PairPoints::One(p) => Ok(p),
        PairPoints::Two(p, _) => Ok(p),
    }
}

/// Angle between two same-grade outer representations,
/// `cos⁻¹(⟨K1 K̃2⟩₀ / (|K1||K2|))` with the norms taken with their metric sign
/// so that coincident objects give zero.
pub fn angle(k1: &GeometricObject, k2: &GeometricObject) -> Result<f64> {
    let a = k1.outer_mv();
    let b = k2.outer_mv();
    let na = a.norm_squared();
    let nb = b.norm_squared();
    if na * nb <= 0.0 || na.abs() < 1e-300 {
        return Err(Error::ZeroBlade);
    }
    let cos = a.scalar_product(&b.reverse()) * na.signum() / (na * nb).sqrt();
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Angle between a line and a plane, `π/2 − ∠(n, v)`, computed through the
/// line with direction `n` through the origin.
pub fn angle_line_plane(plane: &GeometricObject, line: &GeometricObject) -> Result<f64> {
    let (n, _) = plane_parameters(plane)?;
    let normal_line = make_line([0.0; 3], n);
    let a = angle(&normal_line.to_outer(), &line.to_outer())?;
    Ok(std::f64::consts::FRAC_PI_2 - a.min(std::f64::consts::PI - a))
}
