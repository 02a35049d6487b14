//! Rotors, translators and the Denavit-Hartenberg motors built from them.

use nalgebra::{Matrix3, Rotation3, UnitQuaternion};

use crate::conformal::{self, NullPoint};
use crate::ga::{Multivector, E1, E12, E13, E2, E23, E3, EM, EP};
use crate::kinematics::{DhRow, Pose};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Tolerance used for frame validation.
pub const FRAME_EPS: f64 = 1e-9;

/// An even, unit versor: a rotor, a translator or a product of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotor {
    mv: Multivector,
}

impl Default for Rotor {
    fn default() -> Self {
        Self::identity()
    }
}

impl Rotor {
    pub fn identity() -> Self {
        Self { mv: Multivector::scalar(1.0) }
    }

    /// Wraps a multivector without checks. Callers guarantee `M M̃ = 1`.
    pub fn from_mv_unchecked(mv: Multivector) -> Self {
        Self { mv }
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn reverse(&self) -> Self {
        Self { mv: self.mv.reverse() }
    }

    /// `M1 M2`: apply `M2` first, then `M1`.
    pub fn then(&self, inner: &Rotor) -> Self {
        Self { mv: self.mv.gp(&inner.mv) }
    }

    pub fn apply(&self, a: &Multivector) -> Multivector {
        sandwich(self, a)
    }

    /// Deviation `‖M M̃ − 1‖∞`.
    pub fn unit_error(&self) -> f64 {
        (self.mv.gp(&self.mv.reverse()) - Multivector::scalar(1.0)).max_abs()
    }

    /// Rotates (and translates) a Euclidean point.
    pub fn apply_point(&self, p: Vec3) -> Vec3 {
        let x = self.apply(conformal::embed(p).mv());
        NullPoint::from_weighted(&x).map(|n| n.position()).unwrap_or([f64::NAN; 3])
    }

    /// Rotates a Euclidean direction, ignoring any translation.
    pub fn apply_direction(&self, v: Vec3) -> Vec3 {
        self.rotation_part().apply(&Multivector::vector(v)).euclidean()
    }

    /// The G(3) part of a motor `T R`, which is `R`.
    pub fn rotation_part(&self) -> Rotor {
        Rotor { mv: self.mv.g3_part() }
    }

    /// Images of `e1, e2, e3` under the rotation part, read off the rotor
    /// coefficients in closed form.
    pub fn frame(&self) -> [Vec3; 3] {
        let m = &self.mv;
        let (w, x, y, z) = (m.scalar_part(), -m.get(E23), m.get(E13), -m.get(E12));
        [
            [w * w + x * x - y * y - z * z, 2.0 * (x * y + w * z), 2.0 * (x * z - w * y)],
            [2.0 * (x * y - w * z), w * w - x * x + y * y - z * z, 2.0 * (y * z + w * x)],
            [2.0 * (x * z + w * y), 2.0 * (y * z - w * x), w * w - x * x - y * y + z * z],
        ]
    }

    /// Position of the frame origin, the image of `e0`. For `M = T_t R` the
    /// translator is `M R̃`, whose `e_i∧e` coefficients are `t_i / 2`.
    pub fn translation(&self) -> Vec3 {
        let t = self.mv.gp(&self.mv.g3_part().reverse());
        [2.0 * t.get(E1 | EP), 2.0 * t.get(E2 | EP), 2.0 * t.get(E3 | EP)]
    }

    pub fn to_pose(&self) -> Pose {
        Pose { p: self.translation(), frame: self.frame() }
    }
}

impl std::ops::Mul for Rotor {
    type Output = Rotor;
    fn mul(self, rhs: Rotor) -> Rotor {
        self.then(&rhs)
    }
}

/// `R = cos(θ/2) − sin(θ/2) B` for a unit bivector `B`.
pub fn rotor(theta: f64, b: &Multivector) -> Result<Rotor> {
    let sq = b.gp(b);
    if (sq - Multivector::scalar(-1.0)).max_abs() > 1e-9 || b.grades_present(0.0) & !0b100 != 0 {
        return Err(Error::NonUnitBivector(sq.scalar_part()));
    }
    let (s, c) = (0.5 * theta).sin_cos();
    Ok(Rotor { mv: Multivector::scalar(c) - b.scale(s) })
}

/// Rotation by `θ` in the `e_i e_j` plane without validation.
pub(crate) fn plane_rotor(theta: f64, plane: u8) -> Rotor {
    let (s, c) = (0.5 * theta).sin_cos();
    let mut mv = Multivector::scalar(c);
    mv[plane] = -s;
    Rotor { mv }
}

/// `T_v = 1 − v e∞ / 2`. With `e∞ = ē − e` the bivector part is
/// `½ Σ v_i (e_i∧e − e_i∧ē)`.
pub fn translator(v: Vec3) -> Rotor {
    let mut mv = Multivector::scalar(1.0);
    for (i, blade) in [E1, E2, E3].into_iter().enumerate() {
        mv[blade | EP] = 0.5 * v[i];
        mv[blade | EM] = -0.5 * v[i];
    }
    Rotor { mv }
}

/// `M A M̃`.
pub fn sandwich(m: &Rotor, a: &Multivector) -> Multivector {
    m.mv.gp(a).gp(&m.mv.reverse())
}

/// The two motors of a D-H row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhMotorPair {
    /// `T(d z) R(θ, x∧y)`, carrying the joint variable.
    pub m_theta: Rotor,
    /// `T(a x) R(α, y∧z)`, constant.
    pub m_alpha: Rotor,
}

impl DhMotorPair {
    pub fn product(&self) -> Rotor {
        self.m_theta * self.m_alpha
    }
}

/// Motors of a standard (distal) D-H row with joint value `q`.
pub fn dh_motors(row: &DhRow, q: f64) -> DhMotorPair {
    let theta = row.theta_at(q);
    let d = row.d_at(q);
    let m_theta = translator([0.0, 0.0, d]) * plane_rotor(theta, E12);
    let m_alpha = translator([row.a, 0.0, 0.0]) * plane_rotor(row.alpha, E23);
    DhMotorPair { m_theta, m_alpha }
}

/// `M · M_θ · M_α` for one row, multiplying by each sparse factor in turn
/// and skipping identities.
pub(crate) fn append_row(m: &Rotor, row: &DhRow, q: f64) -> Rotor {
    let mut mv = *m.mv();
    let d = row.d_at(q);
    if d != 0.0 {
        mv = mv.gp(translator([0.0, 0.0, d]).mv());
    }
    let theta = row.theta_at(q);
    if theta != 0.0 {
        mv = mv.gp(plane_rotor(theta, E12).mv());
    }
    if row.a != 0.0 {
        mv = mv.gp(translator([row.a, 0.0, 0.0]).mv());
    }
    if row.alpha != 0.0 {
        mv = mv.gp(plane_rotor(row.alpha, E23).mv());
    }
    Rotor { mv }
}

/// Checks that `f` is an orthonormal right-handed frame.
pub fn validate_frame(f: &[Vec3; 3], eps: f64) -> Result<()> {
    for i in 0..3 {
        if !f[i].iter().all(|c| c.is_finite()) {
            return Err(Error::DegenerateFrame("non-finite component".into()));
        }
        for j in i..3 {
            let g = vec3::dot(f[i], f[j]);
            let want = if i == j { 1.0 } else { 0.0 };
            if (g - want).abs() > eps {
                return Err(Error::DegenerateFrame(format!("f{}·f{} = {g}", i + 1, j + 1)));
            }
        }
    }
    let det = vec3::dot(vec3::cross(f[0], f[1]), f[2]);
    if det < 0.0 {
        return Err(Error::DegenerateFrame("left-handed".into()));
    }
    Ok(())
}

/// Rotor taking `e_i` to `f_i`, from `ψ = 1 + f_k e^k`.
///
/// Near a half-turn `ψ` vanishes; there the rotor is rebuilt from the
/// rotation matrix with Shepperd's method instead.
pub fn rotor_from_frames(f1: Vec3, f2: Vec3, f3: Vec3) -> Result<Rotor> {
    let f = [f1, f2, f3];
    validate_frame(&f, FRAME_EPS)?;
    let mut psi = Multivector::scalar(1.0);
    for (k, fk) in f.iter().enumerate() {
        let mut e = [0.0; 3];
        e[k] = 1.0;
        psi += Multivector::vector(*fk).gp(&Multivector::vector(e));
    }
    let n2 = psi.norm_squared();
    if n2 > 1e-6 {
        return Ok(Rotor { mv: psi.scale(1.0 / n2.sqrt()) });
    }
    let m = Matrix3::from_columns(&[f1.into(), f2.into(), f3.into()]);
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(m));
    let mut mv = Multivector::scalar(q.w);
    mv[E23] = -q.i;
    mv[E13] = q.j;
    mv[E12] = -q.k;
    Ok(Rotor { mv })
}

/// `M = T_p R` mapping the base frame onto the pose.
pub fn pose_rotor(pose: &Pose) -> Result<Rotor> {
    let r = rotor_from_frames(pose.frame[0], pose.frame[1], pose.frame[2])?;
    Ok(translator(pose.p) * r)
}
