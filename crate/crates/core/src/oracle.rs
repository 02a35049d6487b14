//! Reference implementations used to validate the closed-form machinery:
//! a homogeneous-matrix forward kinematics and a damped least squares IK.

use nalgebra::{DMatrix, DVector, Matrix4};

use crate::kinematics::{normalize_angle, JointType, Pose, RobotModel};
use crate::{Error, Result};

/// Damping factor of [`dls_ik`].
pub const DLS_LAMBDA: f64 = 1e-3;
/// Central-difference step of the numerical Jacobian.
pub const DLS_STEP: f64 = 1e-6;

/// `Rz(θ) Tz(d) Tx(a) Rx(α)` as a 4×4 matrix.
pub fn dh_matrix(theta: f64, d: f64, a: f64, alpha: f64) -> Matrix4<f64> {
    let (st, ct) = theta.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        ct, -st * ca,  st * sa, a * ct,
        st,  ct * ca, -ct * sa, a * st,
        0.0,      sa,       ca,      d,
        0.0,     0.0,      0.0,    1.0,
    );
    m
}

/// `T_n^0 = T_1^0 ⋯ T_n^{n−1}`.
pub fn matrix_chain(model: &RobotModel, q: &[f64]) -> Result<Matrix4<f64>> {
    model.check_len(q)?;
    Ok(model.rows.iter().zip(q).fold(Matrix4::identity(), |t, (r, qi)| {
        t * dh_matrix(r.theta_at(*qi), r.d_at(*qi), r.a, r.alpha)
    }))
}

pub fn matrix_fk(model: &RobotModel, q: &[f64]) -> Result<Pose> {
    let t = matrix_chain(model, q)?;
    let col = |j: usize| [t[(0, j)], t[(1, j)], t[(2, j)]];
    Ok(Pose { p: col(3), frame: [col(0), col(1), col(2)] })
}

fn pose_error(target: &Pose, current: &Pose) -> DVector<f64> {
    let mut e = DVector::zeros(12);
    for i in 0..3 {
        e[i] = target.p[i] - current.p[i];
        for k in 0..3 {
            e[3 + 3 * i + k] = target.frame[i][k] - current.frame[i][k];
        }
    }
    e
}

/// Result of a converged [`dls_ik`] run.
#[derive(Debug, Clone, PartialEq)]
pub struct DlsSolution {
    pub q: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Damped least squares: `Δq = (JᵀJ + λ²I)⁻¹ Jᵀ e` on the 12-vector of
/// position and frame errors, with a central-difference Jacobian.
pub fn dls_ik(model: &RobotModel, pose: &Pose, q0: &[f64], tol: f64, max_iter: usize) -> Result<DlsSolution> {
    model.check_len(q0)?;
    let n = q0.len();
    let mut q = q0.to_vec();
    let mut e = pose_error(pose, &matrix_fk(model, &q)?);
    let mut residual = e.amax();
    let mut iterations = 0;
    while residual >= tol {
        if iterations == max_iter || !residual.is_finite() {
            return Err(Error::NotConverged(residual));
        }
        let mut j = DMatrix::zeros(12, n);
        let mut qp = q.clone();
        for c in 0..n {
            qp[c] = q[c] + DLS_STEP;
            let plus = pose_error(pose, &matrix_fk(model, &qp)?);
            qp[c] = q[c] - DLS_STEP;
            let minus = pose_error(pose, &matrix_fk(model, &qp)?);
            qp[c] = q[c];
            // e = target − fk, so ∂fk/∂q = −∂e/∂q
            j.set_column(c, &((minus - plus) / (2.0 * DLS_STEP)));
        }
        let jt = j.transpose();
        let a = &jt * &j + DMatrix::identity(n, n) * (DLS_LAMBDA * DLS_LAMBDA);
        let dq = a.lu().solve(&(&jt * &e)).ok_or(Error::NotConverged(residual))?;
        for (qi, d) in q.iter_mut().zip(dq.iter()) {
            *qi += d;
        }
        e = pose_error(pose, &matrix_fk(model, &q)?);
        residual = e.amax();
        iterations += 1;
    }
    for (qi, r) in q.iter_mut().zip(&model.rows) {
        if r.joint_type == JointType::Revolute {
            *qi = normalize_angle(*qi);
        }
    }
    Ok(DlsSolution { q, iterations, residual })
}
