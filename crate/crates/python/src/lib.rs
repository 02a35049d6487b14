//! Python bindings: robot models, forward and inverse kinematics, and a few
//! conformal helpers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cgakin::ik::orientation::{self, RotorSplitCoefficients};
use cgakin::ik::SolveOptions;
use cgakin::io::{self, PoseFile};
use cgakin::{conformal, Pose, RobotModel};

fn err(e: cgakin::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pose_dict<'py>(py: Python<'py>, pose: &Pose) -> PyResult<Bound<'py, PyDict>> {
    let file = PoseFile::from_pose(pose);
    let d = PyDict::new(py);
    d.set_item("position", file.position.to_vec())?;
    d.set_item("rotation", file.rotation.to_vec())?;
    Ok(d)
}

/// A serial robot loaded from a JSON description.
#[pyclass(name = "Robot", frozen)]
struct PyRobot {
    model: RobotModel,
}

#[pymethods]
impl PyRobot {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { model: io::parse_robot(text).map_err(err)? })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    #[getter]
    fn name(&self) -> &str {
        &self.model.name
    }

    #[getter]
    fn dof(&self) -> usize {
        self.model.dof()
    }

    /// Letters of the positioning joints, e.g. `"RRR"`.
    #[getter]
    fn pattern(&self) -> String {
        self.model.pattern()
    }

    /// Pose as `{"position": [3], "rotation": [9 row-major]}`.
    fn fk<'py>(&self, py: Python<'py>, q: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
        let pose = cgakin::fk(&self.model, &q).map_err(err)?;
        pose_dict(py, &pose)
    }

    /// Every closed-form solution as `{"q", "residual", "singular_wrist"}`.
    #[pyo3(signature = (position, rotation, redundant_value=None))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        position: [f64; 3],
        rotation: [f64; 9],
        redundant_value: Option<f64>,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let pose = PoseFile { position, rotation }.to_pose().map_err(err)?;
        let opts = SolveOptions { redundant_value, ..SolveOptions::default() };
        let set = cgakin::solve(&self.model, &pose, &opts).map_err(err)?;
        set.solutions
            .iter()
            .map(|s| {
                let d = PyDict::new(py);
                d.set_item("q", s.q.clone())?;
                d.set_item("residual", s.residual)?;
                d.set_item("singular_wrist", s.singular_wrist)?;
                Ok(d)
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Robot(name={:?}, pattern={:?}, dof={})", self.model.name, self.model.pattern(), self.model.dof())
    }
}

/// Conformal embedding of a point as 32 blade coefficients.
#[pyfunction]
fn embed(x: [f64; 3]) -> Vec<f64> {
    conformal::embed(x).mv().coeffs().to_vec()
}

/// Euclidean distance computed from the conformal inner product.
#[pyfunction]
fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    conformal::distance(&conformal::embed(a), &conformal::embed(b))
}

/// Coefficients `(1, e23, e13, e12)` of `R(θ4, e12) R(θ5, e13) R(θ6, e12)`.
#[pyfunction]
fn compose_zyz(theta4: f64, theta5: f64, theta6: f64) -> (f64, f64, f64, f64) {
    let c = RotorSplitCoefficients::of(&orientation::compose_zyz(theta4, theta5, theta6));
    (c.alpha, c.beta1p, c.beta2p, c.beta3p)
}

/// Wrist angle branches `(θ4, θ5, θ6, singular)` of a rotor given by its
/// `(1, e23, e13, e12)` coefficients.
#[pyfunction]
fn split_zyz(coeffs: (f64, f64, f64, f64)) -> Vec<(f64, f64, f64, bool)> {
    let (alpha, beta1p, beta2p, beta3p) = coeffs;
    let r = RotorSplitCoefficients { alpha, beta1p, beta2p, beta3p }.to_rotor();
    orientation::split_zyz(&r).iter().map(|b| (b.theta4, b.theta5, b.theta6, b.singular)).collect()
}

#[pymodule]
fn cgakin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRobot>()?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(compose_zyz, m)?)?;
    m.add_function(wrap_pyfunction!(split_zyz, m)?)?;
    Ok(())
}
