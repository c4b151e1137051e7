use thiserror::Error;

/// Validation failures when constructing rotation or pose values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PoseError {
    #[error("matrix is not orthonormal: defect {defect:.3e} exceeds {tol:.1e}")]
    NotOrthonormal { defect: f64, tol: f64 },
    #[error("matrix is not a proper rotation: determinant {det:.6}")]
    ImproperRotation { det: f64 },
    #[error("{name} angle {value} is outside its canonical range")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("quaternion is not unit length: norm {norm}")]
    NotUnitQuaternion { norm: f64 },
    #[error("axis-angle magnitude {magnitude} exceeds pi")]
    AxisAngleTooLong { magnitude: f64 },
}
