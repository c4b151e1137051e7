//! Rotation representations and the conversions between them.
//!
//! The Euler factorization is fixed to the intrinsic Z·Y·X sequence,
//! `R = Rz(yaw) · Ry(pitch) · Rx(roll)`, with pitch restricted to
//! [-pi/2, pi/2]. At the gimbal-lock locus |pitch| = pi/2 the extraction
//! sets roll to 0 and lets yaw absorb the remaining angle, which keeps the
//! mapping deterministic.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::Mul;

use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use crate::PoseError;

/// Element-wise tolerance for SO(3) membership checks.
pub const SO3_TOL: f64 = 1e-9;

/// Below this rotation angle the axis-angle extraction switches to its
/// first-order form.
const TINY_ANGLE: f64 = 1e-9;

/// A validated member of SO(3): orthogonal with determinant +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix(Matrix3<f64>);

impl RotationMatrix {
    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Validates orthonormality and handedness before wrapping the matrix.
    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self, PoseError> {
        let defect = orthonormality_defect(&m);
        if defect > SO3_TOL {
            return Err(PoseError::NotOrthonormal {
                defect,
                tol: SO3_TOL,
            });
        }
        let det = m.determinant();
        if (det - 1.0).abs() > SO3_TOL {
            return Err(PoseError::ImproperRotation { det });
        }
        Ok(Self(m))
    }

    /// Nearest rotation to an arbitrary matrix, via SVD polar projection.
    ///
    /// Returns an error when the input is closer to a reflection than to a
    /// rotation (negative determinant).
    pub fn project(m: &Matrix3<f64>) -> Result<Self, PoseError> {
        let det = m.determinant();
        if det <= 0.0 {
            return Err(PoseError::ImproperRotation { det });
        }
        let svd = m.svd(true, true);
        let u = svd.u.expect("svd of 3x3 always yields u");
        let v_t = svd.v_t.expect("svd of 3x3 always yields v_t");
        let mut r = u * v_t;
        if r.determinant() < 0.0 {
            let flip = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
            r = u * flip * v_t;
        }
        Ok(Self(r))
    }

    /// Re-projects onto SO(3); used after long composition chains.
    pub fn orthonormalized(&self) -> Self {
        Self::project(&self.0).expect("rotation stays projectable")
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Inverse rotation; for SO(3) this is the transpose.
    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn rotate(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.0 * v
    }

    pub fn about_x(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c))
    }

    pub fn about_y(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c))
    }

    pub fn about_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0))
    }

    /// `Rz(yaw) · Ry(pitch) · Rx(roll)` for arbitrary angles in radians.
    ///
    /// Unlike [`EulerAngles`], the inputs are not required to lie in the
    /// canonical ranges; the product is a valid rotation either way.
    pub fn from_rpy(roll: f64, pitch: f64, yaw: f64) -> Self {
        let (sr, cr) = roll.sin_cos();
        let (sp, cp) = pitch.sin_cos();
        let (sy, cy) = yaw.sin_cos();
        Self(Matrix3::new(
            cy * cp,
            -sy * cr + cy * sp * sr,
            sy * sr + cy * sp * cr,
            sy * cp,
            cy * cr + sy * sp * sr,
            -cy * sr + sy * sp * cr,
            -sp,
            cp * sr,
            cp * cr,
        ))
    }

    /// Uniform random rotation (Shoemake's subgroup algorithm).
    pub fn sample_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let u3: f64 = rng.random();
        let a = (1.0 - u1).sqrt();
        let b = u1.sqrt();
        let q = Quaternion {
            w: a * (2.0 * PI * u2).sin(),
            x: a * (2.0 * PI * u2).cos(),
            y: b * (2.0 * PI * u3).sin(),
            z: b * (2.0 * PI * u3).cos(),
        };
        q.to_matrix()
    }

    /// Intrinsic Z·Y·X Euler extraction with the documented gimbal-lock
    /// policy: roll is forced to 0 and yaw absorbs the free angle.
    pub fn to_euler(&self) -> EulerAngles {
        let m = &self.0;
        let sin_pitch = (-m[(2, 0)]).clamp(-1.0, 1.0);
        if sin_pitch >= 1.0 - 1e-13 {
            EulerAngles {
                roll: 0.0,
                pitch: FRAC_PI_2,
                yaw: canonical_angle(m[(1, 2)].atan2(m[(1, 1)])),
            }
        } else if sin_pitch <= -1.0 + 1e-13 {
            EulerAngles {
                roll: 0.0,
                pitch: -FRAC_PI_2,
                yaw: canonical_angle((-m[(1, 2)]).atan2(m[(1, 1)])),
            }
        } else {
            EulerAngles {
                roll: canonical_angle(m[(2, 1)].atan2(m[(2, 2)])),
                pitch: sin_pitch.asin(),
                yaw: canonical_angle(m[(1, 0)].atan2(m[(0, 0)])),
            }
        }
    }

    /// Shepperd's method, branch chosen by the largest of trace/diagonal.
    /// The sign is canonicalized so w >= 0.
    pub fn to_quaternion(&self) -> Quaternion {
        let m = &self.0;
        let trace = m.trace();
        let q = if trace > 0.0 {
            let s = (trace + 1.0).sqrt() * 2.0;
            Quaternion {
                w: 0.25 * s,
                x: (m[(2, 1)] - m[(1, 2)]) / s,
                y: (m[(0, 2)] - m[(2, 0)]) / s,
                z: (m[(1, 0)] - m[(0, 1)]) / s,
            }
        } else if m[(0, 0)] > m[(1, 1)] && m[(0, 0)] > m[(2, 2)] {
            let s = (1.0 + m[(0, 0)] - m[(1, 1)] - m[(2, 2)]).sqrt() * 2.0;
            Quaternion {
                w: (m[(2, 1)] - m[(1, 2)]) / s,
                x: 0.25 * s,
                y: (m[(0, 1)] + m[(1, 0)]) / s,
                z: (m[(0, 2)] + m[(2, 0)]) / s,
            }
        } else if m[(1, 1)] > m[(2, 2)] {
            let s = (1.0 + m[(1, 1)] - m[(0, 0)] - m[(2, 2)]).sqrt() * 2.0;
            Quaternion {
                w: (m[(0, 2)] - m[(2, 0)]) / s,
                x: (m[(0, 1)] + m[(1, 0)]) / s,
                y: 0.25 * s,
                z: (m[(1, 2)] + m[(2, 1)]) / s,
            }
        } else {
            let s = (1.0 + m[(2, 2)] - m[(0, 0)] - m[(1, 1)]).sqrt() * 2.0;
            Quaternion {
                w: (m[(1, 0)] - m[(0, 1)]) / s,
                x: (m[(0, 2)] + m[(2, 0)]) / s,
                y: (m[(1, 2)] + m[(2, 1)]) / s,
                z: 0.25 * s,
            }
        };
        q.normalized_canonical()
    }

    /// Rotation vector (axis scaled by angle), with magnitude in [0, pi].
    pub fn to_axis_angle(&self) -> AxisAngle {
        let m = &self.0;
        // vee(R - R^T) = 2 sin(theta) * axis
        let skew = Vector3::new(
            m[(2, 1)] - m[(1, 2)],
            m[(0, 2)] - m[(2, 0)],
            m[(1, 0)] - m[(0, 1)],
        );
        let sin_theta = skew.norm() * 0.5;
        let cos_theta = ((m.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
        let theta = sin_theta.atan2(cos_theta);

        if theta < TINY_ANGLE {
            return AxisAngle(skew * 0.5);
        }
        if PI - theta < 1e-6 {
            // The skew part vanishes near pi. Symmetrizing (R + I)/2 leaves
            // axis*axis^T to first order; its largest column is the axis.
            let sym = ((m + m.transpose()) * 0.5 + Matrix3::identity()) * 0.5;
            let k = largest_diagonal(&sym);
            let mut axis = sym.column(k).into_owned();
            axis /= axis.norm();
            if skew.dot(&axis) < 0.0 {
                axis = -axis;
            }
            return AxisAngle(axis * theta);
        }
        AxisAngle(skew * (theta / (2.0 * sin_theta)))
    }
}

impl Mul for RotationMatrix {
    type Output = RotationMatrix;

    fn mul(self, rhs: RotationMatrix) -> RotationMatrix {
        RotationMatrix(self.0 * rhs.0)
    }
}

/// Max absolute element of m^T m - I.
pub fn orthonormality_defect(m: &Matrix3<f64>) -> f64 {
    let g = m.transpose() * m - Matrix3::identity();
    g.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn largest_diagonal(m: &Matrix3<f64>) -> usize {
    let d = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
    let mut k = 0;
    for i in 1..3 {
        if d[i] > d[k] {
            k = i;
        }
    }
    k
}

/// Maps atan2's -pi output onto the canonical (-pi, pi] range.
fn canonical_angle(a: f64) -> f64 {
    if a == -PI {
        PI
    } else {
        a
    }
}

/// Intrinsic Z·Y·X Euler angles in radians.
///
/// roll and yaw lie in (-pi, pi], pitch in [-pi/2, pi/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

impl EulerAngles {
    pub fn new(roll: f64, pitch: f64, yaw: f64) -> Result<Self, PoseError> {
        for (name, value) in [("roll", roll), ("yaw", yaw)] {
            if !(value > -PI && value <= PI) {
                return Err(PoseError::AngleOutOfRange { name, value });
            }
        }
        if !(-FRAC_PI_2..=FRAC_PI_2).contains(&pitch) {
            return Err(PoseError::AngleOutOfRange {
                name: "pitch",
                value: pitch,
            });
        }
        Ok(Self { roll, pitch, yaw })
    }

    pub fn zero() -> Self {
        Self {
            roll: 0.0,
            pitch: 0.0,
            yaw: 0.0,
        }
    }

    pub fn to_matrix(&self) -> RotationMatrix {
        RotationMatrix::from_rpy(self.roll, self.pitch, self.yaw)
    }

    pub fn as_vector(&self) -> Vector3<f64> {
        Vector3::new(self.roll, self.pitch, self.yaw)
    }
}

/// Unit quaternion, scalar part first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub fn identity() -> Self {
        Self {
            w: 1.0,
            x: 0.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self, PoseError> {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > SO3_TOL {
            return Err(PoseError::NotUnitQuaternion { norm });
        }
        Ok(Self { w, x, y, z })
    }

    fn normalized_canonical(self) -> Self {
        let norm = (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        let sign = if self.w < 0.0 { -1.0 } else { 1.0 };
        let s = sign / norm;
        Self {
            w: self.w * s,
            x: self.x * s,
            y: self.y * s,
            z: self.z * s,
        }
    }

    pub fn to_matrix(&self) -> RotationMatrix {
        let Self { w, x, y, z } = *self;
        RotationMatrix(Matrix3::new(
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ))
    }
}

/// Rotation vector: unit axis scaled by the rotation angle in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle(pub Vector3<f64>);

impl AxisAngle {
    pub fn new(v: Vector3<f64>) -> Result<Self, PoseError> {
        let magnitude = v.norm();
        if magnitude > PI + SO3_TOL {
            return Err(PoseError::AxisAngleTooLong { magnitude });
        }
        Ok(Self(v))
    }

    pub fn angle(&self) -> f64 {
        self.0.norm()
    }

    /// Rodrigues' formula, with series coefficients below 1e-6 radians.
    pub fn to_matrix(&self) -> RotationMatrix {
        let theta2 = self.0.norm_squared();
        let theta = theta2.sqrt();
        let (a, b) = if theta < 1e-6 {
            (1.0 - theta2 / 6.0, 0.5 - theta2 / 24.0)
        } else {
            (theta.sin() / theta, (1.0 - theta.cos()) / theta2)
        };
        let k = hat(&self.0);
        RotationMatrix(Matrix3::identity() + k * a + k * k * b)
    }
}

fn hat(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}
