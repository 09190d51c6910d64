//! Rigid rotations.

use nalgebra::{Matrix3, Vector3};

use super::scalar::sinc_over;
use super::AlgebraError;

/// A left-invariant field on SO(3): `a hat(e_x) + b hat(e_y) + c hat(e_z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So3Vector {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl So3Vector {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        So3Vector { a, b, c }
    }

    pub fn scaled(&self, s: f64) -> Self {
        So3Vector::new(s * self.a, s * self.b, s * self.c)
    }

    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c).sqrt()
    }

    pub fn as_vector(&self) -> Vector3<f64> {
        Vector3::new(self.a, self.b, self.c)
    }

    /// Skew-symmetric generator under the hat isomorphism.
    pub fn hat(&self) -> Matrix3<f64> {
        Matrix3::new(
            0.0, -self.c, self.b, self.c, 0.0, -self.a, -self.b, self.a, 0.0,
        )
    }

    /// Cross product, `[hat(v), hat(w)] = hat(v × w)`.
    pub fn bracket(&self, other: &So3Vector) -> So3Vector {
        So3Vector::new(
            self.b * other.c - self.c * other.b,
            self.c * other.a - self.a * other.c,
            self.a * other.b - self.b * other.a,
        )
    }

    /// Rotation formula `I + sin|n|/|n| H + (1-cos|n|)/|n|^2 H^2` for
    /// `n = t * (a,b,c)`, with a series branch near zero.
    pub fn exp(&self, t: f64) -> Rotation {
        let eta = self.scaled(t);
        let n = eta.norm();
        let h = eta.hat();
        let (k1, k2) = if n < super::scalar::SMALL_ANGLE {
            let n2 = n * n;
            (
                1.0 - n2 / 6.0 + n2 * n2 / 120.0 - n2 * n2 * n2 / 5040.0,
                0.5 - n2 / 24.0 + n2 * n2 / 720.0 - n2 * n2 * n2 / 40320.0,
            )
        } else {
            (sinc_over(n), (1.0 - n.cos()) / (n * n))
        };
        Rotation::from_matrix_trusted(Matrix3::identity() + k1 * h + k2 * (h * h))
    }

    /// Entry-wise exponential for a unit axis, the explicit 3×3 form with
    /// `c_t = cos t`, `s_t = sin t`. Rejects non-unit axes.
    ///
    /// Agrees with [`So3Vector::exp`] to 1e-12; the two routes are kept as
    /// independent cross-checks of each other.
    pub fn exp_unit_axis(&self, t: f64) -> Result<Rotation, AlgebraError> {
        let n = self.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(AlgebraError::NonUnitAxis(n));
        }
        let (a, b, c) = (self.a, self.b, self.c);
        let (st, ct) = t.sin_cos();
        let v = 1.0 - ct;
        let m = Matrix3::new(
            a * a + (1.0 - a * a) * ct,
            b * a * v - c * st,
            c * a * v + b * st,
            a * b * v + c * st,
            b * b + (1.0 - b * b) * ct,
            c * b * v - a * st,
            a * c * v - b * st,
            b * c * v + a * st,
            c * c + (1.0 - c * c) * ct,
        );
        Ok(Rotation::from_matrix_trusted(m))
    }
}

/// A rotation matrix, orthonormal with determinant one.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    m: Matrix3<f64>,
}

/// Axis/angle form of a rotation: unit axis, angle in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    pub axis: Vector3<f64>,
    pub angle: f64,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation {
            m: Matrix3::identity(),
        }
    }

    /// Validates orthonormality and determinant to 1e-10.
    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self, AlgebraError> {
        let ortho = (m.transpose() * m - Matrix3::identity()).norm();
        let det = (m.determinant() - 1.0).abs();
        let defect = ortho.max(det);
        if defect > 1e-10 {
            return Err(AlgebraError::NotARotation(defect));
        }
        Ok(Rotation { m })
    }

    /// For matrices produced by our own exponentials and products.
    pub(crate) fn from_matrix_trusted(m: Matrix3<f64>) -> Self {
        Rotation { m }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    /// Entry accessor with 1-based row/column indices.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[(i - 1, j - 1)]
    }

    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation {
            m: self.m * other.m,
        }
    }

    pub fn inverse(&self) -> Rotation {
        Rotation {
            m: self.m.transpose(),
        }
    }

    pub fn distance(&self, other: &Rotation) -> f64 {
        (self.m - other.m).norm()
    }

    /// Rotates a coefficient vector, `hat(R v) = R hat(v) R^T`.
    pub fn rotate(&self, v: &So3Vector) -> So3Vector {
        let w = self.m * v.as_vector();
        So3Vector::new(w[0], w[1], w[2])
    }

    /// Axis/angle decomposition with angle in `[0, pi]`.
    ///
    /// The angle comes from `atan2` of the antisymmetric part's norm against
    /// `(trace-1)/2`, which stays well conditioned at both ends. Near `pi`
    /// the axis is recovered from the symmetric part; at exactly `pi` the
    /// sign is fixed by making the first nonzero coordinate positive. The
    /// identity returns axis `(0,0,1)` by convention.
    pub fn axis_angle(&self) -> AxisAngle {
        let m = &self.m;
        let anti = Vector3::new(
            m[(2, 1)] - m[(1, 2)],
            m[(0, 2)] - m[(2, 0)],
            m[(1, 0)] - m[(0, 1)],
        ) / 2.0;
        let s = anti.norm();
        let c = (m.trace() - 1.0) / 2.0;
        let angle = s.atan2(c);
        if angle < 1e-12 {
            return AxisAngle {
                axis: Vector3::new(0.0, 0.0, 1.0),
                angle: 0.0,
            };
        }
        if angle > std::f64::consts::PI - 1e-4 {
            // outer-product route: (B - cI)/(1-c) = w w^T
            let b = (m + m.transpose()) / 2.0;
            let ww = (b - c * Matrix3::identity()) / (1.0 - c);
            let i = (0..3)
                .max_by(|&p, &q| ww[(p, p)].partial_cmp(&ww[(q, q)]).unwrap())
                .unwrap();
            let mut w = ww.column(i) / ww[(i, i)].max(0.0).sqrt();
            w /= w.norm();
            if s > 1e-12 {
                if w.dot(&anti) < 0.0 {
                    w = -w;
                }
            } else {
                for k in 0..3 {
                    if w[k].abs() > 1e-12 {
                        if w[k] < 0.0 {
                            w = -w;
                        }
                        break;
                    }
                }
            }
            return AxisAngle { axis: w, angle };
        }
        AxisAngle {
            axis: anti / s,
            angle,
        }
    }
}

impl AxisAngle {
    pub fn to_rotation(&self) -> Rotation {
        So3Vector::new(self.axis[0], self.axis[1], self.axis[2]).exp(self.angle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn elementary_z_rotation() {
        let r = So3Vector::new(0.0, 0.0, 1.0).exp(FRAC_PI_2);
        assert!(r.entry(1, 1).abs() < 1e-15);
        assert!((r.entry(2, 1) - 1.0).abs() < 1e-15);
        assert!((r.entry(3, 3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_time_is_identity() {
        let r = So3Vector::new(0.4, -0.2, 0.9).exp(0.0);
        assert!(r.distance(&Rotation::identity()) < 1e-15);
        let r = So3Vector::new(0.0, 0.0, 1.0).exp_unit_axis(0.0).unwrap();
        assert!(r.distance(&Rotation::identity()) < 1e-15);
    }

    #[test]
    fn unit_axis_form_matches_general_form() {
        let v = So3Vector::new(0.0, std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
        let r1 = v.exp(1.0);
        let r2 = v.exp_unit_axis(1.0).unwrap();
        assert!(r1.distance(&r2) < 1e-12);
        // frozen entries from the series oracle
        assert!((r1.entry(1, 1) - 0.5403023058681398).abs() < 1e-12);
        assert!((r1.entry(1, 2) + 0.5950098395293859).abs() < 1e-12);
        assert!((r1.entry(2, 3) - 0.22984884706593012).abs() < 1e-12);
    }

    #[test]
    fn unit_axis_form_rejects_non_unit() {
        let err = So3Vector::new(0.0, 1.0, 1.0).exp_unit_axis(0.5);
        assert!(matches!(err, Err(AlgebraError::NonUnitAxis(_))));
    }

    #[test]
    fn hat_commutator_is_cross_product() {
        let ex = So3Vector::new(1.0, 0.0, 0.0);
        let ey = So3Vector::new(0.0, 1.0, 0.0);
        let ez = ex.bracket(&ey);
        assert_eq!((ez.a, ez.b, ez.c), (0.0, 0.0, 1.0));
        let h = ex.hat() * ey.hat() - ey.hat() * ex.hat();
        assert!((h - ez.hat()).norm() < 1e-15);
    }

    #[test]
    fn axis_angle_conventions() {
        let aa = Rotation::identity().axis_angle();
        assert_eq!(aa.angle, 0.0);
        assert_eq!((aa.axis[0], aa.axis[1], aa.axis[2]), (0.0, 0.0, 1.0));

        let aa = So3Vector::new(0.0, 0.0, 1.0).exp(FRAC_PI_2).axis_angle();
        assert!((aa.angle - FRAC_PI_2).abs() < 1e-12);
        assert!((aa.axis - Vector3::new(0.0, 0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn axis_angle_at_pi_is_deterministic_and_reconstructs() {
        let v = Vector3::new(1.0, -2.0, 0.5).normalize();
        let r = So3Vector::new(v[0], v[1], v[2]).exp(PI);
        let aa = r.axis_angle();
        assert!((aa.angle - PI).abs() < 1e-7);
        assert!(aa.to_rotation().distance(&r) < 1e-9);
        // both v and -v generate the same rotation; the pick is fixed
        let r2 = So3Vector::new(-v[0], -v[1], -v[2]).exp(PI);
        let aa2 = r2.axis_angle();
        assert!((aa.axis - aa2.axis).norm() < 1e-6);
    }

    #[test]
    fn rotation_validation() {
        assert!(Rotation::from_matrix(Matrix3::identity()).is_ok());
        let bad = Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.001);
        assert!(matches!(
            Rotation::from_matrix(bad),
            Err(AlgebraError::NotARotation(_))
        ));
        // reflections are rejected even though they are orthonormal
        let refl = Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0);
        assert!(Rotation::from_matrix(refl).is_err());
    }
}
