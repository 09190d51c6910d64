//! Planar rigid displacements.

use nalgebra::{Matrix3, Vector2};

use super::scalar::{sinc_over, versinc_over, wrap_angle};

/// A left-invariant field on SE(2): `a e_theta + b e_x + c e_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se2Vector {
    /// Rotation rate (coefficient of `e_theta`).
    pub a: f64,
    /// x-translation rate.
    pub b: f64,
    /// y-translation rate.
    pub c: f64,
}

impl Se2Vector {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Se2Vector { a, b, c }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Se2Vector::new(s * self.a, s * self.b, s * self.c)
    }

    /// Generator matrix in the homogeneous representation.
    pub fn hat(&self) -> Matrix3<f64> {
        Matrix3::new(0.0, -self.a, self.b, self.a, 0.0, self.c, 0.0, 0.0, 0.0)
    }

    /// Closed-form exponential of `t * self`:
    /// `exp(a,b,c) = (a, sin(a)/a b - (1-cos a)/a c, (1-cos a)/a b + sin(a)/a c)`
    /// applied to the scaled coefficients, with the series branch taking over
    /// for small rotation angles.
    pub fn exp(&self, t: f64) -> Se2Pose {
        let alpha = t * self.a;
        let (tb, tc) = (t * self.b, t * self.c);
        let s = sinc_over(alpha);
        let v = versinc_over(alpha);
        Se2Pose::new(alpha, s * tb - v * tc, v * tb + s * tc)
    }

    /// `[v, w] = (0, c1 a2 - a1 c2, a1 b2 - b1 a2)`.
    pub fn bracket(&self, other: &Se2Vector) -> Se2Vector {
        Se2Vector::new(
            0.0,
            self.c * other.a - self.a * other.c,
            self.a * other.b - self.b * other.a,
        )
    }
}

/// A planar pose `(theta, x, y)` with `theta` stored in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se2Pose {
    pub theta: f64,
    pub x: f64,
    pub y: f64,
}

impl Se2Pose {
    /// Wraps `theta` into `(-pi, pi]`.
    pub fn new(theta: f64, x: f64, y: f64) -> Self {
        Se2Pose {
            theta: wrap_angle(theta),
            x,
            y,
        }
    }

    pub fn identity() -> Self {
        Se2Pose {
            theta: 0.0,
            x: 0.0,
            y: 0.0,
        }
    }

    /// Homogeneous 3×3 representative.
    pub fn homogeneous(&self) -> Matrix3<f64> {
        let (s, c) = self.theta.sin_cos();
        Matrix3::new(c, -s, self.x, s, c, self.y, 0.0, 0.0, 1.0)
    }

    pub fn compose(&self, other: &Se2Pose) -> Se2Pose {
        let (s, c) = self.theta.sin_cos();
        Se2Pose::new(
            self.theta + other.theta,
            self.x + c * other.x - s * other.y,
            self.y + s * other.x + c * other.y,
        )
    }

    pub fn inverse(&self) -> Se2Pose {
        let (s, c) = self.theta.sin_cos();
        Se2Pose::new(-self.theta, -(c * self.x + s * self.y), s * self.x - c * self.y)
    }

    pub fn translation(&self) -> Vector2<f64> {
        Vector2::new(self.x, self.y)
    }

    /// Frobenius norm of the difference of homogeneous representatives.
    pub fn distance(&self, other: &Se2Pose) -> f64 {
        (self.homogeneous() - other.homogeneous()).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn exp_of_pure_translation_is_the_coefficients() {
        let g = Se2Vector::new(0.0, 0.7, -1.3).exp(1.0);
        assert_eq!((g.theta, g.x, g.y), (0.0, 0.7, -1.3));
    }

    #[test]
    fn exp_of_pure_rotation() {
        let g = Se2Vector::new(1.0, 0.0, 0.0).exp(0.8);
        assert!((g.theta - 0.8).abs() < 1e-15);
        assert_eq!((g.x, g.y), (0.0, 0.0));
        // wraps past pi
        let g = Se2Vector::new(1.0, 0.0, 0.0).exp(5.0);
        assert!((g.theta - wrap_angle(5.0)).abs() < 1e-15);
    }

    #[test]
    fn exp_unit_rotation_with_forward_drive() {
        // integrating (1,1,0) for pi/2 sweeps a quarter circle of radius 1
        let g = Se2Vector::new(1.0, 1.0, 0.0).exp(FRAC_PI_2);
        assert!((g.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((g.x - 1.0).abs() < 1e-15);
        assert!((g.y - 1.0).abs() < 1e-14);
    }

    #[test]
    fn compose_matches_matrix_product() {
        let g = Se2Pose::new(FRAC_PI_2, 1.0, 0.0);
        let h = Se2Pose::new(0.0, 1.0, 0.0);
        let gh = g.compose(&h);
        assert!((gh.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((gh.x - 1.0).abs() < 1e-15 && (gh.y - 1.0).abs() < 1e-15);
        let m = g.homogeneous() * h.homogeneous();
        assert!((gh.homogeneous() - m).norm() < 1e-14);
    }

    #[test]
    fn inverse_cancels() {
        let g = Se2Pose::new(2.3, -4.0, 0.5);
        let e = g.compose(&g.inverse());
        assert!(e.distance(&Se2Pose::identity()) < 1e-14);
        let r = Se2Pose::new(1.1, 0.0, 0.0);
        let ri = r.inverse();
        assert!((ri.theta + 1.1).abs() < 1e-15 && ri.x == 0.0 && ri.y == 0.0);
    }

    #[test]
    fn theta_pi_is_canonical() {
        let g = Se2Pose::new(-PI, 1.0, 2.0);
        assert_eq!(g.theta, PI);
    }
}
