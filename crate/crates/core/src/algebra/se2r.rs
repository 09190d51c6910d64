//! Planar rigid displacements with an extra prismatic axis.

use nalgebra::Matrix4;

use super::se2::{Se2Pose, Se2Vector};

/// A left-invariant field on SE(2)×ℝ: `a e_theta + b e_x + c e_y + d e_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se2RVector {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Prismatic rate along `e_z`.
    pub d: f64,
}

impl Se2RVector {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Se2RVector { a, b, c, d }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Se2RVector::new(s * self.a, s * self.b, s * self.c, s * self.d)
    }

    pub fn planar(&self) -> Se2Vector {
        Se2Vector::new(self.a, self.b, self.c)
    }

    /// Generator in the 4×4 homogeneous representation (rotation about the
    /// z-axis plus spatial translation).
    pub fn hat(&self) -> Matrix4<f64> {
        Matrix4::new(
            0.0, -self.a, 0.0, self.b, //
            self.a, 0.0, 0.0, self.c, //
            0.0, 0.0, 0.0, self.d, //
            0.0, 0.0, 0.0, 0.0,
        )
    }

    /// Component-wise exponential: the SE(2) closed form on `(a,b,c)` and
    /// `z = t d` on the prismatic factor.
    pub fn exp(&self, t: f64) -> Se2RPose {
        let g = self.planar().exp(t);
        Se2RPose {
            theta: g.theta,
            x: g.x,
            y: g.y,
            z: t * self.d,
        }
    }

    /// `[v, w] = (0, c1 a2 - a1 c2, a1 b2 - b1 a2, 0)`; the prismatic axis is
    /// central.
    pub fn bracket(&self, other: &Se2RVector) -> Se2RVector {
        let p = self.planar().bracket(&other.planar());
        Se2RVector::new(0.0, p.b, p.c, 0.0)
    }
}

/// A pose `(theta, x, y, z)` with `theta` in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se2RPose {
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Se2RPose {
    pub fn new(theta: f64, x: f64, y: f64, z: f64) -> Self {
        let g = Se2Pose::new(theta, x, y);
        Se2RPose {
            theta: g.theta,
            x,
            y,
            z,
        }
    }

    pub fn identity() -> Self {
        Se2RPose {
            theta: 0.0,
            x: 0.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn planar(&self) -> Se2Pose {
        Se2Pose {
            theta: self.theta,
            x: self.x,
            y: self.y,
        }
    }

    /// Homogeneous 4×4 representative: a z-axis rotation by `theta` together
    /// with translation `(x, y, z)`.
    pub fn homogeneous(&self) -> Matrix4<f64> {
        let (s, c) = self.theta.sin_cos();
        Matrix4::new(
            c, -s, 0.0, self.x, //
            s, c, 0.0, self.y, //
            0.0, 0.0, 1.0, self.z, //
            0.0, 0.0, 0.0, 1.0,
        )
    }

    pub fn compose(&self, other: &Se2RPose) -> Se2RPose {
        let g = self.planar().compose(&other.planar());
        Se2RPose {
            theta: g.theta,
            x: g.x,
            y: g.y,
            z: self.z + other.z,
        }
    }

    pub fn inverse(&self) -> Se2RPose {
        let g = self.planar().inverse();
        Se2RPose {
            theta: g.theta,
            x: g.x,
            y: g.y,
            z: -self.z,
        }
    }

    pub fn distance(&self, other: &Se2RPose) -> f64 {
        (self.homogeneous() - other.homogeneous()).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn exp_with_zero_rotation_is_linear() {
        let g = Se2RVector::new(0.0, 0.5, -1.0, 2.0).exp(1.0);
        assert_eq!((g.theta, g.x, g.y, g.z), (0.0, 0.5, -1.0, 2.0));
    }

    #[test]
    fn decoupled_screw() {
        let g = Se2RVector::new(1.0, 0.0, 0.0, 1.0).exp(0.9);
        assert!((g.theta - 0.9).abs() < 1e-15);
        assert_eq!((g.x, g.y), (0.0, 0.0));
        assert!((g.z - 0.9).abs() < 1e-15);
    }

    #[test]
    fn planar_part_matches_se2_with_prismatic_offset() {
        let g = Se2RVector::new(1.0, 1.0, 0.0, 0.5).exp(FRAC_PI_2);
        assert!((g.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((g.x - 1.0).abs() < 1e-14 && (g.y - 1.0).abs() < 1e-14);
        assert!((g.z - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn compose_adds_z_and_rotates_xy() {
        let g = Se2RPose::new(FRAC_PI_2, 1.0, 0.0, 2.0);
        let h = Se2RPose::new(0.0, 1.0, 0.0, -0.5);
        let gh = g.compose(&h);
        assert!((gh.x - 1.0).abs() < 1e-15 && (gh.y - 1.0).abs() < 1e-15);
        assert!((gh.z - 1.5).abs() < 1e-15);
        assert!(g.compose(&g.inverse()).distance(&Se2RPose::identity()) < 1e-14);
    }
}
