//! Closed-form inversion on SO(3), multiindex `(1,2,1)` with `V1 = e_z`.

use crate::algebra::{atan2c, AlgebraVector, Rotation, So3Vector};
use crate::controllability::SystemClass;

use super::{DomainVerdict, IkError, CLAMP_TOL};

/// Canonical SO(3) system: `V1 = e_z` and a unit `V2 = (a, b, c)` with
/// `a^2 + b^2 != 0` and `c != ±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So3System {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl So3System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::So3(_), AlgebraVector::So3(v2)] => Some(So3System {
                a: v2.a,
                b: v2.b,
                c: v2.c,
            }),
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::So3(So3Vector::new(0.0, 0.0, 1.0)),
            AlgebraVector::So3(So3Vector::new(self.a, self.b, self.c)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1]
    }

    /// The local-inverse domain `R33 >= 2c^2 - 1` (the upper bound `R33 <= 1`
    /// holds for every rotation). Perpendicular fields (`c = 0`) make the
    /// domain all of SO(3).
    pub fn domain(&self, target: &Rotation) -> DomainVerdict {
        let margin = target.entry(3, 3) - (2.0 * self.c * self.c - 1.0);
        DomainVerdict::from_slacks(&[("R33 bound", margin)])
    }

    /// Same domain decided through the axis/angle representation:
    /// `sin^2(arg(e_z, omega)) (1 - cos(theta)) <= 2 (1 - c^2)`.
    pub fn domain_axis_angle(&self, target: &Rotation) -> bool {
        let aa = target.axis_angle();
        let sin2 = 1.0 - aa.axis[2] * aa.axis[2];
        sin2 * (1.0 - aa.angle.cos()) <= 2.0 * (1.0 - self.c * self.c)
    }

    /// Local right inverse of the `(1,2,1)` composition: the middle coasting
    /// time comes from `R33` alone, the outer two from matching the third
    /// column and third row of the target.
    pub fn ik(&self, target: &Rotation) -> Result<[f64; 3], IkError> {
        let (a, b, c) = (self.a, self.b, self.c);
        let u = (target.entry(3, 3) - c * c) / (1.0 - c * c);
        if !(-1.0 - CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&u) {
            return Err(IkError::OutOfRange {
                quantity: "arc-cosine argument",
                value: u,
            });
        }
        let t2 = u.clamp(-1.0, 1.0).acos();
        let z = (1.0 - t2.cos(), t2.sin());
        let w1 = a * c * z.0 + b * z.1;
        let w2 = c * b * z.0 - a * z.1;
        let v1 = a * c * z.0 - b * z.1;
        let v2 = c * b * z.0 + a * z.1;
        let (r13, r23) = (target.entry(1, 3), target.entry(2, 3));
        let (r31, r32) = (target.entry(3, 1), target.entry(3, 2));
        let t1 = atan2c(w1 * r13 + w2 * r23, -w2 * r13 + w1 * r23);
        let t3 = atan2c(v1 * r31 + v2 * r32, v2 * r31 - v1 * r32);
        Ok([t1, t2, t3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupElement;
    use crate::planners::fk;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn fig2_system() -> So3System {
        So3System {
            a: 0.0,
            b: FRAC_1_SQRT_2,
            c: FRAC_1_SQRT_2,
        }
    }

    fn fig2_target() -> Rotation {
        So3Vector::new(PI / 3.0, PI / 3.0, 0.0).exp(1.0)
    }

    #[test]
    fn identity_target_gives_zero_times() {
        let times = fig2_system().ik(&Rotation::identity()).unwrap();
        assert_eq!(times, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn perpendicular_fields_make_the_domain_global() {
        let sys = So3System {
            a: 0.6,
            b: 0.8,
            c: 0.0,
        };
        // R33 >= -1 holds for every rotation
        let r = So3Vector::new(1.0, 0.0, 0.0).exp(PI);
        let v = sys.domain(&r);
        assert!(v.inside);
    }

    #[test]
    fn reference_scenario_roundtrips() {
        let sys = fig2_system();
        let target = fig2_target();
        assert!(sys.domain(&target).inside);
        let times = sys.ik(&target).unwrap();
        let g = fk(&sys.fields(), sys.multiindex(), &times).unwrap();
        assert!(g.distance(&GroupElement::So3(target)).unwrap() < 1e-9);
    }

    #[test]
    fn outside_domain_constructed_from_axis_angle() {
        let sys = fig2_system();
        // 2c^2 - 1 = 0; a rotation about e_x by pi/2 + eps has R33 < 0
        let r = So3Vector::new(1.0, 0.0, 0.0).exp(PI / 2.0 + 0.1);
        let v = sys.domain(&r);
        assert!(!v.inside);
        assert_eq!(v.violated, "R33 bound");
        assert!(matches!(sys.ik(&r), Err(IkError::OutOfRange { .. })));
    }

    #[test]
    fn axis_angle_condition_matches_r33_condition() {
        let sys = fig2_system();
        for k in 0..200 {
            let t = 0.03 * k as f64;
            let axis = So3Vector::new((0.3 * t).sin(), (0.7 * t).cos(), (1.3 * t).sin());
            let n = axis.norm();
            if n < 1e-6 {
                continue;
            }
            let r = axis.scaled(1.0 / n).exp(t);
            let verdict = sys.domain(&r);
            if verdict.margin.abs() < 1e-9 {
                continue;
            }
            assert_eq!(sys.domain_axis_angle(&r), verdict.inside);
        }
    }

    #[test]
    fn small_rotations_always_inside() {
        // |theta| <= arccos(2c^2 - 1) is a sufficient condition
        let sys = fig2_system();
        let bound = (2.0 * sys.c * sys.c - 1.0).acos();
        for k in 1..50 {
            let t = bound * (k as f64) / 50.0;
            let r = So3Vector::new(0.5, -0.3, 0.8).scaled(1.0 / 0.9899494936611665).exp(t);
            assert!(sys.domain_axis_angle(&r), "t = {t}");
        }
    }
}
