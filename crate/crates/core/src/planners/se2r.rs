//! Closed-form inversion for the five SE(2)×ℝ families.
//!
//! Two-input systems need five primitives (`(1,2,1,2,1)`): the four-primitive
//! compositions are not invertible near the identity (see
//! [`crate::verify::impossibility_scan`]). Three-input systems get by with
//! four, the group's dimension.

use crate::algebra::{atan2c, ind_neg, sign0, AlgebraVector, Se2RPose, Se2RVector};
use crate::controllability::SystemClass;

use super::se2::{s2_shape_alpha_beta, s2_shape_times, s2_shape_verdict};
use super::{rotation_offset, DomainVerdict, IkError, CLAMP_TOL};

/// `(alpha, beta)` of the normal equations against the translation input
/// `(0, b2, c2, ·)`: the inverse of `[b2 -c2; c2 b2]` applied to the
/// rotation-compensated displacement.
fn translation_alpha_beta(theta: f64, x: f64, y: f64, b1: f64, c1: f64, b2: f64, c2: f64) -> (f64, f64) {
    let n2 = b2 * b2 + c2 * c2;
    let (ox, oy) = rotation_offset(theta, b1, c1);
    let (rx, ry) = (x - ox, y - oy);
    ((b2 * rx + c2 * ry) / n2, (-c2 * rx + b2 * ry) / n2)
}

// ---------------------------------------------------------------------------
// T1
// ---------------------------------------------------------------------------

/// Canonical `T1` system: `V1 = (1, b1, c1, d1)`, `V2 = (0, b2, c2, 1)` with
/// a non-trivial translation block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T1System {
    pub b1: f64,
    pub c1: f64,
    pub d1: f64,
    pub b2: f64,
    pub c2: f64,
}

impl T1System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2R(v1), AlgebraVector::Se2R(v2)] => Some(T1System {
                b1: v1.b,
                c1: v1.c,
                d1: v1.d,
                b2: v2.b,
                c2: v2.c,
            }),
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b1, self.c1, self.d1)),
            AlgebraVector::Se2R(Se2RVector::new(0.0, self.b2, self.c2, 1.0)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1, 2, 1]
    }

    /// Global right inverse of the `(1,2,1,2,1)` composition.
    ///
    /// The two coasts along `V2` split the prismatic budget
    /// `gamma = z - d1 theta` as `(gamma ∓ rho)/2` while their headings are
    /// aimed so the translation contributions stack along `(alpha, beta)`.
    /// The indicator terms keep the degenerate targets (`rho = gamma = 0`)
    /// at zero rotation instead of a `±pi` detour.
    pub fn ik(&self, target: &Se2RPose) -> [f64; 5] {
        let gamma = target.z - self.d1 * target.theta;
        let (alpha, beta) = translation_alpha_beta(
            target.theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        );
        let rho = alpha.hypot(beta);
        let phi = atan2c(alpha, beta);
        let t1 = std::f64::consts::PI * ind_neg(gamma - rho) + phi + atan2c((rho - gamma) / 2.0, 0.0);
        let t2 = (gamma - rho) / 2.0;
        let t3 = atan2c((rho * rho - gamma * gamma) / 4.0, 0.0)
            + std::f64::consts::PI * (ind_neg(gamma + rho) - ind_neg(gamma - rho));
        let t4 = (gamma + rho) / 2.0;
        let t5 = target.theta - t1 - t3;
        [t1, t2, t3, t4, t5]
    }
}

// ---------------------------------------------------------------------------
// T2
// ---------------------------------------------------------------------------

/// Canonical `T2` system: `V1 = (1, b1, c1, d1)`, `V2 = (1, b2, c2, d2)`
/// with `d1 != d2` and distinct translation blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T2System {
    pub b1: f64,
    pub c1: f64,
    pub d1: f64,
    pub b2: f64,
    pub c2: f64,
    pub d2: f64,
}

impl T2System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2R(v1), AlgebraVector::Se2R(v2)] => Some(T2System {
                b1: v1.b,
                c1: v1.c,
                d1: v1.d,
                b2: v2.b,
                c2: v2.c,
                d2: v2.d,
            }),
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b1, self.c1, self.d1)),
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b2, self.c2, self.d2)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1, 2, 1]
    }

    /// Conservative neighborhood of the identity: the `S2`-shape bounds with
    /// the separation doubled, plus a window on the prismatic mismatch
    /// `|z - d1 theta|` that shrinks as the planar part uses up chord length.
    pub fn domain(&self, target: &Se2RPose) -> DomainVerdict {
        let k2 = (self.c1 - self.c2).powi(2) + (self.b1 - self.b2).powi(2);
        let k = k2.sqrt();
        let planar = target.x * target.x + target.y * target.y;
        let trans = 4.0 * k2 - planar;
        let rot = 4.0 * k2
            - 2.0 * (1.0 - target.theta.cos()) * (self.b1 * self.b1 + self.c1 * self.c1);
        let s = planar.sqrt()
            + (self.b1 * self.b1 + self.c1 * self.c1).sqrt()
                * (2.0 * (1.0 - target.theta.cos())).sqrt();
        let arg = -1.0 + s / k;
        let allowance = if arg >= 1.0 {
            0.0
        } else {
            2.0 * (self.d2 - self.d1).abs() * arg.max(-1.0).acos()
        };
        let zslack = allowance - (target.z - self.d1 * target.theta).abs();
        DomainVerdict::from_slacks(&[
            ("translation bound", trans),
            ("rotation bound", rot),
            ("z window", zslack),
        ])
    }

    /// Local right inverse of the `(1,2,1,2,1)` composition.
    ///
    /// The prismatic budget fixes `t2 + t4 = gamma`; the planar equation asks
    /// two unit-circle chords subtending `t2` and `gamma - t2` to stack along
    /// `(alpha, beta)` with total length `rho`. `l = 2 sin(t2/2)` solves the
    /// resulting quadratic; each root belongs to one of two chord
    /// orientations, so both roots and both orientations are checked for the
    /// exact split before accepting.
    pub fn ik(&self, target: &Se2RPose) -> Result<[f64; 5], IkError> {
        let theta = target.theta;
        let gamma = (target.z - self.d1 * theta) / (self.d2 - self.d1);
        let (s, c) = (gamma / 2.0).sin_cos();
        let (alpha, beta) = s2_shape_alpha_beta(
            theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        );
        let rho = alpha.hypot(beta);
        let phi = atan2c(alpha, beta);

        let roots: [f64; 2] = if 1.0 + c <= CLAMP_TOL {
            // gamma at ±2pi: both coasts are half turns
            [2.0 * sign0(gamma), 2.0 * sign0(gamma)]
        } else {
            let disc = rho * rho * (1.0 + c) * (1.0 + c)
                - (1.0 + c) * (2.0 * rho * rho - 8.0 * s * s);
            if disc < -CLAMP_TOL {
                return Err(IkError::DegenerateDiscriminant(disc));
            }
            let r = disc.max(0.0).sqrt();
            [
                (rho * (1.0 + c) + sign0(gamma) * r) / (2.0 * (1.0 + c)),
                (rho * (1.0 + c) - sign0(gamma) * r) / (2.0 * (1.0 + c)),
            ]
        };

        for l in roots {
            if l.abs() > 2.0 + CLAMP_TOL {
                continue;
            }
            let l = l.clamp(-2.0, 2.0);
            let sl = (4.0 - l * l).max(0.0).sqrt();
            let t2 = 2.0 * atan2c(sl, l);
            let t1 = atan2c(l, sl) + phi;
            let t4 = gamma - t2;
            let m = 2.0 * (t4 / 2.0).sin();
            let rest = rho - l;
            let tol = 1e-9 * 1.0f64.max(m.abs()).max(rest.abs());
            let t3 = if (m - rest).abs() <= tol {
                -gamma / 2.0
            } else if (m + rest).abs() <= tol {
                std::f64::consts::PI - gamma / 2.0
            } else {
                continue;
            };
            let t5 = theta - t1 - t2 - t3 - t4;
            return Ok([t1, t2, t3, t4, t5]);
        }
        Err(IkError::InconsistentBranch)
    }
}

// ---------------------------------------------------------------------------
// T3 / T4 / T5
// ---------------------------------------------------------------------------

/// Canonical `T3` system: `V1 = (1, b1, c1, d1)`, `V2 = (0, b2, c2, 0)`,
/// `V3 = (1, b1, c1, d3)` with `d1 != d3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T3System {
    pub b1: f64,
    pub c1: f64,
    pub d1: f64,
    pub b2: f64,
    pub c2: f64,
    pub d3: f64,
}

impl T3System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2R(v1), AlgebraVector::Se2R(v2), AlgebraVector::Se2R(v3)] => {
                Some(T3System {
                    b1: v1.b,
                    c1: v1.c,
                    d1: v1.d,
                    b2: v2.b,
                    c2: v2.c,
                    d3: v3.d,
                })
            }
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b1, self.c1, self.d1)),
            AlgebraVector::Se2R(Se2RVector::new(0.0, self.b2, self.c2, 0.0)),
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b1, self.c1, self.d3)),
        ]
    }

    /// The composition coasts `V1, V3, V2, V1`.
    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 3, 2, 1]
    }

    /// Global right inverse of the `(1,3,2,1)` composition: `V3` absorbs the
    /// prismatic mismatch (it shares `V1`'s planar behavior), then `V2`
    /// coasts the planar chord.
    pub fn ik(&self, target: &Se2RPose) -> [f64; 4] {
        let theta = target.theta;
        let (alpha, beta) = translation_alpha_beta(
            theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        );
        let rho = alpha.hypot(beta);
        let heading = atan2c(alpha, beta);
        let t2 = (target.z - self.d1 * theta) / (self.d3 - self.d1);
        [heading - t2, t2, rho, theta - heading]
    }
}

/// Canonical `T4` system: `V1 = (1, b1, c1, d1)`, `V2 = (0, b2, c2, 0)`,
/// `V3 = (0, 0, 0, d3)` with `d3 != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T4System {
    pub b1: f64,
    pub c1: f64,
    pub d1: f64,
    pub b2: f64,
    pub c2: f64,
    pub d3: f64,
}

impl T4System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2R(v1), AlgebraVector::Se2R(v2), AlgebraVector::Se2R(v3)] => {
                Some(T4System {
                    b1: v1.b,
                    c1: v1.c,
                    d1: v1.d,
                    b2: v2.b,
                    c2: v2.c,
                    d3: v3.d,
                })
            }
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b1, self.c1, self.d1)),
            AlgebraVector::Se2R(Se2RVector::new(0.0, self.b2, self.c2, 0.0)),
            AlgebraVector::Se2R(Se2RVector::new(0.0, 0.0, 0.0, self.d3)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1, 3]
    }

    /// Global right inverse of the `(1,2,1,3)` composition: the planar part
    /// is exactly the `S1` solution, and the pure prismatic `V3` mops up the
    /// z mismatch.
    pub fn ik(&self, target: &Se2RPose) -> [f64; 4] {
        let theta = target.theta;
        let (alpha, beta) = translation_alpha_beta(
            theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        );
        let rho = alpha.hypot(beta);
        let heading = atan2c(alpha, beta);
        [
            heading,
            rho,
            theta - heading,
            (target.z - self.d1 * theta) / self.d3,
        ]
    }
}

/// Canonical `T5` system: `V1 = (1, b1, c1, d1)`, `V2 = (1, b2, c2, d1)`
/// with distinct translation blocks, `V3 = (0, 0, 0, d3)` with `d3 != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T5System {
    pub b1: f64,
    pub c1: f64,
    pub d1: f64,
    pub b2: f64,
    pub c2: f64,
    pub d3: f64,
}

impl T5System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2R(v1), AlgebraVector::Se2R(v2), AlgebraVector::Se2R(v3)] => {
                Some(T5System {
                    b1: v1.b,
                    c1: v1.c,
                    d1: v1.d,
                    b2: v2.b,
                    c2: v2.c,
                    d3: v3.d,
                })
            }
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b1, self.c1, self.d1)),
            AlgebraVector::Se2R(Se2RVector::new(1.0, self.b2, self.c2, self.d1)),
            AlgebraVector::Se2R(Se2RVector::new(0.0, 0.0, 0.0, self.d3)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1, 3]
    }

    /// Same shape as the `S2` domain; the prismatic direction is
    /// unconstrained because `V3` reaches any `z` directly.
    pub fn domain(&self, target: &Se2RPose) -> DomainVerdict {
        s2_shape_verdict(
            target.theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        )
    }

    /// Local right inverse of the `(1,2,1,3)` composition: the `S2` solution
    /// on the planar part plus a prismatic correction.
    pub fn ik(&self, target: &Se2RPose) -> Result<[f64; 4], IkError> {
        let theta = target.theta;
        let (alpha, beta) = s2_shape_alpha_beta(
            theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        );
        let [t1, t2, t3] = s2_shape_times(alpha, beta, theta)?;
        Ok([t1, t2, t3, (target.z - self.d1 * theta) / self.d3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupElement;
    use crate::planners::fk;
    use std::f64::consts::PI;

    fn fig3_system() -> T1System {
        T1System {
            b1: 1.0,
            c1: 0.0,
            d1: 0.5,
            b2: -2.0,
            c2: 0.0,
        }
    }

    fn roundtrip(fields: &[AlgebraVector], idx: &[usize], times: &[f64], target: &Se2RPose) -> f64 {
        let g = fk(fields, idx, times).unwrap();
        g.distance(&GroupElement::Se2R(*target)).unwrap()
    }

    #[test]
    fn t1_identity_target() {
        let sys = fig3_system();
        let times = sys.ik(&Se2RPose::identity());
        let r = roundtrip(&sys.fields(), sys.multiindex(), &times, &Se2RPose::identity());
        assert!(r < 1e-12);
    }

    #[test]
    fn t1_reference_scenario() {
        let sys = fig3_system();
        let target = Se2RPose::new(PI / 6.0, 10.0, 0.0, 1.0);
        let times = sys.ik(&target);
        assert_eq!(times.len(), 5);
        assert!(roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-9);
    }

    #[test]
    fn t1_large_prismatic_budget_both_signs() {
        // |gamma| > rho exercises the half-turn branches of components 1 and 3
        let sys = fig3_system();
        for z in [30.0, -30.0, 14.2, -0.3] {
            let target = Se2RPose::new(0.4, 1.0, -2.0, z);
            let times = sys.ik(&target);
            assert!(
                roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-9,
                "z = {z}"
            );
        }
    }

    #[test]
    fn t2_identity_roundtrips() {
        let sys = T2System {
            b1: 0.5,
            c1: 0.3,
            d1: 0.2,
            b2: 1.5,
            c2: -0.4,
            d2: 1.2,
        };
        let target = Se2RPose::identity();
        assert!(sys.domain(&target).inside);
        let times = sys.ik(&target).unwrap();
        assert!(roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-12);
    }

    #[test]
    fn t2_zero_gamma_reduces_to_planar_problem() {
        let sys = T2System {
            b1: 0.0,
            c1: 0.5,
            d1: 0.7,
            b2: 1.0,
            c2: 0.0,
            d2: -0.4,
        };
        // z = d1 * theta makes gamma = 0
        let theta = 0.6;
        let target = Se2RPose::new(theta, 0.4, -0.3, sys.d1 * theta);
        let times = sys.ik(&target).unwrap();
        assert!((times[1] + times[3]).abs() < 1e-12, "t2 + t4 = gamma = 0");
        assert!(roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-9);
    }

    #[test]
    fn t2_domain_z_window() {
        let sys = T2System {
            b1: 0.0,
            c1: 0.0,
            d1: 0.0,
            b2: 1.0,
            c2: 0.0,
            d2: 1.0,
        };
        // at the identity's planar part the window is |z| <= 2 arccos(-1) = 2pi
        let inside = sys.domain(&Se2RPose::new(0.0, 0.0, 0.0, 6.0));
        assert!(inside.inside);
        let outside = sys.domain(&Se2RPose::new(0.0, 0.0, 0.0, 6.5));
        assert!(!outside.inside);
        assert_eq!(outside.violated, "z window");
    }

    #[test]
    fn t3_identity_and_pure_prismatic() {
        let sys = T3System {
            b1: 0.0,
            c1: 0.0,
            d1: 0.0,
            b2: 1.0,
            c2: 0.0,
            d3: 1.0,
        };
        let times = sys.ik(&Se2RPose::identity());
        assert_eq!(times, [0.0, 0.0, 0.0, 0.0]);
        // z-only target: the V3 coast carries z, the V2 chord is empty
        let target = Se2RPose::new(0.0, 0.0, 0.0, 2.5);
        let times = sys.ik(&target);
        assert!((times[1] - 2.5).abs() < 1e-12);
        assert!(roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-9);
    }

    #[test]
    fn t4_z_slice_reduces_to_planar_solution() {
        let sys = T4System {
            b1: 0.3,
            c1: -0.6,
            d1: 0.8,
            b2: 1.0,
            c2: 0.5,
            d3: 1.0,
        };
        let theta = -0.7;
        let target = Se2RPose::new(theta, 2.0, 1.0, sys.d1 * theta);
        let times = sys.ik(&target);
        assert_eq!(times[3], 0.0);
        assert!(roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-9);
    }

    #[test]
    fn t4_identity_gives_zero_times() {
        let sys = T4System {
            b1: 0.0,
            c1: 0.0,
            d1: 0.0,
            b2: 0.0,
            c2: 1.0,
            d3: 1.0,
        };
        assert_eq!(sys.ik(&Se2RPose::identity()), [0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn t5_z_only_target() {
        let sys = T5System {
            b1: 0.0,
            c1: 0.5,
            d1: 0.3,
            b2: 1.0,
            c2: 0.0,
            d3: 2.0,
        };
        let target = Se2RPose::new(0.0, 0.0, 0.0, 3.0);
        assert!(sys.domain(&target).inside);
        let times = sys.ik(&target).unwrap();
        assert!((times[3] - 1.5).abs() < 1e-12);
        assert!(roundtrip(&sys.fields(), sys.multiindex(), &times, &target) < 1e-9);
    }
}
