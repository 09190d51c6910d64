//! Closed-form inversion for the two SE(2) families, multiindex `(1,2,1)`.

use crate::algebra::{atan2c, AlgebraVector, Se2Pose, Se2Vector};
use crate::controllability::SystemClass;

use super::{rotation_offset, DomainVerdict, IkError, CLAMP_TOL};

/// Canonical `S1` system: `V1 = (1, b1, c1)`, `V2 = (0, b2, c2)` with
/// `b2^2 + c2^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S1System {
    pub b1: f64,
    pub c1: f64,
    pub b2: f64,
    pub c2: f64,
}

impl S1System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2(v1), AlgebraVector::Se2(v2)] => Some(S1System {
                b1: v1.b,
                c1: v1.c,
                b2: v2.b,
                c2: v2.c,
            }),
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2(Se2Vector::new(1.0, self.b1, self.c1)),
            AlgebraVector::Se2(Se2Vector::new(0.0, self.b2, self.c2)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1]
    }

    /// Global right inverse of the `(1,2,1)` composition: rotate to face the
    /// required translation residue, coast along the translation field, then
    /// finish the rotation.
    pub fn ik(&self, target: &Se2Pose) -> [f64; 3] {
        let (ox, oy) = rotation_offset(target.theta, self.b1, self.c1);
        let (rx, ry) = (target.x - ox, target.y - oy);
        let alpha = self.b2 * rx + self.c2 * ry;
        let beta = -self.c2 * rx + self.b2 * ry;
        let rho = alpha.hypot(beta);
        let t1 = atan2c(alpha, beta);
        [t1, rho, target.theta - t1]
    }
}

/// Shared shape of the `S2` and `T5` local domains: the translation-block
/// separation must dominate both the target's displacement and the net
/// rotation's own excursion.
pub(crate) fn s2_shape_verdict(
    theta: f64,
    x: f64,
    y: f64,
    b1: f64,
    c1: f64,
    b2: f64,
    c2: f64,
) -> DomainVerdict {
    let k2 = (c1 - c2).powi(2) + (b1 - b2).powi(2);
    let trans = k2 - (x * x + y * y);
    let rot = k2 - 2.0 * (1.0 - theta.cos()) * (b1 * b1 + c1 * c1);
    DomainVerdict::from_slacks(&[("translation bound", trans), ("rotation bound", rot)])
}

/// `(alpha, beta)` of the difference-matrix normal equations shared by `S2`,
/// `T2` and `T5`.
pub(crate) fn s2_shape_alpha_beta(
    theta: f64,
    x: f64,
    y: f64,
    b1: f64,
    c1: f64,
    b2: f64,
    c2: f64,
) -> (f64, f64) {
    let k2 = (c1 - c2).powi(2) + (b1 - b2).powi(2);
    let (ox, oy) = rotation_offset(theta, b1, c1);
    let (rx, ry) = (x - ox, y - oy);
    let alpha = ((c1 - c2) * rx + (b2 - b1) * ry) / k2;
    let beta = ((b1 - b2) * rx + (c1 - c2) * ry) / k2;
    (alpha, beta)
}

/// The three `S2`-style coasting times for chord length `rho`, heading
/// `atan2c(alpha, beta)` and net rotation `theta`.
pub(crate) fn s2_shape_times(
    alpha: f64,
    beta: f64,
    theta: f64,
) -> Result<[f64; 3], IkError> {
    let rho = alpha.hypot(beta);
    let under = 4.0 - rho * rho;
    if under < -CLAMP_TOL {
        return Err(IkError::OutOfRange {
            quantity: "chord length rho",
            value: rho,
        });
    }
    let sq = under.max(0.0).sqrt();
    let t1 = atan2c(rho, sq) + atan2c(alpha, beta);
    let t2 = atan2c(2.0 - rho * rho, rho * sq);
    Ok([t1, t2, theta - t1 - t2])
}

/// Canonical `S2` system: `V1 = (1, b1, c1)`, `V2 = (1, b2, c2)` with
/// distinct translation blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S2System {
    pub b1: f64,
    pub c1: f64,
    pub b2: f64,
    pub c2: f64,
}

impl S2System {
    pub fn from_class(sc: &SystemClass) -> Option<Self> {
        match sc.canonical_fields.as_slice() {
            [AlgebraVector::Se2(v1), AlgebraVector::Se2(v2)] => Some(S2System {
                b1: v1.b,
                c1: v1.c,
                b2: v2.b,
                c2: v2.c,
            }),
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2(Se2Vector::new(1.0, self.b1, self.c1)),
            AlgebraVector::Se2(Se2Vector::new(1.0, self.b2, self.c2)),
        ]
    }

    pub fn multiindex(&self) -> &'static [usize] {
        &[1, 2, 1]
    }

    /// Conservative neighborhood of the identity on which [`S2System::ik`]
    /// is proven to invert. The true domain is strictly larger.
    pub fn domain(&self, target: &Se2Pose) -> DomainVerdict {
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

    /// Local right inverse of the `(1,2,1)` composition. Evaluates the
    /// closed form regardless of the domain verdict; fails only where the
    /// chord construction itself breaks down (`rho > 2`).
    pub fn ik(&self, target: &Se2Pose) -> Result<[f64; 3], IkError> {
        let (alpha, beta) = s2_shape_alpha_beta(
            target.theta,
            target.x,
            target.y,
            self.b1,
            self.c1,
            self.b2,
            self.c2,
        );
        s2_shape_times(alpha, beta, target.theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planners::fk;
    use std::f64::consts::PI;

    fn fig1_s1() -> S1System {
        S1System {
            b1: 0.0,
            c1: 0.5,
            b2: 1.0,
            c2: 0.0,
        }
    }

    fn fig1_s2() -> S2System {
        S2System {
            b1: 0.0,
            c1: 0.5,
            b2: 1.0,
            c2: 0.0,
        }
    }

    fn roundtrip_s1(sys: &S1System, target: &Se2Pose) -> f64 {
        let times = sys.ik(target);
        let g = fk(&sys.fields(), sys.multiindex(), &times).unwrap();
        match g {
            crate::algebra::GroupElement::Se2(p) => p.distance(target),
            _ => unreachable!(),
        }
    }

    #[test]
    fn s1_identity_target_gives_zero_times() {
        let times = fig1_s1().ik(&Se2Pose::identity());
        assert_eq!(times, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn s1_pure_rotation_with_centered_first_field() {
        let sys = S1System {
            b1: 0.0,
            c1: 0.0,
            b2: 0.0,
            c2: 1.0,
        };
        let times = sys.ik(&Se2Pose::new(1.1, 0.0, 0.0));
        assert_eq!(times[0], 0.0);
        assert_eq!(times[1], 0.0);
        assert!((times[2] - 1.1).abs() < 1e-15);
    }

    #[test]
    fn s1_reference_scenario() {
        // frozen against the independent series/compose oracle
        let target = Se2Pose::new(PI / 6.0, 1.0, 1.0);
        let times = fig1_s1().ik(&target);
        assert!((times[0] - 0.6126787986714072).abs() < 1e-12);
        assert!((times[1] - 1.3042092985113019).abs() < 1e-12);
        assert!((times[2] + 0.08908002307310836).abs() < 1e-12);
        assert!(roundtrip_s1(&fig1_s1(), &target) < 1e-12);
    }

    #[test]
    fn s2_domain_verdicts() {
        let sys = fig1_s2();
        assert!(sys.domain(&Se2Pose::identity()).inside);
        let far = sys.domain(&Se2Pose::new(0.0, 50.0, 0.0));
        assert!(!far.inside);
        assert_eq!(far.violated, "translation bound");
        // boundary is inside: ||(x,y)||^2 == K^2 == 1.25 exactly
        let k = 1.25f64.sqrt();
        let edge = sys.domain(&Se2Pose::new(0.0, k, 0.0));
        assert!(edge.inside && edge.margin.abs() < 1e-12);
    }

    #[test]
    fn s2_identity_roundtrips() {
        let sys = fig1_s2();
        let times = sys.ik(&Se2Pose::identity()).unwrap();
        let g = fk(&sys.fields(), sys.multiindex(), &times).unwrap();
        assert!(
            g.distance(&crate::algebra::GroupElement::Se2(Se2Pose::identity()))
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn s2_reference_target_is_outside_the_conservative_domain_yet_inverts() {
        let sys = fig1_s2();
        let target = Se2Pose::new(PI / 6.0, 1.0, 1.0);
        assert!(!sys.domain(&target).inside);
        let times = sys.ik(&target).unwrap();
        let g = fk(&sys.fields(), sys.multiindex(), &times).unwrap();
        assert!(
            g.distance(&crate::algebra::GroupElement::Se2(target))
                .unwrap()
                < 1e-9
        );
    }

    #[test]
    fn s2_rejects_unreachable_chords() {
        let sys = fig1_s2();
        let err = sys.ik(&Se2Pose::new(0.0, 40.0, 0.0));
        assert!(matches!(err, Err(IkError::OutOfRange { .. })));
    }
}
