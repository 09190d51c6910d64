//! Fixed-basis Lie algebra vectors, group elements and closed-form
//! exponential maps shared by every planner.
//!
//! Conventions used throughout:
//!
//! * se(2) basis `{e_theta, e_x, e_y}`; a field is written `(a, b, c)`.
//! * so(3) basis `{hat(e_x), hat(e_y), hat(e_z)}`; a field is `(a, b, c)`
//!   under the hat isomorphism of `(R^3, ×)` onto `(so(3), [.,.])`.
//! * se(2)×ℝ appends a prismatic rate `d` along `e_z`: `(a, b, c, d)`.
//! * Pose angles are stored canonically in `(-pi, pi]`; coasting times are
//!   unwrapped signed reals.
//! * Pose equality is measured by the Frobenius norm of the difference of
//!   homogeneous matrix representatives ([`GroupElement::distance`]).

mod scalar;
mod se2;
mod se2r;
mod so3;

pub use scalar::{atan2c, ind_neg, sign0, sinc_over, versinc_over, wrap_angle};
pub use se2::{Se2Pose, Se2Vector};
pub use se2r::{Se2RPose, Se2RVector};
pub use so3::{AxisAngle, Rotation, So3Vector};

use thiserror::Error;

/// Tolerance used for pose comparisons unless a caller states its own.
pub const POSE_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("group mismatch: {0:?} vs {1:?}")]
    GroupMismatch(Group, Group),
    #[error("algebra mismatch: {0:?} vs {1:?}")]
    AlgebraMismatch(Group, Group),
    #[error("axis is not unit length (norm {0})")]
    NonUnitAxis(f64),
    #[error("matrix is not a rotation (orthonormality/determinant defect {0})")]
    NotARotation(f64),
}

/// The three configuration groups of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Group {
    #[serde(rename = "SE2")]
    Se2,
    #[serde(rename = "SO3")]
    So3,
    #[serde(rename = "SE2xR")]
    Se2R,
}

impl Group {
    /// Dimension of the group (= generic minimum number of primitives).
    pub fn dim(self) -> usize {
        match self {
            Group::Se2 | Group::So3 => 3,
            Group::Se2R => 4,
        }
    }

    /// Number of coefficients of an algebra vector on this group.
    pub fn coeffs(self) -> usize {
        match self {
            Group::Se2 | Group::So3 => 3,
            Group::Se2R => 4,
        }
    }
}

/// A left-invariant vector field on one of the three groups, identified with
/// its coefficient vector at the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgebraVector {
    Se2(Se2Vector),
    So3(So3Vector),
    Se2R(Se2RVector),
}

impl AlgebraVector {
    pub fn group(&self) -> Group {
        match self {
            AlgebraVector::Se2(_) => Group::Se2,
            AlgebraVector::So3(_) => Group::So3,
            AlgebraVector::Se2R(_) => Group::Se2R,
        }
    }

    /// Coefficients in the fixed basis, `[a, b, c]` or `[a, b, c, d]`.
    pub fn coeffs(&self) -> Vec<f64> {
        match self {
            AlgebraVector::Se2(v) => vec![v.a, v.b, v.c],
            AlgebraVector::So3(v) => vec![v.a, v.b, v.c],
            AlgebraVector::Se2R(v) => vec![v.a, v.b, v.c, v.d],
        }
    }

    pub fn from_coeffs(group: Group, c: &[f64]) -> Option<Self> {
        match (group, c) {
            (Group::Se2, [a, b, cc]) => Some(AlgebraVector::Se2(Se2Vector::new(*a, *b, *cc))),
            (Group::So3, [a, b, cc]) => Some(AlgebraVector::So3(So3Vector::new(*a, *b, *cc))),
            (Group::Se2R, [a, b, cc, d]) => {
                Some(AlgebraVector::Se2R(Se2RVector::new(*a, *b, *cc, *d)))
            }
            _ => None,
        }
    }

    /// Scale every coefficient. Flowing along `v.scaled(s)` for time `t`
    /// equals flowing along `v` for time `s*t`.
    pub fn scaled(&self, s: f64) -> Self {
        match self {
            AlgebraVector::Se2(v) => AlgebraVector::Se2(v.scaled(s)),
            AlgebraVector::So3(v) => AlgebraVector::So3(v.scaled(s)),
            AlgebraVector::Se2R(v) => AlgebraVector::Se2R(v.scaled(s)),
        }
    }

    /// Closed-form exponential of `t * self`.
    pub fn exp(&self, t: f64) -> GroupElement {
        match self {
            AlgebraVector::Se2(v) => GroupElement::Se2(v.exp(t)),
            AlgebraVector::So3(v) => GroupElement::So3(v.exp(t)),
            AlgebraVector::Se2R(v) => GroupElement::Se2R(v.exp(t)),
        }
    }

    /// Lie bracket `[self, other]`, matrix commutator of the generators.
    pub fn bracket(&self, other: &AlgebraVector) -> Result<AlgebraVector, AlgebraError> {
        match (self, other) {
            (AlgebraVector::Se2(v), AlgebraVector::Se2(w)) => Ok(AlgebraVector::Se2(v.bracket(w))),
            (AlgebraVector::So3(v), AlgebraVector::So3(w)) => Ok(AlgebraVector::So3(v.bracket(w))),
            (AlgebraVector::Se2R(v), AlgebraVector::Se2R(w)) => {
                Ok(AlgebraVector::Se2R(v.bracket(w)))
            }
            _ => Err(AlgebraError::AlgebraMismatch(self.group(), other.group())),
        }
    }
}

/// A pose on one of the three groups.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    Se2(Se2Pose),
    So3(Rotation),
    Se2R(Se2RPose),
}

impl GroupElement {
    pub fn identity(group: Group) -> Self {
        match group {
            Group::Se2 => GroupElement::Se2(Se2Pose::identity()),
            Group::So3 => GroupElement::So3(Rotation::identity()),
            Group::Se2R => GroupElement::Se2R(Se2RPose::identity()),
        }
    }

    pub fn group(&self) -> Group {
        match self {
            GroupElement::Se2(_) => Group::Se2,
            GroupElement::So3(_) => Group::So3,
            GroupElement::Se2R(_) => Group::Se2R,
        }
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, AlgebraError> {
        match (self, other) {
            (GroupElement::Se2(g), GroupElement::Se2(h)) => Ok(GroupElement::Se2(g.compose(h))),
            (GroupElement::So3(g), GroupElement::So3(h)) => Ok(GroupElement::So3(g.compose(h))),
            (GroupElement::Se2R(g), GroupElement::Se2R(h)) => Ok(GroupElement::Se2R(g.compose(h))),
            _ => Err(AlgebraError::GroupMismatch(self.group(), other.group())),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Se2(g) => GroupElement::Se2(g.inverse()),
            GroupElement::So3(g) => GroupElement::So3(g.inverse()),
            GroupElement::Se2R(g) => GroupElement::Se2R(g.inverse()),
        }
    }

    /// Frobenius norm of the difference of homogeneous representatives.
    pub fn distance(&self, other: &GroupElement) -> Result<f64, AlgebraError> {
        match (self, other) {
            (GroupElement::Se2(g), GroupElement::Se2(h)) => Ok(g.distance(h)),
            (GroupElement::So3(g), GroupElement::So3(h)) => Ok(g.distance(h)),
            (GroupElement::Se2R(g), GroupElement::Se2R(h)) => Ok(g.distance(h)),
            _ => Err(AlgebraError::GroupMismatch(self.group(), other.group())),
        }
    }

    /// Pose coordinates: `[theta, x, y]`, nine row-major rotation entries, or
    /// `[theta, x, y, z]`.
    pub fn coords(&self) -> Vec<f64> {
        match self {
            GroupElement::Se2(g) => vec![g.theta, g.x, g.y],
            GroupElement::So3(g) => g.matrix().transpose().as_slice().to_vec(),
            GroupElement::Se2R(g) => vec![g.theta, g.x, g.y, g.z],
        }
    }
}
