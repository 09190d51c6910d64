//! Forward kinematics over motion primitives and the catalog of closed-form
//! inverse-kinematics maps.
//!
//! Each canonical family carries one fixed multiindex and a coasting-time map
//! that is an exact right inverse of the corresponding forward-kinematics
//! composition — global for `S1`, `T1`, `T3`, `T4`, and local (valid on an
//! explicitly checkable neighborhood of the identity) for `S2`, `SO3`, `T2`,
//! `T5`. The top-level [`plan`] classifies a user system, plans on the
//! canonical form, and maps the coasting times back through the
//! normalization record.
//!
//! The local domains are conservative: targets outside a domain predicate are
//! refused by default, but forced evaluation is available because the maps
//! frequently still invert well beyond the proven neighborhood (the
//! [`crate::verify::domain_tightness`] experiment measures by how much).

mod plan;
pub mod published;
mod se2;
mod se2r;
mod so3;
mod trajectory;

pub use plan::{plan, plan_with_options, PlanOptions, PlannedMotion};
pub use se2::{S1System, S2System};
pub use se2r::{T1System, T2System, T3System, T4System, T5System};
pub use so3::So3System;
pub use trajectory::sample_trajectory;

use crate::algebra::{AlgebraVector, GroupElement};
use crate::controllability::Family;
use thiserror::Error;

/// Clamp window for square-root and arc-cosine arguments: float noise within
/// this distance of the admissible boundary is clamped, anything farther out
/// is a genuine domain violation.
pub(crate) const CLAMP_TOL: f64 = 1e-12;

/// An ordered list of motion primitives over the *user's* field list.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MotionPlan {
    pub steps: Vec<PlanStep>,
}

/// One primitive: flow along `field` (1-based index into the user's list)
/// for the signed coasting time `time`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PlanStep {
    pub field: usize,
    pub time: f64,
}

impl MotionPlan {
    pub fn new(steps: Vec<PlanStep>) -> Self {
        MotionPlan { steps }
    }

    pub fn from_parts(multiindex: &[usize], times: &[f64]) -> Self {
        MotionPlan {
            steps: multiindex
                .iter()
                .zip(times)
                .map(|(&field, &time)| PlanStep { field, time })
                .collect(),
        }
    }

    pub fn multiindex(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.field).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.time).collect()
    }

    /// Executes the plan from the identity over the given fields.
    pub fn execute(&self, fields: &[AlgebraVector]) -> Result<GroupElement, FkError> {
        fk(fields, &self.multiindex(), &self.times())
    }
}

/// Inside/outside result of a local-inverse domain predicate.
///
/// `margin` is the signed slack of the tightest constraint (non-negative iff
/// inside; the domains are closed, so a zero margin is inside). `violated`
/// names the most violated constraint and is empty when inside.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DomainVerdict {
    pub inside: bool,
    pub violated: String,
    pub margin: f64,
}

impl DomainVerdict {
    /// Combines named slacks: inside iff all are non-negative.
    pub(crate) fn from_slacks(slacks: &[(&str, f64)]) -> Self {
        let (name, margin) = slacks
            .iter()
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .copied()
            .expect("at least one constraint");
        DomainVerdict {
            inside: margin >= 0.0,
            violated: if margin >= 0.0 {
                String::new()
            } else {
                name.to_string()
            },
            margin,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FkError {
    #[error("multiindex length {indices} does not match times length {times}")]
    LengthMismatch { indices: usize, times: usize },
    #[error("field index {0} out of range (1..={1})")]
    BadIndex(usize, usize),
    #[error("fields are not all on the same group")]
    MixedGroups,
}

/// A closed-form map could not be evaluated at this target: the quantity
/// left its admissible range by more than the clamp window, or no branch of
/// a multi-valued step was consistent. These conditions are reported, never
/// silently clamped away.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum IkError {
    #[error("{quantity} = {value} out of range for the closed form")]
    OutOfRange { quantity: &'static str, value: f64 },
    #[error("discriminant {0} negative: no real chord split exists")]
    DegenerateDiscriminant(f64),
    #[error("no chord branch matched the prescribed split")]
    InconsistentBranch,
}

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("invalid system: {0}")]
    BadInput(String),
    #[error("system is not controllable")]
    Uncontrollable,
    #[error("system is controllable but outside the planner catalog")]
    OutOfCatalog,
    #[error("target outside the local-inverse domain ({})", .0.violated)]
    OutsideDomain(DomainVerdict),
    #[error("closed form undefined at this target: {0}")]
    Ik(IkError),
}

/// Product of exponentials `exp(t1 V_i1) ... exp(tk V_ik)`.
///
/// `multiindex` carries 1-based indices into `fields`, matching the catalog's
/// multiindex notation. An empty plan yields the identity.
pub fn fk(
    fields: &[AlgebraVector],
    multiindex: &[usize],
    times: &[f64],
) -> Result<GroupElement, FkError> {
    if multiindex.len() != times.len() {
        return Err(FkError::LengthMismatch {
            indices: multiindex.len(),
            times: times.len(),
        });
    }
    let group = fields.first().map(|f| f.group()).unwrap_or_else(|| {
        // an empty field list only supports the empty plan; group is moot,
        // default to SE(2)
        crate::algebra::Group::Se2
    });
    if fields.iter().any(|f| f.group() != group) {
        return Err(FkError::MixedGroups);
    }
    let mut g = GroupElement::identity(group);
    for (&i, &t) in multiindex.iter().zip(times) {
        if i == 0 || i > fields.len() {
            return Err(FkError::BadIndex(i, fields.len()));
        }
        g = g
            .compose(&fields[i - 1].exp(t))
            .expect("same group by construction");
    }
    Ok(g)
}

/// `(theta, x, y)` offset produced by the rotation-carrying field
/// `(1, b1, c1)` after a net rotation `theta`:
/// `[-c1 b1; b1 c1] [1-cos(theta); sin(theta)]`.
pub(crate) fn rotation_offset(theta: f64, b1: f64, c1: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let v = 1.0 - c;
    (-c1 * v + b1 * s, b1 * v + c1 * s)
}

/// Dispatch table: family tag to fixed multiindex.
pub(crate) fn family_multiindex(family: Family) -> &'static [usize] {
    match family {
        Family::S1 | Family::S2 | Family::SO3 => &[1, 2, 1],
        Family::T1 | Family::T2 => &[1, 2, 1, 2, 1],
        Family::T3 => &[1, 3, 2, 1],
        Family::T4 | Family::T5 => &[1, 2, 1, 3],
        Family::Uncontrollable | Family::OutOfCatalog => &[],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Group, Se2Vector};

    fn s1_fields() -> Vec<AlgebraVector> {
        vec![
            AlgebraVector::Se2(Se2Vector::new(1.0, 0.0, 0.5)),
            AlgebraVector::Se2(Se2Vector::new(0.0, 1.0, 0.0)),
        ]
    }

    #[test]
    fn empty_plan_is_identity() {
        let g = fk(&s1_fields(), &[], &[]).unwrap();
        assert_eq!(g, GroupElement::identity(Group::Se2));
        let g = fk(&[], &[], &[]).unwrap();
        assert_eq!(g, GroupElement::identity(Group::Se2));
    }

    #[test]
    fn single_step_reduces_to_exp() {
        let fields = s1_fields();
        let g = fk(&fields, &[2], &[1.7]).unwrap();
        assert_eq!(g, fields[1].exp(1.7));
    }

    #[test]
    fn fk_rejects_malformed_input() {
        let fields = s1_fields();
        assert!(matches!(
            fk(&fields, &[1, 2], &[1.0]),
            Err(FkError::LengthMismatch { .. })
        ));
        assert!(matches!(
            fk(&fields, &[3], &[1.0]),
            Err(FkError::BadIndex(3, 2))
        ));
        assert!(matches!(
            fk(&fields, &[0], &[1.0]),
            Err(FkError::BadIndex(0, 2))
        ));
    }

    #[test]
    fn verdict_picks_tightest_constraint() {
        let v = DomainVerdict::from_slacks(&[("a", 1.0), ("b", -0.5), ("c", -2.0)]);
        assert!(!v.inside);
        assert_eq!(v.violated, "c");
        assert_eq!(v.margin, -2.0);
        let v = DomainVerdict::from_slacks(&[("a", 0.0), ("b", 3.0)]);
        assert!(v.inside, "closed domains include their boundary");
        assert_eq!(v.violated, "");
    }
}
