//! Closed-form motion planning for underactuated left-invariant kinematic
//! systems on SE(2), SO(3) and SE(2)×ℝ.
//!
//! A system is a family of two or three left-invariant vector fields; a motion
//! primitive is a flow along one field with constant control ±1 for a signed
//! coasting time. Planning steers the identity to a target pose by a short
//! product of exponentials,
//!
//! ```text
//! g = exp(t1 V_i1) · exp(t2 V_i2) · ... · exp(tk V_ik)
//! ```
//!
//! and this crate provides the complete catalog of closed-form coasting-time
//! maps for all controllable cases on the three groups, organized as:
//!
//! * [`algebra`] — coefficient vectors, poses, exponentials, composition;
//! * [`controllability`] — rank tests and classification into the canonical
//!   families `S1`, `S2`, `SO3`, `T1`..`T5`, with the normalization record
//!   needed to map canonical coasting times back to the user's fields;
//! * [`planners`] — forward kinematics, the eight inverse-kinematics maps
//!   with their domain predicates, and the top-level [`planners::plan`];
//! * [`verify`] — independent oracles (series matrix exponential, numeric
//!   Lie-closure rank), seeded round-trip fuzzing, the non-invertibility
//!   scan for the four-primitive map on `T1` systems, and empirical
//!   domain-tightness measurements.

pub mod algebra;
pub mod controllability;
pub mod planners;
pub mod verify;

pub use algebra::{AlgebraVector, Group, GroupElement};
pub use controllability::{Family, NormalizationRecord, SystemClass};
pub use planners::{DomainVerdict, MotionPlan, PlanError, PlanStep, PlannedMotion};
