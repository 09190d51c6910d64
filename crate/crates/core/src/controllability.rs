//! Controllability rank conditions and classification of systems into the
//! canonical planner families.
//!
//! For driftless left-invariant systems, controllability is equivalent to the
//! Lie closure of the input fields being full rank, and on these low
//! dimensional groups the conditions collapse to explicit polynomial
//! inequalities in the field coefficients. Classification normalizes a
//! controllable system into one canonical family (`S1`/`S2` on SE(2), `SO3`,
//! `T1`..`T5` on SE(2)×ℝ) and records how to translate canonical coasting
//! times back to the user's fields: canonical field `i` is
//! `scales[i] * user_field[permutation[i]]` (rotated by the conjugation for
//! SO(3)), so flowing along it for time `t` equals flowing along the user's
//! field for time `scales[i] * t`.

use crate::algebra::{AlgebraVector, Group, Rotation, Se2RVector, Se2Vector, So3Vector};

/// Rank threshold applied to determinant-style quantities of fields
/// pre-normalized to unit max coefficient (scale-invariant thresholding).
pub const EPS_RANK: f64 = 1e-9;

/// Tolerance for the exact pattern equalities of the three-input families
/// (matching shared `(b, c)` blocks, zero entries, equal `d` entries).
const PATTERN_TOL: f64 = 1e-9;

/// Canonical family tags, plus the two non-plannable outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Family {
    S1,
    S2,
    SO3,
    T1,
    T2,
    T3,
    T4,
    T5,
    Uncontrollable,
    OutOfCatalog,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// How a canonical system maps back onto the user's fields.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationRecord {
    /// `permutation[i]` is the 0-based user index of canonical field `i`.
    pub permutation: Vec<usize>,
    /// Canonical field `i` is `scales[i] * user_field[permutation[i]]`.
    /// Scales may be negative (flow reversal, i.e. the `u = -1` control).
    pub scales: Vec<f64>,
    /// SO(3) only: rotation taking the first field's unit axis to `e_z`.
    pub conjugation: Option<Rotation>,
}

impl NormalizationRecord {
    fn identity(n: usize) -> Self {
        NormalizationRecord {
            permutation: (0..n).collect(),
            scales: vec![1.0; n],
            conjugation: None,
        }
    }
}

/// Classification result: family tag, canonicalized fields and the record
/// mapping canonical coasting times back to the user's fields.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemClass {
    pub family: Family,
    pub canonical_fields: Vec<AlgebraVector>,
    pub record: NormalizationRecord,
}

impl SystemClass {
    fn unplannable(family: Family, n: usize) -> Self {
        SystemClass {
            family,
            canonical_fields: Vec::new(),
            record: NormalizationRecord::identity(n),
        }
    }
}

fn max_coeff(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Compares against `EPS_RANK` after normalizing by the fields' magnitude.
fn above_rank_eps(value: f64, scale: f64) -> bool {
    value.abs() > EPS_RANK * scale.max(f64::MIN_POSITIVE)
}

// ---------------------------------------------------------------------------
// rank conditions
// ---------------------------------------------------------------------------

/// Two fields on SE(2) are controllable iff
/// `a1 b2 - b1 a2 != 0` or `c1 a2 - a1 c2 != 0`.
pub fn se2_controllable(v1: &Se2Vector, v2: &Se2Vector) -> bool {
    let m = max_coeff(&[v1.a, v1.b, v1.c]) * max_coeff(&[v2.a, v2.b, v2.c]);
    let d1 = v1.a * v2.b - v1.b * v2.a;
    let d2 = v1.c * v2.a - v1.a * v2.c;
    d1 * d1 + d2 * d2 > (EPS_RANK * m.max(f64::MIN_POSITIVE)).powi(2)
}

/// Two fields on SO(3) are controllable iff they are non-parallel,
/// i.e. `||v1 × v2|| > 0`.
pub fn so3_controllable(v1: &So3Vector, v2: &So3Vector) -> bool {
    let m = v1.norm() * v2.norm();
    let cr = v1.bracket(v2);
    above_rank_eps(cr.norm(), m)
}

/// Two fields on SE(2)×ℝ are controllable iff `a2 d1 - d2 a1 != 0` and
/// additionally `c1 a2 - a1 c2 != 0` or `a1 b2 - b1 a2 != 0`.
pub fn se2r_controllable_2(v1: &Se2RVector, v2: &Se2RVector) -> bool {
    let m = max_coeff(&[v1.a, v1.b, v1.c, v1.d]) * max_coeff(&[v2.a, v2.b, v2.c, v2.d]);
    let screw = v2.a * v1.d - v2.d * v1.a;
    let r1 = v1.c * v2.a - v1.a * v2.c;
    let r2 = v1.a * v2.b - v1.b * v2.a;
    above_rank_eps(screw, m) && (r1 * r1 + r2 * r2 > (EPS_RANK * m.max(f64::MIN_POSITIVE)).powi(2))
}

// ---------------------------------------------------------------------------
// SE(2): S1 / S2
// ---------------------------------------------------------------------------

/// Classifies two SE(2) fields into `S1` (one pure translation input) or
/// `S2` (two rotation-carrying inputs), scaled so the leading field has
/// `a = 1`; for `S2` the field with the smaller translation block goes first
/// to maximize the local-inverse domain.
pub fn classify_se2(v1: &Se2Vector, v2: &Se2Vector) -> SystemClass {
    if !se2_controllable(v1, v2) {
        return SystemClass::unplannable(Family::Uncontrollable, 2);
    }
    let fields = [*v1, *v2];
    let rot = |i: usize| above_rank_eps(fields[i].a, max_coeff(&fields[i].coeff_slice()));
    let (first, second) = match (rot(0), rot(1)) {
        (true, false) => (0, 1),
        (false, true) => (1, 0),
        (true, true) => {
            // both carry rotation: order by canonical translation magnitude
            let n = |i: usize| {
                let f = fields[i];
                (f.b / f.a).powi(2) + (f.c / f.a).powi(2)
            };
            if n(0) <= n(1) {
                (0, 1)
            } else {
                (1, 0)
            }
        }
        // both a = 0 cannot pass the rank test
        (false, false) => unreachable!("translation-only pairs are not controllable"),
    };
    let vf = fields[first];
    let vs = fields[second];
    let s1 = 1.0 / vf.a;
    if rot(second) {
        let s2 = 1.0 / vs.a;
        SystemClass {
            family: Family::S2,
            canonical_fields: vec![
                AlgebraVector::Se2(vf.scaled(s1)),
                AlgebraVector::Se2(vs.scaled(s2)),
            ],
            record: NormalizationRecord {
                permutation: vec![first, second],
                scales: vec![s1, s2],
                conjugation: None,
            },
        }
    } else {
        let s2 = 1.0 / (vs.b * vs.b + vs.c * vs.c).sqrt();
        SystemClass {
            family: Family::S1,
            canonical_fields: vec![
                AlgebraVector::Se2(vf.scaled(s1)),
                AlgebraVector::Se2(vs.scaled(s2)),
            ],
            record: NormalizationRecord {
                permutation: vec![first, second],
                scales: vec![s1, s2],
                conjugation: None,
            },
        }
    }
}

impl Se2Vector {
    fn coeff_slice(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

// ---------------------------------------------------------------------------
// SO(3)
// ---------------------------------------------------------------------------

/// Rotation taking the unit vector `u` to `e_z`, deterministic at `u = -e_z`.
fn rotation_to_ez(u: &So3Vector) -> Rotation {
    let ez = So3Vector::new(0.0, 0.0, 1.0);
    let cross = u.bracket(&ez);
    let s = cross.norm();
    let c = u.c;
    if s < 1e-12 {
        if c > 0.0 {
            return Rotation::identity();
        }
        // u = -e_z: half turn about e_x
        return So3Vector::new(1.0, 0.0, 0.0).exp(std::f64::consts::PI);
    }
    let axis = cross.scaled(1.0 / s);
    axis.exp(s.atan2(c))
}

/// Classifies two SO(3) fields: both are normalized to unit norm and the
/// whole system is conjugated so the first field becomes `e_z`.
pub fn classify_so3(v1: &So3Vector, v2: &So3Vector) -> SystemClass {
    if !so3_controllable(v1, v2) {
        return SystemClass::unplannable(Family::Uncontrollable, 2);
    }
    let s1 = 1.0 / v1.norm();
    let s2 = 1.0 / v2.norm();
    let r0 = rotation_to_ez(&v1.scaled(s1));
    let canon2 = r0.rotate(&v2.scaled(s2));
    SystemClass {
        family: Family::SO3,
        canonical_fields: vec![
            AlgebraVector::So3(So3Vector::new(0.0, 0.0, 1.0)),
            AlgebraVector::So3(canon2),
        ],
        record: NormalizationRecord {
            permutation: vec![0, 1],
            scales: vec![s1, s2],
            conjugation: Some(r0),
        },
    }
}

// ---------------------------------------------------------------------------
// SE(2)xR, two inputs: T1 / T2
// ---------------------------------------------------------------------------

/// Classifies two SE(2)×ℝ fields into `T1` (second input is a pure
/// translation/prismatic screw, scaled to `d2 = 1`) or `T2` (both inputs
/// carry rotation, scaled to `a = 1`, smaller translation block first).
pub fn classify_se2r_2(v1: &Se2RVector, v2: &Se2RVector) -> SystemClass {
    if !se2r_controllable_2(v1, v2) {
        return SystemClass::unplannable(Family::Uncontrollable, 2);
    }
    let fields = [*v1, *v2];
    let rot = |i: usize| {
        above_rank_eps(
            fields[i].a,
            max_coeff(&[fields[i].a, fields[i].b, fields[i].c, fields[i].d]),
        )
    };
    let (first, second) = match (rot(0), rot(1)) {
        (true, false) => (0, 1),
        (false, true) => (1, 0),
        (true, true) => {
            let n = |i: usize| {
                let f = fields[i];
                (f.b / f.a).powi(2) + (f.c / f.a).powi(2)
            };
            if n(0) <= n(1) {
                (0, 1)
            } else {
                (1, 0)
            }
        }
        (false, false) => unreachable!("the screw condition forces a rotation input"),
    };
    let vf = fields[first];
    let vs = fields[second];
    let s1 = 1.0 / vf.a;
    if rot(second) {
        let s2 = 1.0 / vs.a;
        SystemClass {
            family: Family::T2,
            canonical_fields: vec![
                AlgebraVector::Se2R(vf.scaled(s1)),
                AlgebraVector::Se2R(vs.scaled(s2)),
            ],
            record: NormalizationRecord {
                permutation: vec![first, second],
                scales: vec![s1, s2],
                conjugation: None,
            },
        }
    } else {
        // controllability forces d2 != 0 here
        let s2 = 1.0 / vs.d;
        SystemClass {
            family: Family::T1,
            canonical_fields: vec![
                AlgebraVector::Se2R(vf.scaled(s1)),
                AlgebraVector::Se2R(vs.scaled(s2)),
            ],
            record: NormalizationRecord {
                permutation: vec![first, second],
                scales: vec![s1, s2],
                conjugation: None,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// SE(2)xR, three inputs: T3 / T4 / T5
// ---------------------------------------------------------------------------

/// Numeric rank of the span of the fields and their iterated brackets.
///
/// `depth` counts bracket generations: generation `k` holds all
/// `[field, w]` with `w` from generation `k-1`. Row reduction with a pivot
/// threshold of `EPS_RANK` on rows normalized to unit max coefficient.
/// Self-contained so classification does not lean on the [`crate::verify`]
/// oracle it is checked against.
fn coefficient_closure_rank(fields: &[Se2RVector], depth: usize) -> usize {
    let mut gen: Vec<Se2RVector> = fields.to_vec();
    let mut all: Vec<Se2RVector> = fields.to_vec();
    for _ in 0..depth {
        let mut next = Vec::new();
        for f in fields {
            for w in &gen {
                next.push(f.bracket(w));
            }
        }
        all.extend(next.iter().copied());
        gen = next;
    }
    let mut rows: Vec<[f64; 4]> = all
        .iter()
        .filter_map(|v| {
            let r = [v.a, v.b, v.c, v.d];
            let m = max_coeff(&r);
            if m < f64::MIN_POSITIVE {
                None
            } else {
                Some([r[0] / m, r[1] / m, r[2] / m, r[3] / m])
            }
        })
        .collect();
    // Gaussian elimination with partial pivoting
    let mut rank = 0;
    for col in 0..4 {
        let pivot = (rank..rows.len())
            .max_by(|&i, &j| rows[i][col].abs().partial_cmp(&rows[j][col].abs()).unwrap());
        let Some(p) = pivot else { break };
        if rows[p][col].abs() <= EPS_RANK {
            continue;
        }
        rows.swap(rank, p);
        for i in (rank + 1)..rows.len() {
            let f = rows[i][col] / rows[rank][col];
            for c in col..4 {
                rows[i][c] -= f * rows[rank][c];
            }
        }
        rank += 1;
        if rank == 4 {
            break;
        }
    }
    rank
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= PATTERN_TOL * 1.0f64.max(a.abs()).max(b.abs())
}

fn near_zero_scaled(x: f64, scale: f64) -> bool {
    x.abs() <= EPS_RANK * scale.max(1.0)
}

/// Classifies three SE(2)×ℝ fields under the hypotheses that no pair is
/// controllable on its own while the triple is. Searches the six orderings
/// for a match to the `T3`/`T4`/`T5` canonical patterns.
///
/// Returns `Uncontrollable` when the triple's closure is rank deficient, and
/// `OutOfCatalog` when the hypotheses fail some other way — most notably when
/// a pair is already controllable by itself, in which case planning should
/// fall back to that pair.
pub fn classify_se2r_3(v1: &Se2RVector, v2: &Se2RVector, v3: &Se2RVector) -> SystemClass {
    let fields = [*v1, *v2, *v3];
    if coefficient_closure_rank(&fields, 3) < 4 {
        return SystemClass::unplannable(Family::Uncontrollable, 3);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if coefficient_closure_rank(&[fields[i], fields[j]], 3) == 4 {
            return SystemClass::unplannable(Family::OutOfCatalog, 3);
        }
    }
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in PERMS {
        if let Some(sc) = match_t3(&fields, &perm)
            .or_else(|| match_t4(&fields, &perm))
            .or_else(|| match_t5(&fields, &perm))
        {
            return sc;
        }
    }
    SystemClass::unplannable(Family::OutOfCatalog, 3)
}

fn scaled_rot(f: &Se2RVector) -> Option<(Se2RVector, f64)> {
    let m = max_coeff(&[f.a, f.b, f.c, f.d]);
    if !above_rank_eps(f.a, m) {
        return None;
    }
    let s = 1.0 / f.a;
    Some((f.scaled(s), s))
}

/// `V1 = (1,b,c,d1)`, `V2 = (0,b2,c2,0)` non-trivial, `V3 = (1,b,c,d3)`,
/// `d1 != d3`.
fn match_t3(fields: &[Se2RVector; 3], perm: &[usize; 3]) -> Option<SystemClass> {
    let (f1, f2, f3) = (fields[perm[0]], fields[perm[1]], fields[perm[2]]);
    let (c1, s1) = scaled_rot(&f1)?;
    let (c3, s3) = scaled_rot(&f3)?;
    let m2 = max_coeff(&[f2.a, f2.b, f2.c, f2.d]);
    let bc2 = (f2.b * f2.b + f2.c * f2.c).sqrt();
    if !(near_zero_scaled(f2.a, m2) && near_zero_scaled(f2.d, m2) && above_rank_eps(bc2, m2)) {
        return None;
    }
    if !(near(c1.b, c3.b) && near(c1.c, c3.c)) || near(c1.d, c3.d) {
        return None;
    }
    let s2 = 1.0 / bc2;
    let c2 = Se2RVector::new(0.0, s2 * f2.b, s2 * f2.c, 0.0);
    Some(SystemClass {
        family: Family::T3,
        canonical_fields: vec![
            AlgebraVector::Se2R(c1),
            AlgebraVector::Se2R(c2),
            AlgebraVector::Se2R(c3),
        ],
        record: NormalizationRecord {
            permutation: perm.to_vec(),
            scales: vec![s1, s2, s3],
            conjugation: None,
        },
    })
}

/// `V1 = (1,b,c,d1)`, `V2 = (0,b2,c2,0)` non-trivial, `V3 = (0,0,0,1)`.
fn match_t4(fields: &[Se2RVector; 3], perm: &[usize; 3]) -> Option<SystemClass> {
    let (f1, f2, f3) = (fields[perm[0]], fields[perm[1]], fields[perm[2]]);
    let (c1, s1) = scaled_rot(&f1)?;
    let m2 = max_coeff(&[f2.a, f2.b, f2.c, f2.d]);
    let bc2 = (f2.b * f2.b + f2.c * f2.c).sqrt();
    if !(near_zero_scaled(f2.a, m2) && near_zero_scaled(f2.d, m2) && above_rank_eps(bc2, m2)) {
        return None;
    }
    let m3 = max_coeff(&[f3.a, f3.b, f3.c, f3.d]);
    if !(near_zero_scaled(f3.a, m3)
        && near_zero_scaled(f3.b, m3)
        && near_zero_scaled(f3.c, m3)
        && above_rank_eps(f3.d, m3))
    {
        return None;
    }
    let s2 = 1.0 / bc2;
    let s3 = 1.0 / f3.d;
    Some(SystemClass {
        family: Family::T4,
        canonical_fields: vec![
            AlgebraVector::Se2R(c1),
            AlgebraVector::Se2R(Se2RVector::new(0.0, s2 * f2.b, s2 * f2.c, 0.0)),
            AlgebraVector::Se2R(Se2RVector::new(0.0, 0.0, 0.0, 1.0)),
        ],
        record: NormalizationRecord {
            permutation: perm.to_vec(),
            scales: vec![s1, s2, s3],
            conjugation: None,
        },
    })
}

/// `V1 = (1,b1,c1,d)`, `V2 = (1,b2,c2,d)` with a different translation
/// block, `V3 = (0,0,0,1)`; the smaller translation block goes first.
fn match_t5(fields: &[Se2RVector; 3], perm: &[usize; 3]) -> Option<SystemClass> {
    let (f1, f2, f3) = (fields[perm[0]], fields[perm[1]], fields[perm[2]]);
    let (c1, s1) = scaled_rot(&f1)?;
    let (c2, s2) = scaled_rot(&f2)?;
    if !near(c1.d, c2.d) {
        return None;
    }
    let diff = ((c1.b - c2.b).powi(2) + (c1.c - c2.c).powi(2)).sqrt();
    if !above_rank_eps(diff, 1.0) {
        return None;
    }
    // domain-maximizing order: accept only the ordering with the smaller
    // translation block first so exactly one permutation matches
    if c1.b * c1.b + c1.c * c1.c > c2.b * c2.b + c2.c * c2.c {
        return None;
    }
    let m3 = max_coeff(&[f3.a, f3.b, f3.c, f3.d]);
    if !(near_zero_scaled(f3.a, m3)
        && near_zero_scaled(f3.b, m3)
        && near_zero_scaled(f3.c, m3)
        && above_rank_eps(f3.d, m3))
    {
        return None;
    }
    let s3 = 1.0 / f3.d;
    Some(SystemClass {
        family: Family::T5,
        canonical_fields: vec![
            AlgebraVector::Se2R(c1),
            AlgebraVector::Se2R(c2),
            AlgebraVector::Se2R(Se2RVector::new(0.0, 0.0, 0.0, 1.0)),
        ],
        record: NormalizationRecord {
            permutation: perm.to_vec(),
            scales: vec![s1, s2, s3],
            conjugation: None,
        },
    })
}

// ---------------------------------------------------------------------------
// generic entry point
// ---------------------------------------------------------------------------

/// Classifies a system given as generic algebra vectors. Two fields dispatch
/// to the pairwise classifiers; three SE(2)×ℝ fields to the triple
/// classifier. For three fields on SE(2) or SO(3) — or a triple out of the
/// three-input catalog because some pair is controllable by itself — the
/// first controllable pair is classified and the record's permutation points
/// at that pair.
pub fn classify(group: Group, fields: &[AlgebraVector]) -> Option<SystemClass> {
    if fields.iter().any(|f| f.group() != group) {
        return None;
    }
    match (group, fields.len()) {
        (Group::Se2, 2) => {
            let (v1, v2) = (as_se2(&fields[0]), as_se2(&fields[1]));
            Some(classify_se2(&v1, &v2))
        }
        (Group::So3, 2) => {
            let (v1, v2) = (as_so3(&fields[0]), as_so3(&fields[1]));
            Some(classify_so3(&v1, &v2))
        }
        (Group::Se2R, 2) => {
            let (v1, v2) = (as_se2r(&fields[0]), as_se2r(&fields[1]));
            Some(classify_se2r_2(&v1, &v2))
        }
        (Group::Se2R, 3) => {
            let (v1, v2, v3) = (
                as_se2r(&fields[0]),
                as_se2r(&fields[1]),
                as_se2r(&fields[2]),
            );
            let sc = classify_se2r_3(&v1, &v2, &v3);
            if sc.family == Family::OutOfCatalog {
                if let Some(pair) = classify_controllable_pair(group, fields) {
                    return Some(pair);
                }
            }
            Some(sc)
        }
        (Group::Se2, 3) | (Group::So3, 3) => Some(
            classify_controllable_pair(group, fields)
                .unwrap_or_else(|| SystemClass::unplannable(Family::Uncontrollable, 3)),
        ),
        _ => None,
    }
}

/// Classifies the first controllable pair of a redundant triple and lifts the
/// record's permutation to the original three-field indexing.
fn classify_controllable_pair(group: Group, fields: &[AlgebraVector]) -> Option<SystemClass> {
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let pair_ok = match group {
            Group::Se2 => se2_controllable(&as_se2(&fields[i]), &as_se2(&fields[j])),
            Group::So3 => so3_controllable(&as_so3(&fields[i]), &as_so3(&fields[j])),
            Group::Se2R => se2r_controllable_2(&as_se2r(&fields[i]), &as_se2r(&fields[j])),
        };
        if !pair_ok {
            continue;
        }
        let mut sc = classify(group, &[fields[i].clone(), fields[j].clone()])?;
        sc.record.permutation = sc
            .record
            .permutation
            .iter()
            .map(|&k| if k == 0 { i } else { j })
            .collect();
        return Some(sc);
    }
    None
}

fn as_se2(v: &AlgebraVector) -> Se2Vector {
    match v {
        AlgebraVector::Se2(x) => *x,
        _ => unreachable!("group checked by caller"),
    }
}

fn as_so3(v: &AlgebraVector) -> So3Vector {
    match v {
        AlgebraVector::So3(x) => *x,
        _ => unreachable!("group checked by caller"),
    }
}

fn as_se2r(v: &AlgebraVector) -> Se2RVector {
    match v {
        AlgebraVector::Se2R(x) => *x,
        _ => unreachable!("group checked by caller"),
    }
}
