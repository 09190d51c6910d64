//! Scalar conventions shared by every closed form in the catalog.

use std::f64::consts::PI;

/// Quadrant-corrected arctangent of `y/x`, i.e. the angle of the point
/// `(x, y)`, with the convention `atan2c(0, 0) = 0` and range `(-pi, pi]`.
///
/// Note the argument order: the cosine-like component comes first.
pub fn atan2c(x: f64, y: f64) -> f64 {
    if x == 0.0 && y == 0.0 {
        return 0.0;
    }
    let r = y.atan2(x);
    if r == -PI {
        PI
    } else {
        r
    }
}

/// Canonical angle representative in `(-pi, pi]`.
pub fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Sign function with `sign0(0) = 0`.
pub fn sign0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Characteristic function of the open half-line `(-inf, 0)`.
pub fn ind_neg(x: f64) -> f64 {
    if x < 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Small-angle switch point for `sin(a)/a` and `(1-cos(a))/a`.
///
/// Below this, four Taylor terms keep the relative error under 1e-16 while
/// avoiding the cancellation in `1 - cos(a)`.
pub const SMALL_ANGLE: f64 = 1e-4;

/// `sin(a)/a`, series branch for `|a| < SMALL_ANGLE`.
pub fn sinc_over(a: f64) -> f64 {
    if a.abs() < SMALL_ANGLE {
        let a2 = a * a;
        1.0 - a2 / 6.0 + a2 * a2 / 120.0 - a2 * a2 * a2 / 5040.0
    } else {
        a.sin() / a
    }
}

/// `(1 - cos(a))/a`, series branch for `|a| < SMALL_ANGLE`.
pub fn versinc_over(a: f64) -> f64 {
    if a.abs() < SMALL_ANGLE {
        let a2 = a * a;
        a * (0.5 - a2 / 24.0 + a2 * a2 / 720.0 - a2 * a2 * a2 / 40320.0)
    } else {
        (1.0 - a.cos()) / a
    }
}
