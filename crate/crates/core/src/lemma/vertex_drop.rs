//! Single inner vertex: the chain `D, A2, A1, B` with `A1 = (-t, 1)` sliding along the top edge.
//!
//! `F(t)` is the product of the half-volumes of the body and of its polar, so `4F(t)` is the
//! Mahler product. At `t = 0` the top vertex merges into `B`; at the far end it lies on the
//! line `D A2` and the chain loses `A2`.

use std::f64::consts::PI;

use super::{horner, LemmaConfig};

const PI_3: f64 = PI / 3.0;
const PI2_9: f64 = PI * PI / 9.0;

/// `-y0² - y0 + 2 = (1 - y0)(y0 + 2)`.
#[inline]
fn lift(y0: f64) -> f64 {
    -y0 * y0 - y0 + 2.0
}

/// Half-volume of the body: frustum sums over `D, A2, A1, B`. Linear in `t`.
pub fn primal_half_volume(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    PI_3 * lift(y0) * t + PI_3 * (y0 * y0 - x0 * y0 - x0)
}

pub fn deltas(x0: f64, y0: f64) -> [f64; 4] {
    let (x2, y2, y3) = (x0 * x0, y0 * y0, y0 * y0 * y0);
    [
        y3 * (x2 + 3.0 * x0 + 3.0),
        y2 * (3.0 * x2 * x0 + 9.0 * x2 + 9.0 * x0 + y3 - 3.0 * y0 + 2.0),
        3.0 * y0 * (x2 * x2 + 3.0 * x2 * x0 + 3.0 * x2 + x0 * (y3 - y2 - y0 + 1.0)),
        x2 * (x2 * x0 + 3.0 * x2 + 3.0 * x0 + 2.0 * y3 - 3.0 * y2 + 1.0),
    ]
}

/// Half-volume of the polar body, whose chain is `D, E, M, B` with
/// `M = (1 - y0, x0 + t) / (t y0 + x0)` dual to the edge `A2 A1`.
pub fn polar_half_volume(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    PI_3 * horner(&deltas(x0, y0), t) / (y0 * y0 * s * s * s)
}

pub fn polar_half_volume_dt(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    let q = -y0 * (y0 + 2.0) * t * t - 2.0 * x0 * (2.0 * y0 + 1.0) * t - 3.0 * x0 * x0;
    PI_3 * (y0 - 1.0).powi(2) * q / s.powi(4)
}

/// `F(t)`, a quarter of the Mahler product.
pub fn quarter_product(c: &LemmaConfig) -> f64 {
    primal_half_volume(c) * polar_half_volume(c)
}

pub fn lambdas(x0: f64, y0: f64) -> [f64; 5] {
    let l = lift(y0);
    let x2 = x0 * x0;
    let x3 = x2 * x0;
    let x4 = x2 * x2;
    let yp = |k: i32| y0.powi(k);
    [
        yp(4) * l * (x2 + 3.0 * x0 + 3.0),
        yp(3) * l * (4.0 * x3 + 12.0 * x2 + 12.0 * x0),
        yp(2)
            * (l * (6.0 * x4 + 18.0 * x3 + 18.0 * x2)
                + x0 * (yp(5) - 2.0 * yp(4) + 8.0 * yp(2) - 13.0 * y0 + 6.0)
                + (-yp(6) + 3.0 * yp(4) - 2.0 * yp(3))),
        y0 * (l * (4.0 * x4 * x0 + 12.0 * x4 + 12.0 * x3)
            + x2 * (2.0 * yp(5) - 4.0 * yp(4) + 4.0 * yp(3) + 4.0 * yp(2) - 14.0 * y0 + 8.0)
            + x0 * (-4.0 * yp(6) + 6.0 * yp(5) - 2.0 * yp(3))),
        l * (x4 * x2 + 3.0 * x4 * x0 + 3.0 * x4)
            + x3 * (yp(5) - 2.0 * yp(4) + 4.0 * yp(3) - 4.0 * yp(2) - y0 + 2.0)
            + x2 * (-3.0 * yp(6) + 6.0 * yp(5) - 3.0 * yp(4)),
    ]
}

/// `F'(t)` in the fully expanded quartic-over-quartic form.
pub fn quarter_product_dt_expanded(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    PI2_9 * horner(&lambdas(x0, y0), t) / (y0 * y0 * s.powi(4))
}

/// `F'(t)` with the common factor `(1 - y0)(y0 + 2)` pulled out.
pub fn quarter_product_dt(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    let q = x0 * x0 + 3.0 * x0 + 3.0;
    let y2 = y0 * y0;
    let y3 = y2 * y0;
    let x2 = x0 * x0;
    let cubic = [
        q * y3,
        3.0 * x0 * q * y2,
        (3.0 * x2 * x2 + 9.0 * x2 * x0 + 9.0 * x2 + x0 * (-y3 + 3.0 * y2 - 5.0 * y0 + 3.0) + y3 * (y0 - 1.0)) * y0,
        x2 * x2 * x0
            + 3.0 * x2 * x2
            + 3.0 * x2 * x0
            + x2 * (-y2 * y2 + y3 - 3.0 * y2 + y0 + 2.0) / (y0 + 2.0)
            + x0 * (3.0 * y2 * y3 - 3.0 * y2 * y2) / (y0 + 2.0),
    ];
    PI2_9 * lift(y0) / (y2 * s * s * s) * horner(&cubic, t)
}

pub fn gammas(x0: f64, y0: f64) -> [f64; 3] {
    let yp = |k: i32| y0.powi(k);
    let x2 = x0 * x0;
    [
        -2.0 * x0 * yp(3) * (yp(5) - 2.0 * yp(4) + 8.0 * yp(2) - 13.0 * y0 + 6.0)
            - 2.0 * yp(6) * (-yp(3) + 3.0 * y0 - 2.0),
        x2 * yp(2) * (-4.0 * yp(5) + 8.0 * yp(4) - 12.0 * yp(3) + 4.0 * yp(2) + 16.0 * y0 - 12.0)
            + x0 * yp(5) * (10.0 * yp(3) - 18.0 * yp(2) + 6.0 * y0 + 2.0),
        x2 * x0 * yp(2) * (-2.0 * yp(4) + 4.0 * yp(3) - 12.0 * yp(2) + 20.0 * y0 - 10.0)
            + x2 * yp(4) * (8.0 * yp(3) - 18.0 * yp(2) + 12.0 * y0 - 2.0),
    ]
}

/// `F''(t)` as a quadratic over `(t y0 + x0)⁵`.
pub fn quarter_product_dt2_expanded(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    PI2_9 * horner(&gammas(x0, y0), t) / (y0 * y0 * s.powi(5))
}

/// `F''(t)` after cancelling one power of `t y0 + x0` from the quadratic.
pub fn quarter_product_dt2_reduced(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    let [g1, g2, _] = gammas(x0, y0);
    PI2_9 * (g1 / y0 * t + (g2 / y0 - x0 * g1 / (y0 * y0))) / (y0 * y0 * s.powi(4))
}

/// Slope in `t` of [`curvature_factor`]; positive throughout the triangle.
pub fn curvature_factor_slope(x0: f64, y0: f64) -> f64 {
    -2.0 * x0 * (y0 + 2.0) * (y0 * y0 - 2.0 * y0 + 3.0) + 2.0 * y0.powi(3) * (y0 + 2.0)
}

/// The linear factor `I(t)` carrying the sign of `F''`.
pub fn curvature_factor(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    curvature_factor_slope(x0, y0) * t + x0 * x0 * (-2.0 * y0 * y0 - 10.0) + x0 * y0 * y0 * (8.0 * y0 - 2.0)
}

/// `F''(t) = (π²/9)(y0 - 1)² I(t) / (t y0 + x0)⁴`.
pub fn quarter_product_dt2(c: &LemmaConfig) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = t * y0 + x0;
    PI2_9 * (y0 - 1.0).powi(2) / s.powi(4) * curvature_factor(c)
}

/// `G(x0, y0)` with `F'(t_max) = π² G / (9 y0²)`.
pub fn endpoint_slope_factor(x0: f64, y0: f64) -> f64 {
    let y2 = y0 * y0;
    let y3 = y2 * y0;
    x0 * x0 * (2.0 - y0) * (y0 + 3.0) - x0 * (y3 + 3.0 * y2 + 4.0 * y0 - 12.0) - (y0 + 2.0) * (y3 + 3.0 * y0 - 3.0)
}

/// `H(x0, y0)` with `F''(t_max) = π² H / (9 y0 (1 - y0))`.
pub fn endpoint_curvature_factor(x0: f64, y0: f64) -> f64 {
    let y3 = y0.powi(3);
    12.0 * x0 * x0 - x0 * (4.0 * y3 + 2.0 * y0 - 12.0) - 2.0 * y3 * (y0 + 2.0)
}

/// `H` restricted to the region boundary curve, as a single rational function of `y`.
pub fn endpoint_curvature_on_boundary(y: f64) -> f64 {
    let num = [2.0, 4.0, 24.0, 50.0, -38.0, -18.0, -48.0, -72.0, 0.0];
    horner(&num, y) / ((2.0 - y) * (y + 3.0)).powi(2)
}
