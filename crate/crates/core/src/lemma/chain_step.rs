//! General chain: the edge `A3 A2` has slope `k` and the rest of the chain is summarized by
//! the half-volumes `V`, `V°` of the body without `A1` and of its polar.
//!
//! Moving `A1 = (-t, 1)` from `B` towards `C`, where the line `A3 A2` meets the top edge, is
//! the slide; `t` runs over `[0, (-x0 k + y0 - 1) / k]`.

use std::f64::consts::PI;

use super::{horner, ChainVolumes, LemmaConfig};
use crate::error::{Error, Result};

const PI_3: f64 = PI / 3.0;

fn slope_of(c: &LemmaConfig) -> Result<f64> {
    c.k().ok_or_else(|| Error::OutOfRegion("configuration has no edge slope k".into()))
}

/// `F(t)`: product of the half-volumes with `A1` inserted.
pub fn chain_quarter_product(c: &LemmaConfig, v: ChainVolumes) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let u = (t + x0) / (t * y0 + x0);
    (v.primal + PI_3 * (2.0 - y0 - y0 * y0) * t) * (v.polar - PI_3 * (y0 - 1.0) / x0 * (2.0 - u - u * u))
}

pub fn phis(x0: f64, y0: f64, v: ChainVolumes) -> [f64; 4] {
    let (vp, vd) = (v.primal, v.polar);
    let w = (1.0 - y0).powi(2);
    let y2 = y0 * y0;
    [
        y0 * (-PI_3 * w * (2.0 * y0 + 1.0) / x0 + vd * y2),
        -PI * w * (2.0 * y0 + 1.0) + 3.0 * vd * x0 * y2,
        -2.0 * PI * w * x0 + 3.0 * vd * x0 * x0 * y0 + (y0 - 1.0) * vp,
        vd * x0.powi(3) - 3.0 * x0 * (1.0 - y0) * vp / (y0 + 2.0),
    ]
}

pub fn chain_quarter_product_dt(c: &LemmaConfig, v: ChainVolumes) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let s = y0 * t + x0;
    PI_3 * (2.0 - y0 - y0 * y0) * horner(&phis(x0, y0, v), t) / (s * s * s)
}

/// The linear factor `J(t)` carrying the sign of `F''`.
pub fn chain_curvature_factor(c: &LemmaConfig, v: ChainVolumes) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    let vp = v.primal;
    (y0 + 2.0) * (vp * y0 + PI * x0 * (y0 - 1.0)) * t + x0 * (vp * (4.0 * y0 - 1.0) + PI * x0 * (y0 * y0 + y0 - 2.0))
}

/// `J` regrouped as a linear function of `V`.
pub fn chain_curvature_factor_in_volume(c: &LemmaConfig, v: ChainVolumes) -> f64 {
    let (x0, y0, t) = (c.x0(), c.y0(), c.t());
    ((y0 + 2.0) * y0 * t + x0 * (4.0 * y0 - 1.0)) * v.primal
        + (PI * x0 * (y0 - 1.0) * (y0 + 2.0) * t - PI * x0 * x0 * (2.0 - y0 - y0 * y0))
}

pub fn chain_quarter_product_dt2(c: &LemmaConfig, v: ChainVolumes) -> f64 {
    let s = c.t() * c.y0() + c.x0();
    2.0 * PI_3 * (1.0 - c.y0()).powi(2) / s.powi(4) * chain_curvature_factor(c, v)
}

pub fn upsilons(x0: f64, y0: f64, k: f64) -> [f64; 3] {
    let d3 = (x0 * k - y0).powi(3);
    let bracket = k.powi(3) * x0.powi(3) * (y0 - 1.0) * (-2.0 * y0 + 3.0)
        + 3.0 * k * k * x0 * x0 * y0 * (y0 - 1.0) * (2.0 * y0 - 3.0)
        + 3.0 * k * x0 * (1.0 - y0).powi(3) * (2.0 * y0 + 1.0)
        + y0 * (2.0 * y0 + 1.0) * (y0 - 1.0).powi(3);
    [(1.0 - y0) * (y0 + 2.0), k * k * (-x0 * k + y0 + 2.0) / d3, -PI_3 * (y0 + 2.0) / (x0 * d3) * bracket]
}

/// `F'` at the end of the slide, `t0 = (-x0 k + y0 - 1) / k`, as a linear form in `V°`, `V`.
/// Ignores `c.t()`.
pub fn chain_slope_at_slide_end(c: &LemmaConfig, v: ChainVolumes) -> Result<f64> {
    let k = slope_of(c)?;
    let [u1, u2, u3] = upsilons(c.x0(), c.y0(), k);
    Ok(PI_3 * (u1 * v.polar + u2 * v.primal + u3))
}

/// Half-volume of the body generated by `conv{A2, G, D, O, B}`.
pub fn corner_body_half_volume(x0: f64, y0: f64, k: f64) -> f64 {
    let g = y0 - k * (x0 + 1.0);
    PI_3 * (x0 + 1.0) * (g * g + g * y0 + y0 * y0) + PI_3 * (-x0) * (y0 * y0 + y0 + 1.0)
}

pub fn thetas(x0: f64, y0: f64) -> [f64; 4] {
    let (x2, y2) = (x0 * x0, y0 * y0);
    let y3 = y2 * y0;
    let p = x0 + 1.0;
    [
        -PI_3 * x0 * p.powi(3) * (y0 - 1.0).powi(2),
        PI_3 * p * p * y0 * (y0 - 1.0) * (4.0 * x0 * y0 - x0 + y0 + 2.0),
        PI_3 * (y0 - 1.0) * (-5.0 * x2 * y3 - 9.0 * x0 * y3 - 3.0 * x2 * y2 - 9.0 * x0 * y2 - x2 - 3.0 * y3 - 6.0 * y2),
        PI_3 * (y0 - 1.0) * (y0 + 2.0) * (2.0 * x0 * y3 + 3.0 * y3 - x0 * y2 + 2.0 * x0 * y0 - 3.0 * x0),
    ]
}

/// `L1(k)`: `k` times `J` at the end of the slide with `V` taken from the corner body.
pub fn corner_curvature_numerator(x0: f64, y0: f64, k: f64) -> f64 {
    horner(&thetas(x0, y0), k)
}

/// `L(k) = L1(k) / k`.
pub fn corner_curvature(x0: f64, y0: f64, k: f64) -> f64 {
    corner_curvature_numerator(x0, y0, k) / k
}

pub fn corner_curvature_numerator_dk(x0: f64, y0: f64, k: f64) -> f64 {
    let [a, b, c, _] = thetas(x0, y0);
    (3.0 * a * k + 2.0 * b) * k + c
}

pub fn corner_curvature_numerator_dk2(x0: f64, y0: f64, k: f64) -> f64 {
    let [a, b, _, _] = thetas(x0, y0);
    6.0 * a * k + 2.0 * b
}

/// `L1'` at `k = y0 / (x0 + 1)`, in closed form.
pub fn corner_curvature_numerator_dk_at_top(x0: f64, y0: f64) -> f64 {
    let (y2, y3) = (y0 * y0, y0.powi(3));
    PI_3 * (1.0 - y0) * (x0 * x0 * (2.0 * y2 + 1.0) + x0 * (2.0 * y3 + 4.0 * y2) + y3 + 2.0 * y2)
}

/// `L1''` at `k = y0 / (x0 + 1)`, in closed form.
pub fn corner_curvature_numerator_dk2_at_top(x0: f64, y0: f64) -> f64 {
    2.0 * PI_3 * (x0 + 1.0).powi(3) * y0 * (y0 - 1.0) * (y0 + 2.0)
}
