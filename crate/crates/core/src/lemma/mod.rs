//! Closed forms behind the vertex-elimination step, and their parameter regions.
//!
//! The step works on the second-quadrant chain `D, .., A3, A2, A1, B` with `D = (-1, 0)`,
//! `B = (0, 1)`, `A2 = (x0, y0)` strictly inside the triangle `ABD` (`A = (-1, 1)`) and
//! `A1 = (-t, 1)` on the top edge. In [`vertex_drop`] `A2` is the only other vertex; in
//! [`chain_step`] the edge `A3 A2` has slope `k` and the rest of the chain enters only through
//! the half-volumes `V`, `V°` of the body without `A1` and of its polar.

pub mod chain_step;
pub mod claims;
pub mod vertex_drop;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{Point2, UnconditionalPolygon};
use crate::optim::INV_PHI;
use crate::revolve::domain_volume;

pub use claims::{verify_sign_claims, SignClaim, SignClaimReport};

/// Slack allowed when checking that a parameter sits in its closed interval.
pub const PARAM_TOL: f64 = 1e-12;
/// Minimum `|t·y0 + x0|`; the closed forms have a pole where it vanishes.
pub const POLE_GUARD: f64 = 1e-9;

/// `(√5 - 1) / 2`, the root of `y² + y - 1`; above it the whole triangle row lies in `D1`.
pub const REGION_SPLIT: f64 = INV_PHI;

/// A parameter point `(x0, y0, t)` with optional edge slope `k`.
///
/// Accepts the closed triangle `-1 <= x0 <= y0 - 1`, `0 < y0 <= 1` (minus the corner `B`) so the
/// square and diamond limits can be evaluated; `0 <= t <= (-x0 + y0 - 1) / y0` without `k`, and
/// `0 <= t <= (-x0 k + y0 - 1) / k` with it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaConfig {
    x0: f64,
    y0: f64,
    t: f64,
    k: Option<f64>,
}

impl LemmaConfig {
    pub fn new(x0: f64, y0: f64, t: f64) -> Result<Self> {
        check_point(x0, y0)?;
        let hi = top_run(x0, y0);
        if !t.is_finite() || t < -PARAM_TOL || t > hi + PARAM_TOL {
            return Err(Error::OutOfRegion(format!("t = {t} outside [0, {hi}]")));
        }
        let cfg = Self { x0, y0, t: t.clamp(0.0, hi), k: None };
        cfg.check_pole()?;
        Ok(cfg)
    }

    pub fn with_slope(x0: f64, y0: f64, t: f64, k: f64) -> Result<Self> {
        check_point(x0, y0)?;
        let (lo, hi) = slope_range(x0, y0);
        if !k.is_finite() || !(k > 0.0) || k < lo * (1.0 - PARAM_TOL) || k > hi * (1.0 + PARAM_TOL) {
            return Err(Error::OutOfRegion(format!("k = {k} outside [{lo}, {hi}]")));
        }
        let k = k.clamp(lo, hi);
        let end = slide_run(x0, y0, k);
        if !t.is_finite() || t < -PARAM_TOL || t > end + PARAM_TOL {
            return Err(Error::OutOfRegion(format!("t = {t} outside [0, {end}]")));
        }
        let cfg = Self { x0, y0, t: t.clamp(0.0, end), k: Some(k) };
        cfg.check_pole()?;
        Ok(cfg)
    }

    fn check_pole(&self) -> Result<()> {
        if (self.t * self.y0 + self.x0).abs() <= POLE_GUARD {
            return Err(Error::OutOfRegion(format!("t*y0 + x0 vanishes at ({}, {}, {})", self.x0, self.y0, self.t)));
        }
        Ok(())
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k(&self) -> Option<f64> {
        self.k
    }

    /// The same point with a different `t`, revalidated.
    pub fn at(&self, t: f64) -> Result<Self> {
        match self.k {
            Some(k) => Self::with_slope(self.x0, self.y0, t, k),
            None => Self::new(self.x0, self.y0, t),
        }
    }

    /// `A2`.
    pub fn inner_vertex(&self) -> Point2 {
        Point2::new(self.x0, self.y0)
    }

    /// `A1`.
    pub fn top_vertex(&self) -> Point2 {
        Point2::new(-self.t, 1.0)
    }

    /// The chain `D, A2, A1, B` of the single-vertex configuration.
    pub fn polygon(&self) -> Result<UnconditionalPolygon> {
        UnconditionalPolygon::new([
            Point2::new(-1.0, 0.0),
            self.inner_vertex(),
            self.top_vertex(),
            Point2::new(0.0, 1.0),
        ])
    }
}

fn check_point(x0: f64, y0: f64) -> Result<()> {
    let inside = x0.is_finite() && y0.is_finite() && y0 > 0.0 && y0 <= 1.0 && x0 >= -1.0 && x0 <= y0 - 1.0 && x0 < 0.0;
    if inside {
        Ok(())
    } else {
        Err(Error::OutOfRegion(format!("(x0, y0) = ({x0}, {y0}) outside the triangle ABD")))
    }
}

/// Largest `t` for the single-vertex configuration: `A1` reaches the line `D A2`.
pub fn top_run(x0: f64, y0: f64) -> f64 {
    (-x0 + y0 - 1.0) / y0
}

/// Largest `t` when the previous edge has slope `k`: `A1` reaches the line `A3 A2`.
pub fn slide_run(x0: f64, y0: f64, k: f64) -> f64 {
    (-x0 * k + y0 - 1.0) / k
}

/// Admissible slopes of `A3 A2`: between the slopes of `A2 I` (through `A`'s top edge) and
/// `D A2`. The upper end is infinite when `x0 = -1`.
pub fn slope_range(x0: f64, y0: f64) -> (f64, f64) {
    let hi = if x0 > -1.0 { y0 / (x0 + 1.0) } else { f64::INFINITY };
    ((1.0 - y0) / -x0, hi)
}

/// The curve `x = (y³ + 2y² + 3y - 6) / ((2 - y)(y + 3))` splitting the lower part of the
/// triangle.
pub fn region_boundary(y: f64) -> f64 {
    (((y + 2.0) * y + 3.0) * y - 6.0) / ((2.0 - y) * (y + 3.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegionTag {
    pub in_d1: bool,
    pub in_d2: bool,
}

/// Membership in the two closed regions. Points on the shared boundary belong to both.
pub fn region_membership(x0: f64, y0: f64) -> Result<RegionTag> {
    let in_triangle = (0.0..=1.0).contains(&y0) && x0 >= -1.0 && x0 <= y0 - 1.0;
    if !in_triangle {
        return Err(Error::OutsideTriangle { x: x0, y: y0 });
    }
    let c = region_boundary(y0);
    let lower = y0 <= REGION_SPLIT;
    Ok(RegionTag { in_d1: y0 >= REGION_SPLIT || x0 <= c, in_d2: lower && x0 >= c })
}

/// Half-volumes `(V, V°)` of a body of revolution and of its polar.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainVolumes {
    pub primal: f64,
    pub polar: f64,
}

impl ChainVolumes {
    pub fn of(domain: &UnconditionalPolygon) -> Result<Self> {
        Ok(Self { primal: 0.5 * domain_volume(domain), polar: 0.5 * domain_volume(&domain.polar()?) })
    }
}

/// `conv{A2, D, O, B}`: the chain after both `A1` and the rest of the chain are removed.
pub fn base_polygon(x0: f64, y0: f64) -> Result<UnconditionalPolygon> {
    UnconditionalPolygon::new([Point2::new(-1.0, 0.0), Point2::new(x0, y0), Point2::new(0.0, 1.0)])
}

/// `conv{A2, G, D, O, B}` with `G = (-1, y0 - k(x0 + 1))` where the line `A3 A2` meets `x = -1`:
/// the largest body compatible with slope `k`.
pub fn corner_polygon(x0: f64, y0: f64, k: f64) -> Result<UnconditionalPolygon> {
    let g = Point2::new(-1.0, y0 - k * (x0 + 1.0));
    UnconditionalPolygon::new([Point2::new(-1.0, 0.0), g, Point2::new(x0, y0), Point2::new(0.0, 1.0)])
}

/// Every coefficient family of the closed forms at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoefficientBundle {
    pub deltas: [f64; 4],
    pub lambdas: [f64; 5],
    pub gammas: [f64; 3],
    pub thetas: [f64; 4],
    pub phis: Option<[f64; 4]>,
    pub upsilons: Option<[f64; 3]>,
}

impl CoefficientBundle {
    /// `phis` need the chain volumes and `upsilons` the slope; each is omitted without them.
    pub fn new(x0: f64, y0: f64, k: Option<f64>, volumes: Option<ChainVolumes>) -> Self {
        Self {
            deltas: vertex_drop::deltas(x0, y0),
            lambdas: vertex_drop::lambdas(x0, y0),
            gammas: vertex_drop::gammas(x0, y0),
            thetas: chain_step::thetas(x0, y0),
            phis: volumes.map(|v| chain_step::phis(x0, y0, v)),
            upsilons: k.map(|k| chain_step::upsilons(x0, y0, k)),
        }
    }
}

/// Horner evaluation, highest coefficient first.
#[inline]
pub(crate) fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * t + c)
}
