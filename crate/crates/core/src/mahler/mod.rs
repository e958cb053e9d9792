//! Mahler products `V(K)·V(K*)` and the headline lower bounds.

mod psh;
mod santalo;

use std::f64::consts::PI;

use serde::Serialize;

pub use psh::{mahler_product_psh, ParallelSectionsBody};
pub use santalo::{santalo_axis_search, AxisProfile, SantaloSearchResult, SANTALO_PRESCAN, SANTALO_WIDTH};

use crate::error::Result;
use crate::geom2d::{conjugate_at, GeneratingFunction, Profile, UnconditionalPolygon};
use crate::quad::{adaptive_simpson, ABS_TOL, MAX_DEPTH};
use crate::revolve::{domain_volume, profile_square_integral, BodyOfRevolution};

/// `4π²/3`, attained by the cylinder and the bicone.
pub fn revolution_bound() -> f64 {
    4.0 * PI * PI / 3.0
}

/// `4³/3! = 32/3`, attained by the cube and the octahedron.
pub const PSH_BOUND: f64 = 32.0 / 3.0;

/// `4⁴π²/3⁵`, attained by a cone with its Santaló point on the axis.
pub fn cone_bound() -> f64 {
    256.0 * PI * PI / 243.0
}

/// `4/3`, the functional form of the revolution bound.
pub const FUNCTIONAL_BOUND: f64 = 4.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MahlerReport {
    pub primal_volume: f64,
    pub polar_volume: f64,
    pub product: f64,
    pub bound: f64,
    pub slack: f64,
}

impl MahlerReport {
    pub fn new(primal_volume: f64, polar_volume: f64, bound: f64) -> Self {
        let product = primal_volume * polar_volume;
        Self { primal_volume, polar_volume, product, bound, slack: product - bound }
    }
}

/// Mahler product of a body of revolution.
///
/// Piecewise-linear generators use the exact frustum sums of the body and its polar; analytic
/// generators integrate `f²` and `(f*)²` numerically, with `f*` evaluated pointwise.
pub fn mahler_product(body: &BodyOfRevolution) -> Result<MahlerReport> {
    let g = body.generator();
    let polar_volume = PI * conjugate_square_integral(g)?;
    Ok(MahlerReport::new(body.volume(), polar_volume, revolution_bound()))
}

/// Mahler product of the body generated by an unconditional polygon, from the frustum sums of
/// the domain and its polar.
pub fn domain_product(domain: &UnconditionalPolygon) -> Result<f64> {
    Ok(domain_volume(domain) * domain_volume(&domain.polar()?))
}

/// `(∫ f²)·(∫ (f*)²)`; equals the Mahler product divided by π².
pub fn functional_product(f: &GeneratingFunction) -> Result<f64> {
    Ok(profile_square_integral(f) * conjugate_square_integral(f)?)
}

/// ∫ (f*)² over `[-1/a, 1/a]`.
pub(crate) fn conjugate_square_integral(g: &GeneratingFunction) -> Result<f64> {
    match g.profile() {
        Profile::PiecewiseLinear(_) => Ok(profile_square_integral(&g.conjugate()?)),
        Profile::Analytic(_) => {
            let w = 1.0 / g.half_width();
            Ok(2.0 * adaptive_simpson(|x| conjugate_at(g, x).powi(2), 0.0, w, ABS_TOL / 2.0, MAX_DEPTH))
        }
    }
}
