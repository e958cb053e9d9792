use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::geom2d::{GeneratingFunction, NamedProfile, Point2};
use crate::mahler::{
    cone_bound, functional_product, mahler_product, mahler_product_psh, revolution_bound, santalo_axis_search,
    AxisProfile, ParallelSectionsBody, FUNCTIONAL_BOUND, PSH_BOUND,
};
use crate::revolve::BodyOfRevolution;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldenItem {
    pub name: &'static str,
    pub value: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl GoldenItem {
    fn new(name: &'static str, value: f64, expected: f64, tolerance: f64) -> Self {
        let abs_error = (value - expected).abs();
        Self { name, value, expected, abs_error, tolerance, pass: abs_error <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldenReport {
    pub all_passed: bool,
    pub items: Vec<GoldenItem>,
}

/// The equality and reference cases: cylinder, bicone, ball, cone, cube, octahedron and the
/// functional form.
pub fn golden_check() -> Result<GoldenReport> {
    let ball = BodyOfRevolution::new(GeneratingFunction::named(1.0, NamedProfile::UnitDisk)?);
    let cone = santalo_axis_search(&AxisProfile::cone())?;
    let constant = GeneratingFunction::piecewise_linear([Point2::new(0.0, 0.7), Point2::new(2.5, 0.7)])?;
    let tent = GeneratingFunction::piecewise_linear([Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)])?;
    let items = vec![
        GoldenItem::new("cylinder", mahler_product(&BodyOfRevolution::cylinder())?.product, revolution_bound(), 1e-9),
        GoldenItem::new("bicone", mahler_product(&BodyOfRevolution::bicone())?.product, revolution_bound(), 1e-9),
        GoldenItem::new("ball", mahler_product(&ball)?.product, 16.0 * PI * PI / 9.0, 1e-6),
        GoldenItem::new("cone-santalo", cone.best_product, cone_bound(), 1e-4),
        GoldenItem::new("cone-apex-ratio", cone.apex_ratio, 0.75, 1e-3),
        GoldenItem::new("cube", mahler_product_psh(&ParallelSectionsBody::cube())?.product, PSH_BOUND, 1e-9),
        GoldenItem::new(
            "octahedron",
            mahler_product_psh(&ParallelSectionsBody::octahedron())?.product,
            PSH_BOUND,
            1e-9,
        ),
        GoldenItem::new("functional-constant", functional_product(&constant)?, FUNCTIONAL_BOUND, 1e-12),
        GoldenItem::new("functional-tent", functional_product(&tent)?, FUNCTIONAL_BOUND, 1e-12),
    ];
    Ok(GoldenReport { all_passed: items.iter().all(|i| i.pass), items })
}
