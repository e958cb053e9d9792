mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use revmahler::lemma::chain_step as cs;
use revmahler::lemma::vertex_drop as vd;
use revmahler::lemma::{
    base_polygon, corner_polygon, region_membership, slide_run, slope_range, top_run, ChainVolumes,
};
use revmahler::{LemmaConfig, Point2};

const FD_STEP: f64 = 1e-5;

/// Half-volumes of a chain and of its polar, through the oracle pipeline.
fn oracle_halves(chain: &[Point2]) -> ChainVolumes {
    let f = full(chain);
    ChainVolumes { primal: 0.5 * revolution_volume(&f), polar: 0.5 * revolution_volume(&halfspace_polar(&f)) }
}

fn chain_with_top(c: &LemmaConfig, rest: &[Point2]) -> Vec<Point2> {
    let mut v = rest.to_vec();
    v.push(c.inner_vertex());
    v.push(c.top_vertex());
    v.push(Point2::new(0.0, 1.0));
    v
}

/// `(x0, y0)` strictly inside the triangle, from the unit square.
fn triangle_point(u: f64, v: f64) -> (f64, f64) {
    let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
    // Corners A = (-1, 1), D = (-1, 0), B = (0, 1).
    (-1.0 + v, 1.0 - u)
}

fn inner_point() -> impl Strategy<Value = (f64, f64)> {
    (0.01f64..0.99, 0.01f64..0.99)
        .prop_map(|(u, v)| triangle_point(u, v))
        .prop_filter("near an edge", |&(x, y)| x > -0.995 && y < 0.995 && y - 1.0 - x > 0.005 && y > 0.005)
}

/// Relative gate for an expanded polynomial in `t`. Its coefficients each cancel down to the
/// size of `(1 - y0)²` and the sum cancels by `cond`; near `y0 = 1` that rounding error
/// exceeds 1e-10, and the gate widens to it.
fn expanded_tolerance(coeffs: &[f64], t: f64, y0: f64) -> f64 {
    let n = coeffs.len();
    let terms: Vec<f64> = coeffs.iter().enumerate().map(|(i, c)| c * t.powi((n - 1 - i) as i32)).collect();
    let cond = terms.iter().map(|v| v.abs()).sum::<f64>() / terms.iter().sum::<f64>().abs();
    1e-10f64.max(8.0 * f64::EPSILON * cond / (1.0 - y0).powi(2))
}

fn close(a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> bool {
    (a - b).abs() <= rel_tol * a.abs().max(b.abs()) + abs_tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn vertex_drop_volumes_match_frustum_oracle((x0, y0) in inner_point(), s in 0.0f64..=1.0) {
        let c = LemmaConfig::new(x0, y0, s * top_run(x0, y0)).unwrap();
        let chain = chain_with_top(&c, &[Point2::new(-1.0, 0.0)]);
        let o = oracle_halves(&chain);
        prop_assert!(rel(vd::primal_half_volume(&c), o.primal) < 1e-9, "{c:?}");
        prop_assert!(rel(vd::polar_half_volume(&c), o.polar) < 1e-9, "{c:?}");
        prop_assert!(rel(vd::quarter_product(&c), o.primal * o.polar) < 1e-9);
    }

    #[test]
    fn vertex_drop_derivatives_match_differences((x0, y0) in inner_point(), s in 0.05f64..0.95) {
        let top = top_run(x0, y0);
        prop_assume!(top > 100.0 * FD_STEP);
        let c = LemmaConfig::new(x0, y0, s * top).unwrap();
        let (lo, hi) = (c.at(c.t() - FD_STEP).unwrap(), c.at(c.t() + FD_STEP).unwrap());
        let fd1 = (vd::quarter_product(&hi) - vd::quarter_product(&lo)) / (2.0 * FD_STEP);
        prop_assert!(close(vd::quarter_product_dt(&c), fd1, 1e-5, 1e-9), "{} vs {fd1}", vd::quarter_product_dt(&c));
        let fd2 = (vd::quarter_product_dt(&hi) - vd::quarter_product_dt(&lo)) / (2.0 * FD_STEP);
        prop_assert!(close(vd::quarter_product_dt2(&c), fd2, 1e-4, 1e-9), "{} vs {fd2}", vd::quarter_product_dt2(&c));
        let fdv = (vd::polar_half_volume(&hi) - vd::polar_half_volume(&lo)) / (2.0 * FD_STEP);
        prop_assert!(close(vd::polar_half_volume_dt(&c), fdv, 1e-5, 1e-9));
    }

    #[test]
    fn vertex_drop_factorizations_agree((x0, y0) in inner_point(), s in 0.0f64..=1.0) {
        let c = LemmaConfig::new(x0, y0, s * top_run(x0, y0)).unwrap();
        let t = c.t();
        prop_assert!(close(vd::quarter_product_dt2_reduced(&c), vd::quarter_product_dt2(&c), 1e-10, 1e-13));
        let (e, f) = (vd::quarter_product_dt_expanded(&c), vd::quarter_product_dt(&c));
        let tol = expanded_tolerance(&vd::lambdas(x0, y0), t, y0);
        prop_assert!(close(e, f, tol, 1e-13), "{e} {f} tol {tol}");
        let (e, f) = (vd::quarter_product_dt2_expanded(&c), vd::quarter_product_dt2(&c));
        let tol = expanded_tolerance(&vd::gammas(x0, y0), t, y0);
        prop_assert!(close(e, f, tol, 1e-13), "{e} {f} tol {tol}");
    }

    #[test]
    fn endpoint_identities((x0, y0) in inner_point()) {
        let c = LemmaConfig::new(x0, y0, top_run(x0, y0)).unwrap();
        let g = PI * PI / (9.0 * y0 * y0) * vd::endpoint_slope_factor(x0, y0);
        prop_assert!(close(vd::quarter_product_dt(&c), g, 1e-10, 1e-12));
        let h = PI * PI / 9.0 * vd::endpoint_curvature_factor(x0, y0) / (y0 * (1.0 - y0));
        prop_assert!(close(vd::quarter_product_dt2(&c), h, 1e-10, 1e-12));
    }

    #[test]
    fn regions_cover_the_triangle(u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let (x, y) = triangle_point(u, v);
        let tag = region_membership(x, y).unwrap();
        prop_assert!(tag.in_d1 || tag.in_d2);
    }
}

fn mid_slope(x0: f64, y0: f64, w: f64) -> f64 {
    let (lo, hi) = slope_range(x0, y0);
    lo + w * (hi - lo)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chain_step_matches_frustum_oracle((x0, y0) in inner_point(), w in 0.0f64..=1.0, s in 0.0f64..=1.0) {
        let k = mid_slope(x0, y0, w);
        let c = LemmaConfig::with_slope(x0, y0, s * slide_run(x0, y0, k), k).unwrap();
        let g = Point2::new(-1.0, y0 - k * (x0 + 1.0));
        let rest = [Point2::new(-1.0, 0.0), g];
        let v = oracle_halves(corner_polygon(x0, y0, k).unwrap().chain());
        let with_top = oracle_halves(&chain_with_top(&c, &rest));
        prop_assert!(rel(cs::chain_quarter_product(&c, v), with_top.primal * with_top.polar) < 1e-9, "{c:?}");
        prop_assert!(rel(cs::corner_body_half_volume(x0, y0, k), v.primal) < 1e-9);
    }

    #[test]
    fn chain_step_reduces_to_vertex_drop((x0, y0) in inner_point(), s in 0.0f64..=1.0) {
        let c = LemmaConfig::new(x0, y0, s * top_run(x0, y0)).unwrap();
        let v = oracle_halves(base_polygon(x0, y0).unwrap().chain());
        prop_assert!(rel(cs::chain_quarter_product(&c, v), vd::quarter_product(&c)) < 1e-9);
        prop_assert!(close(cs::chain_quarter_product_dt(&c, v), vd::quarter_product_dt(&c), 1e-9, 1e-12));
        prop_assert!(close(cs::chain_quarter_product_dt2(&c, v), vd::quarter_product_dt2(&c), 1e-9, 1e-12));
    }

    #[test]
    fn chain_step_derivatives_match_differences((x0, y0) in inner_point(), w in 0.0f64..=1.0, s in 0.05f64..0.95) {
        let k = mid_slope(x0, y0, w);
        let end = slide_run(x0, y0, k);
        prop_assume!(end > 100.0 * FD_STEP);
        let c = LemmaConfig::with_slope(x0, y0, s * end, k).unwrap();
        let v = oracle_halves(corner_polygon(x0, y0, k).unwrap().chain());
        let (lo, hi) = (c.at(c.t() - FD_STEP).unwrap(), c.at(c.t() + FD_STEP).unwrap());
        let fd1 = (cs::chain_quarter_product(&hi, v) - cs::chain_quarter_product(&lo, v)) / (2.0 * FD_STEP);
        prop_assert!(close(cs::chain_quarter_product_dt(&c, v), fd1, 1e-5, 1e-9));
        let fd2 = (cs::chain_quarter_product_dt(&hi, v) - cs::chain_quarter_product_dt(&lo, v)) / (2.0 * FD_STEP);
        prop_assert!(close(cs::chain_quarter_product_dt2(&c, v), fd2, 1e-4, 1e-9));
        prop_assert!(close(cs::chain_curvature_factor(&c, v), cs::chain_curvature_factor_in_volume(&c, v), 1e-10, 1e-12));
    }

    #[test]
    fn slide_end_forms_agree((x0, y0) in inner_point(), w in 0.0f64..=1.0) {
        let k = mid_slope(x0, y0, w);
        let c = LemmaConfig::with_slope(x0, y0, slide_run(x0, y0, k), k).unwrap();
        let v = oracle_halves(corner_polygon(x0, y0, k).unwrap().chain());
        let direct = cs::chain_quarter_product_dt(&c, v);
        prop_assert!(close(cs::chain_slope_at_slide_end(&c, v).unwrap(), direct, 1e-9, 1e-10));
        let j = cs::chain_curvature_factor(&c, v);
        prop_assert!(close(j, cs::corner_curvature(x0, y0, k), 1e-9, 1e-10));
    }

    #[test]
    fn corner_numerator_derivatives((x0, y0) in inner_point(), w in 0.05f64..0.95) {
        let k = mid_slope(x0, y0, w);
        let l = |k: f64| cs::corner_curvature_numerator(x0, y0, k);
        let fd1 = (l(k + FD_STEP) - l(k - FD_STEP)) / (2.0 * FD_STEP);
        prop_assert!(close(cs::corner_curvature_numerator_dk(x0, y0, k), fd1, 1e-5, 1e-9));
        let d1 = |k: f64| cs::corner_curvature_numerator_dk(x0, y0, k);
        let fd2 = (d1(k + FD_STEP) - d1(k - FD_STEP)) / (2.0 * FD_STEP);
        prop_assert!(close(cs::corner_curvature_numerator_dk2(x0, y0, k), fd2, 1e-4, 1e-9));
        let top = y0 / (x0 + 1.0);
        prop_assert!(close(cs::corner_curvature_numerator_dk_at_top(x0, y0), d1(top), 1e-9, 1e-12));
        prop_assert!(close(cs::corner_curvature_numerator_dk2_at_top(x0, y0), cs::corner_curvature_numerator_dk2(x0, y0, top), 1e-9, 1e-12));
    }
}

#[test]
fn square_and_diamond_limits() {
    // t = 0 at the square corner gives the cylinder, t = 0 on the diagonal the bicone.
    let bound = 4.0 * PI * PI / 3.0;
    let sq = LemmaConfig::new(-1.0, 1.0, 0.0).unwrap();
    assert!((4.0 * vd::quarter_product(&sq) - bound).abs() < 1e-12);
    let dia = LemmaConfig::new(-0.5, 0.5, 0.0).unwrap();
    assert!((4.0 * vd::quarter_product(&dia) - bound).abs() < 1e-12);
    assert!((vd::polar_half_volume(&sq) - PI / 3.0).abs() < 1e-14);
    assert!((vd::polar_half_volume(&dia) - PI).abs() < 1e-14);
}
