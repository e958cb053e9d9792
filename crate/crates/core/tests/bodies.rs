mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revmahler::harness::sample_polygon;
use revmahler::mahler::{cone_bound, domain_product, revolution_bound, PSH_BOUND, SANTALO_PRESCAN};
use revmahler::quad::adaptive_simpson;
use revmahler::reduction::Terminal;
use revmahler::{
    mahler_product, mahler_product_psh, santalo_axis_search, AxisProfile, BodyOfRevolution, GeneratingFunction,
    ParallelSectionsBody, Point2, UnconditionalPolygon,
};

fn body(p: &UnconditionalPolygon) -> BodyOfRevolution {
    BodyOfRevolution::from_domain(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn volume_is_exact(p in chain_strategy(10)) {
        let b = body(&p);
        let g = b.generator();
        let a = g.half_width();
        let quad = PI * adaptive_simpson(|x| g.eval(x).powi(2), -a, a, 1e-12, 40);
        prop_assert!((b.volume() - quad).abs() < 1e-9 * quad.max(1.0));
        prop_assert!(rel(b.volume(), revolution_volume(&full(p.chain()))) < 1e-12);
    }

    #[test]
    fn product_matches_oracle_and_is_self_dual(p in chain_strategy(10)) {
        let b = body(&p);
        let r = mahler_product(&b).unwrap();
        let oracle = oracle_product(p.chain());
        prop_assert!(rel(r.product, oracle) < 1e-9);
        prop_assert!(rel(r.product, r.primal_volume * r.polar_volume) < 1e-12);
        let dual = mahler_product(&b.polar().unwrap()).unwrap();
        prop_assert!((dual.product - r.product).abs() < 1e-9);
        prop_assert!(rel(domain_product(&p).unwrap(), r.product) < 1e-12);
    }

    #[test]
    fn body_polar_involution(p in chain_strategy(10)) {
        let back = body(&p).polar().unwrap().polar().unwrap();
        let chain = back.generator().domain().unwrap();
        prop_assert!(hausdorff(&full(chain.chain()), &full(p.chain())) < 1e-9);
    }

    #[test]
    fn affine_invariance(p in chain_strategy(10), sx in 0.05f64..20.0, sr in 0.05f64..20.0) {
        let b = body(&p).scaled(sx, sr).unwrap();
        let (n, norm) = b.normalize().unwrap();
        prop_assert!(rel(norm.b, 1.0 / b.generator().half_width()) < 1e-15);
        prop_assert!(rel(norm.c, 1.0 / b.generator().eval(0.0)) < 1e-15);
        prop_assert!((n.generator().half_width() - 1.0).abs() < 1e-12);
        prop_assert!((n.generator().eval(0.0) - 1.0).abs() < 1e-12);
        let (pb, pn) = (mahler_product(&b).unwrap().product, mahler_product(&n).unwrap().product);
        prop_assert!((pb - pn).abs() < 1e-9, "{pb} {pn}");
    }

    #[test]
    fn normalized_chain_between_diamond_and_square(p in chain_strategy(10)) {
        let (n, _) = body(&p).normalize().unwrap();
        let chain = n.generator().domain().unwrap();
        prop_assert!(UnconditionalPolygon::square().contains_polygon(&chain));
        prop_assert!(chain.contains_polygon(&UnconditionalPolygon::diamond()));
        let fc = full(chain.chain());
        prop_assert!(fc.iter().all(|v| v.0.abs() <= 1.0 + 1e-12 && v.1.abs() <= 1.0 + 1e-12));
        for d in full(UnconditionalPolygon::diamond().chain()) {
            prop_assert!(point_polygon_distance(d, &fc) < 1e-12);
        }
    }

    #[test]
    fn scale_invariance(p in chain_strategy(10)) {
        let b = body(&p);
        let base = mahler_product(&b).unwrap().product;
        for l in [0.1, 3.0, 10.0] {
            let s = mahler_product(&b.scaled(l, l).unwrap()).unwrap().product;
            prop_assert!((s - base).abs() < 1e-9);
        }
    }
}

/// Radial function of the polar body along `w`, from a halfspace-clipped polar domain, times
/// the support function of the body along `w`, from the full domain's vertices.
fn duality_defect(p: &UnconditionalPolygon, w: [f64; 3]) -> f64 {
    let fp = full(p.chain());
    let polar = halfspace_polar(&fp);
    let d = (w[0], w[1].hypot(w[2]));
    (radial(&polar, d) * support(&fp, d) - 1.0).abs()
}

fn random_unit<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

#[test]
fn slice_projection_cylinder() {
    let cyl = BodyOfRevolution::cylinder();
    let r = cyl.slice_projection_duality(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
    assert!(r.max_deviation < 1e-9, "{r:?}");
}

#[test]
fn slice_projection_random_bodies() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let octagon =
        UnconditionalPolygon::new([Point2::new(-1.0, 0.0), Point2::new(-0.8, 0.8), Point2::new(0.0, 1.0)]).unwrap();
    let mut domains = vec![octagon];
    domains.extend((0..40).map(|_| random_chain(&mut rng, 8)));
    for p in &domains {
        let dirs: Vec<[f64; 3]> = (0..16).map(|_| random_unit(&mut rng)).collect();
        let r = body(p).slice_projection_duality(&dirs).unwrap();
        assert!(r.max_deviation < 1e-7, "{:?}: {}", p.chain(), r.max_deviation);
        for u in &dirs {
            // Any w orthogonal to u.
            let a = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let w = [u[1] * a[2] - u[2] * a[1], u[2] * a[0] - u[0] * a[2], u[0] * a[1] - u[1] * a[0]];
            assert!(duality_defect(p, w) < 1e-9);
        }
    }
}

#[test]
fn revolution_lower_bound() {
    let bound = revolution_bound();
    for i in 0..10_000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + i);
        let n = rng.random_range(3..=12);
        let p = sample_polygon(&mut rng, n);
        let prod = mahler_product(&body(&p)).unwrap().product;
        assert!(prod >= bound - 1e-9, "{:?}: {prod}", p.chain());
        if prod - bound < 1e-6 {
            assert!(Terminal::of(&p).is_some(), "near-equality off the terminals: {:?}", p.chain());
        }
    }
    for t in [Terminal::Cylinder, Terminal::Bicone] {
        let prod = mahler_product(&body(&t.chain())).unwrap().product;
        assert!((prod - bound).abs() < 1e-9);
    }
}

/// Mahler product of a parallel-sections body by integrating slice areas. Slices of the polar
/// at height `x'` are halfplane intersections `{y : f(x) y·c <= 1 - x'x}` over breakpoints and
/// cross-section vertices.
fn psh_oracle(b: &ParallelSectionsBody) -> f64 {
    let g = &b.generator;
    let bp = g.breakpoints().unwrap();
    let cs = full(b.cross_section.chain());
    let a = g.half_width();
    let primal = area(&cs) * 2.0 * bp.windows(2).map(|w| gauss_square(w[0], w[1])).sum::<f64>();
    let slice = |xp: f64| {
        let m = 1e3;
        let mut poly = vec![(-m, -m), (m, -m), (m, m), (-m, m)];
        for p in bp {
            for x in [p.x, -p.x] {
                let rhs = 1.0 - xp * x;
                for c in &cs {
                    poly = clip(&poly, (p.y * c.0, p.y * c.1), rhs);
                }
            }
        }
        if poly.len() < 3 {
            0.0
        } else {
            area(&poly)
        }
    };
    // The slice area is piecewise rational in x'; composite Simpson on a fine grid.
    let n = 4000;
    let h = 2.0 / a / n as f64;
    let xs = |i: usize| -1.0 / a + h * i as f64;
    let mut s = slice(xs(0)) + slice(xs(n));
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * slice(xs(i));
    }
    primal * s * h / 3.0
}

/// `∫ f²` over one linear piece, two-point Gauss–Legendre (exact for quadratics).
fn gauss_square(p: Point2, q: Point2) -> f64 {
    let (mid, half) = (0.5 * (p.x + q.x), 0.5 * (q.x - p.x));
    let at = |x: f64| p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x);
    let r = half / 3f64.sqrt();
    half * (at(mid - r).powi(2) + at(mid + r).powi(2))
}

fn random_psh<R: Rng>(rng: &mut R) -> ParallelSectionsBody {
    let g = GeneratingFunction::from_domain(&random_chain(rng, 6)).unwrap();
    ParallelSectionsBody::new(g, random_chain(rng, 6))
}

#[test]
fn psh_matches_slice_integration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bodies = vec![ParallelSectionsBody::cube(), ParallelSectionsBody::octahedron()];
    bodies.extend((0..12).map(|_| random_psh(&mut rng)));
    for b in &bodies {
        let lib = mahler_product_psh(b).unwrap().product;
        let oracle = psh_oracle(b);
        assert!(rel(lib, oracle) < 1e-6, "{lib} vs {oracle}");
    }
}

#[test]
fn psh_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..1000 {
        let b = random_psh(&mut rng);
        let r = mahler_product_psh(&b).unwrap();
        assert!(r.product >= PSH_BOUND - 1e-9, "{r:?}");
    }
    for b in [ParallelSectionsBody::cube(), ParallelSectionsBody::octahedron()] {
        assert!((mahler_product_psh(&b).unwrap().product - PSH_BOUND).abs() < 1e-9);
    }
}

/// Product of a translated axis profile, entirely from the oracle pipeline.
fn shifted_oracle(profile: &AxisProfile, s: f64) -> f64 {
    let mut pts: Vec<P> = Vec::new();
    for p in profile.breakpoints() {
        pts.push((p.x + s, p.y));
        pts.push((p.x + s, -p.y));
    }
    pts.push((s, 0.0));
    pts.push((s + profile.length(), 0.0));
    let poly = convex_hull(pts);
    revolution_volume(&poly) * revolution_volume(&halfspace_polar(&poly))
}

fn convex_hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup_by(|a, b| dist(*a, *b) < 1e-14);
    let turn = |o: P, a: P, b: P| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<P> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-15 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-15 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[test]
fn shifted_polar_matches_halfspace_oracle() {
    // The polar of a body whose generating domain is only symmetric about the axis is the body
    // generated by the polar domain; check volumes and radial functions against the oracle.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let frustum = AxisProfile::new([Point2::new(0.0, 1.0), Point2::new(1.0, 0.5)]).unwrap();
    for profile in [AxisProfile::cone(), frustum] {
        let h = profile.length();
        for _ in 0..50 {
            let s = -h * rng.random_range(0.02..0.98);
            assert!(rel(profile.shifted_product(s).unwrap(), shifted_oracle(&profile, s)) < 1e-10);
            let up = profile.upper_chain(s);
            let mut prim: Vec<P> = up.iter().map(|p| (p.x, p.y)).collect();
            prim.extend(up.iter().map(|p| (p.x, -p.y)));
            let prim = convex_hull(prim);
            let polar = profile.polar_upper_chain(s).unwrap();
            let mut dual: Vec<P> = polar.iter().map(|p| (p.x, p.y)).collect();
            dual.extend(polar.iter().map(|p| (p.x, -p.y)));
            let dual = convex_hull(dual);
            for _ in 0..16 {
                let w = random_unit(&mut rng);
                let d = (w[0], w[1].hypot(w[2]));
                assert!((radial(&dual, d) * support(&prim, d) - 1.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn frustum_santalo_matches_dense_scan() {
    let profile = AxisProfile::new([Point2::new(0.0, 1.0), Point2::new(1.0, 0.5)]).unwrap();
    let r = santalo_axis_search(&profile).unwrap();
    let n = 10_000;
    let (best_s, best) = (1..n)
        .map(|i| {
            let s = -(i as f64) / n as f64;
            (s, shifted_oracle(&profile, s))
        })
        .fold((0.0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    assert!(r.best_product <= best + 1e-12, "{} vs scan {best}", r.best_product);
    assert!(best - r.best_product < 1e-6);
    assert!((r.best_shift - best_s).abs() <= 2.0 / n as f64);
    assert!(r.best_product > cone_bound() && r.best_product < revolution_bound());
    assert!(r.best_product <= r.bracket_products.0 && r.best_product <= r.bracket_products.1);
    assert!(r.apex_ratio > 0.0 && r.apex_ratio < 1.0);
    const { assert!(SANTALO_PRESCAN >= 1024) };
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn santalo_shift_is_stationary(raw in prop::collection::vec((0.0f64..1.0, 0.05f64..1.0), 1..6), h in 0.3f64..3.0, r0 in 0.2f64..2.0) {
        // A concave profile from the lower envelope of random chords above 0.
        let mut xs: Vec<f64> = raw.iter().map(|p| p.0 * h).collect();
        xs.push(0.0);
        xs.push(h);
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-3 * h);
        let ys: Vec<f64> = xs.iter().map(|&x| r0 * (1.0 - 0.9 * (x / h).powi(2))).collect();
        let profile = AxisProfile::new(xs.iter().zip(&ys).map(|(&x, &y)| Point2::new(x, y))).unwrap();
        let r = santalo_axis_search(&profile).unwrap();
        let step = 1e-5;
        let fd = (profile.shifted_product(r.best_shift + step).unwrap() - profile.shifted_product(r.best_shift - step).unwrap()) / (2.0 * step);
        prop_assert!(fd.abs() < 1e-4, "{fd}");
        prop_assert!(r.best_product <= r.bracket_products.0 && r.best_product <= r.bracket_products.1);
        prop_assert!(r.apex_ratio > 0.0 && r.apex_ratio < 1.0);
    }
}

#[test]
fn cone_santalo_point() {
    let r = santalo_axis_search(&AxisProfile::cone()).unwrap();
    assert!((r.best_product - 256.0 * PI * PI / 243.0).abs() < 1e-4);
    assert!((r.apex_ratio - 0.75).abs() < 1e-3);
    assert!((r.best_product - shifted_oracle(&AxisProfile::cone(), r.best_shift)).abs() < 1e-10);
}
