//! Independent geometric oracles. Nothing here calls the crate's own polar, volume or distance
//! code: polars come from clipping a box by halfplanes, volumes from Pappus' theorem applied to
//! the upper half of a full polygon.
#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::Rng;
use revmahler::{Point2, UnconditionalPolygon};

pub type P = (f64, f64);

/// All four reflections of a chain, as a counter-clockwise convex polygon.
pub fn full(chain: &[Point2]) -> Vec<P> {
    let mut pts: Vec<P> = Vec::new();
    for p in chain {
        for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            pts.push((sx * p.x, sy * p.y));
        }
    }
    ccw_dedup(pts)
}

fn ccw_dedup(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.1.atan2(a.0).total_cmp(&b.1.atan2(b.0)));
    let mut out: Vec<P> = Vec::new();
    for p in pts {
        if out.last().is_some_and(|q| dist(*q, p) < 1e-13) {
            continue;
        }
        out.push(p);
    }
    if out.len() > 1 && dist(out[0], *out.last().unwrap()) < 1e-13 {
        out.pop();
    }
    out
}

pub fn dist(a: P, b: P) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn cross(o: P, a: P, b: P) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Clips a convex polygon by `n·x <= c`.
pub fn clip(poly: &[P], n: P, c: f64) -> Vec<P> {
    let val = |p: P| n.0 * p.0 + n.1 * p.1 - c;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (vp, vq) = (val(p), val(q));
        if vp <= 0.0 {
            out.push(p);
        }
        if (vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0) {
            let t = vp / (vp - vq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// `{y : v·y <= 1 for every vertex v}` of a counter-clockwise polygon around the origin.
pub fn halfspace_polar(vertices: &[P]) -> Vec<P> {
    // The polar lies in the disk of radius 1 / inradius; a tight box keeps the clipping exact.
    let n = vertices.len();
    let inradius = (0..n)
        .map(|i| segment_line_distance((0.0, 0.0), vertices[i], vertices[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min);
    let m = 1.5 / inradius;
    let mut poly = vec![(-m, -m), (m, -m), (m, m), (-m, m)];
    for v in vertices {
        poly = clip(&poly, *v, 1.0);
    }
    ccw_dedup(poly)
}

/// Distance from a point to a convex counter-clockwise polygon (0 inside).
pub fn point_polygon_distance(p: P, poly: &[P]) -> f64 {
    let n = poly.len();
    if (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= 0.0) {
        return 0.0;
    }
    (0..n).map(|i| segment_distance(p, poly[i], poly[(i + 1) % n])).fold(f64::INFINITY, f64::min)
}

fn segment_line_distance(p: P, a: P, b: P) -> f64 {
    cross(a, b, p).abs() / dist(a, b)
}

fn segment_distance(p: P, a: P, b: P) -> f64 {
    let d = (b.0 - a.0, b.1 - a.1);
    let l2 = d.0 * d.0 + d.1 * d.1;
    let t = if l2 == 0.0 { 0.0 } else { (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / l2).clamp(0.0, 1.0) };
    dist(p, (a.0 + t * d.0, a.1 + t * d.1))
}

/// Hausdorff distance between convex polygons; attained at vertices.
pub fn hausdorff(a: &[P], b: &[P]) -> f64 {
    let one = |x: &[P], y: &[P]| x.iter().map(|p| point_polygon_distance(*p, y)).fold(0.0, f64::max);
    one(a, b).max(one(b, a))
}

pub fn area(poly: &[P]) -> f64 {
    let n = poly.len();
    0.5 * (0..n).map(|i| poly[i].0 * poly[(i + 1) % n].1 - poly[(i + 1) % n].0 * poly[i].1).sum::<f64>()
}

/// Volume of the solid swept by an X-axis-symmetric polygon rotating about the X-axis:
/// `2π ∫∫_{y >= 0} y dA`.
pub fn revolution_volume(poly: &[P]) -> f64 {
    let upper = clip(poly, (0.0, -1.0), 0.0);
    let n = upper.len();
    let moment: f64 = (0..n)
        .map(|i| {
            let (p, q) = (upper[i], upper[(i + 1) % n]);
            (p.0 * q.1 - q.0 * p.1) * (p.1 + q.1) / 6.0
        })
        .sum();
    2.0 * PI * moment
}

/// Mahler product of the body generated by an unconditional chain, from scratch.
pub fn oracle_product(chain: &[Point2]) -> f64 {
    let f = full(chain);
    revolution_volume(&f) * revolution_volume(&halfspace_polar(&f))
}

/// `max_v d·v` over the vertices.
pub fn support(poly: &[P], d: P) -> f64 {
    poly.iter().map(|v| v.0 * d.0 + v.1 * d.1).fold(f64::NEG_INFINITY, f64::max)
}

/// Largest `r` with `r d` in the polygon, from its edge halfplanes.
pub fn radial(poly: &[P], d: P) -> f64 {
    let n = poly.len();
    let gauge = (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            let normal = (q.1 - p.1, p.0 - q.0);
            (normal.0 * d.0 + normal.1 * d.1) / (normal.0 * p.0 + normal.1 * p.1)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    1.0 / gauge
}

pub fn to_pairs(chain: &[Point2]) -> Vec<P> {
    chain.iter().map(|p| (p.x, p.y)).collect()
}

/// Random second-quadrant points whose folded hull is a chain with extents `a` and `b`.
fn quadrant_points(a: f64, b: f64, raw: &[(f64, f64)]) -> Vec<Point2> {
    let mut pts = vec![Point2::new(-a, 0.0), Point2::new(0.0, b)];
    pts.extend(raw.iter().map(|&(u, v)| Point2::new(-a * u, b * v)));
    pts
}

/// Chains of up to `max_pts + 2` vertices with random extents.
pub fn chain_strategy(max_pts: usize) -> impl Strategy<Value = UnconditionalPolygon> {
    (0.2f64..5.0, 0.2f64..5.0, prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..=max_pts))
        .prop_filter_map("degenerate hull", |(a, b, raw)| UnconditionalPolygon::hull(quadrant_points(a, b, &raw)).ok())
}

/// Normalized chains (`D = (-1, 0)`, `B = (0, 1)`).
pub fn normalized_strategy(max_pts: usize) -> impl Strategy<Value = UnconditionalPolygon> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..=max_pts)
        .prop_filter_map("degenerate hull", |raw| UnconditionalPolygon::hull(quadrant_points(1.0, 1.0, &raw)).ok())
}

pub fn random_chain<R: Rng>(rng: &mut R, max_pts: usize) -> UnconditionalPolygon {
    loop {
        let a = rng.random_range(0.2..5.0);
        let b = rng.random_range(0.2..5.0);
        let n = rng.random_range(0..=max_pts);
        let raw: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
        if let Ok(p) = UnconditionalPolygon::hull(quadrant_points(a, b, &raw)) {
            return p;
        }
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
