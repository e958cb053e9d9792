use serde::{Deserialize, Serialize};

use super::{Point2, MERGE_TOL};
use crate::error::{Error, Result};

/// A planar convex body symmetric in both coordinate axes, stored as the vertex chain of its
/// closed second-quadrant piece.
///
/// The chain runs from the point on the negative X-axis to the point on the positive Y-axis,
/// ordered by decreasing polar angle. Both axis points are always present even when they are
/// not corners of the reflected polygon, so `conv{O, chain}` is exactly the quadrant piece.
/// Points within [`MERGE_TOL`] of each other are merged and points within [`MERGE_TOL`] of the
/// line through their neighbours are dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChain")]
pub struct UnconditionalPolygon {
    chain: Vec<Point2>,
}

#[derive(Deserialize)]
struct RawChain {
    chain: Vec<Point2>,
}

impl TryFrom<RawChain> for UnconditionalPolygon {
    type Error = Error;
    fn try_from(raw: RawChain) -> Result<Self> {
        UnconditionalPolygon::new(raw.chain)
    }
}

/// A chain edge with its outward normal `normal` and support value `offset = normal · from`.
/// The normal is not unit length.
#[derive(Clone, Copy, Debug)]
pub struct Edge {
    pub from: Point2,
    pub to: Point2,
    pub normal: Point2,
    pub offset: f64,
}

impl Edge {
    /// The vertex of the polar body dual to this edge.
    #[inline]
    pub fn dual_vertex(&self) -> Point2 {
        self.normal * (1.0 / self.offset)
    }
}

/// Signed distance of `q` from the line `p r`; positive when `q` bulges away from the origin.
#[inline]
fn bulge(p: Point2, q: Point2, r: Point2) -> f64 {
    let base = r - p;
    let len = base.norm();
    if len == 0.0 {
        return 0.0;
    }
    base.cross(q - p) / len
}

impl UnconditionalPolygon {
    /// Validates and canonicalizes a second-quadrant chain.
    ///
    /// Points may come in any order. A missing axis point is filled in: a first vertex `(x, y)`
    /// with `y > 0` implies the vertical edge through `(x, 0)`, and likewise for the last vertex.
    /// Fails if any point is outside the closed quadrant, or if a listed point is not extreme.
    pub fn new(points: impl IntoIterator<Item = Point2>) -> Result<Self> {
        let mut pts = Vec::new();
        for (i, p) in points.into_iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidPolygon(format!("chain[{i}] is not finite")));
            }
            if p.x > MERGE_TOL || p.y < -MERGE_TOL {
                return Err(Error::InvalidPolygon(format!(
                    "chain[{i}] = ({}, {}) is outside the quadrant x <= 0, y >= 0",
                    p.x, p.y
                )));
            }
            let p = Point2::new(p.x.min(0.0), p.y.max(0.0));
            if p.norm() <= MERGE_TOL {
                return Err(Error::InvalidPolygon(format!("chain[{i}] is the origin")));
            }
            pts.push(p);
        }
        if pts.is_empty() {
            return Err(Error::DegeneratePolygon("empty chain".into()));
        }
        pts.sort_by(|a, b| b.y.atan2(b.x).total_cmp(&a.y.atan2(a.x)));

        let first = pts[0];
        if first.y > MERGE_TOL {
            pts.insert(0, Point2::new(first.x, 0.0));
        } else {
            pts[0].y = 0.0;
        }
        let last = *pts.last().unwrap();
        if last.x < -MERGE_TOL {
            pts.push(Point2::new(0.0, last.y));
        } else {
            pts.last_mut().unwrap().x = 0.0;
        }

        let mut chain: Vec<Point2> = Vec::with_capacity(pts.len());
        for p in pts {
            if chain.last().is_some_and(|q| q.dist(p) <= MERGE_TOL) {
                continue;
            }
            while chain.len() >= 2 {
                let b = bulge(chain[chain.len() - 2], chain[chain.len() - 1], p);
                if b.abs() <= MERGE_TOL {
                    chain.pop();
                } else if b < 0.0 {
                    let q = chain[chain.len() - 1];
                    return Err(Error::InvalidPolygon(format!(
                        "vertex ({}, {}) is not extreme (reflex by {:.3e})",
                        q.x, q.y, -b
                    )));
                } else {
                    break;
                }
            }
            chain.push(p);
        }
        // A merge may have kept a near-axis neighbour in place of the snapped axis point.
        if let Some(first) = chain.first_mut() {
            first.y = 0.0;
        }
        if let Some(last) = chain.last_mut() {
            last.x = 0.0;
        }
        Self::check_axis_corners(&chain)?;
        let poly = Self { chain };
        if poly.area() <= MERGE_TOL {
            return Err(Error::DegeneratePolygon("chain hull has empty interior".into()));
        }
        Ok(poly)
    }

    /// Convex hull of the four-fold reflection of `points`, returned in chain form.
    pub fn hull(points: impl IntoIterator<Item = Point2>) -> Result<Self> {
        let mut pts: Vec<Point2> = points.into_iter().map(Point2::fold).collect();
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite point".into()));
        }
        let a = pts.iter().map(|p| -p.x).fold(0.0, f64::max);
        let b = pts.iter().map(|p| p.y).fold(0.0, f64::max);
        if a <= MERGE_TOL || b <= MERGE_TOL {
            return Err(Error::DegeneratePolygon("hull has empty interior".into()));
        }
        pts.push(Point2::new(-a, 0.0));
        pts.push(Point2::new(0.0, b));
        pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        // Upper hull from (-a, 0) to (0, b), clockwise.
        let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
        for p in pts {
            while upper.len() >= 2 && bulge(upper[upper.len() - 2], upper[upper.len() - 1], p) <= MERGE_TOL {
                upper.pop();
            }
            upper.push(p);
        }
        let start = upper.iter().position(|p| p.x == -a && p.y == 0.0).unwrap_or(0);
        Self::new(upper.into_iter().skip(start))
    }

    fn check_axis_corners(chain: &[Point2]) -> Result<()> {
        if chain.len() < 2 {
            return Err(Error::DegeneratePolygon("chain needs an X-axis and a Y-axis point".into()));
        }
        let n = chain.len();
        if chain[1].x < chain[0].x - MERGE_TOL {
            return Err(Error::InvalidPolygon(format!(
                "X-axis point ({}, 0) is not extreme: vertex ({}, {}) lies further out",
                chain[0].x, chain[1].x, chain[1].y
            )));
        }
        if chain[n - 2].y > chain[n - 1].y + MERGE_TOL {
            return Err(Error::InvalidPolygon(format!(
                "Y-axis point (0, {}) is not extreme: vertex ({}, {}) lies higher",
                chain[n - 1].y,
                chain[n - 2].x,
                chain[n - 2].y
            )));
        }
        Ok(())
    }

    pub fn chain(&self) -> &[Point2] {
        &self.chain
    }

    pub fn into_chain(self) -> Vec<Point2> {
        self.chain
    }

    /// Number of chain points, axis points included.
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// The unit square `[-1, 1]²`.
    pub fn square() -> Self {
        Self { chain: vec![Point2::new(-1.0, 0.0), Point2::new(-1.0, 1.0), Point2::new(0.0, 1.0)] }
    }

    /// The cross-polytope `|x| + |y| <= 1`.
    pub fn diamond() -> Self {
        Self { chain: vec![Point2::new(-1.0, 0.0), Point2::new(0.0, 1.0)] }
    }

    /// Half-width along the X-axis.
    pub fn x_extent(&self) -> f64 {
        -self.chain[0].x
    }

    /// Half-height along the Y-axis.
    pub fn y_extent(&self) -> f64 {
        self.chain[self.chain.len() - 1].y
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.chain.windows(2).map(|w| {
            let normal = (w[1] - w[0]).perp();
            Edge { from: w[0], to: w[1], normal, offset: normal.dot(w[0]) }
        })
    }

    /// The polar body `{x : x·p <= 1 for every vertex p}`.
    ///
    /// Each chain edge with outward normal `n` and support value `h` maps to the dual vertex
    /// `n / h`; the dual axis points are `(-1/a, 0)` and `(0, 1/b)`.
    pub fn polar(&self) -> Result<Self> {
        let mut dual = Vec::with_capacity(self.chain.len() + 2);
        dual.push(Point2::new(-1.0 / self.x_extent(), 0.0));
        // Axis corners may overshoot by up to MERGE_TOL, tilting an end edge's normal out of
        // the quadrant; the dual vertex belongs on the axis then.
        dual.extend(self.edges().map(|e| {
            let v = e.dual_vertex();
            Point2::new(v.x.min(0.0), v.y.max(0.0))
        }));
        dual.push(Point2::new(0.0, 1.0 / self.y_extent()));
        Self::new(dual)
    }

    /// Support function `max_v v·dir` over the full reflected vertex set.
    pub fn support(&self, dir: Point2) -> f64 {
        let d = dir.fold();
        self.chain.iter().map(|v| v.dot(d)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Radial function `max {λ >= 0 : λ·dir ∈ P}`.
    pub fn radial(&self, dir: Point2) -> f64 {
        let d = dir.fold();
        self.edges()
            .filter_map(|e| {
                let s = e.normal.dot(d);
                (s > 0.0).then(|| e.offset / s)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: Point2) -> bool {
        let q = p.fold();
        self.edges().all(|e| e.normal.dot(q) <= e.offset + MERGE_TOL * e.normal.norm())
    }

    /// Vertex containment: every vertex of `other` lies in `self`.
    pub fn contains_polygon(&self, other: &Self) -> bool {
        other.chain.iter().all(|&p| self.contains(p))
    }

    /// Shoelace area of the full polygon.
    pub fn area(&self) -> f64 {
        2.0 * self.chain.windows(2).map(|w| -w[0].cross(w[1])).sum::<f64>()
    }

    /// Vertices of the full reflected polygon in clockwise order, starting on the negative
    /// X-axis side. Axis points that are not corners are omitted.
    pub fn full_vertices(&self) -> Vec<Point2> {
        let c = &self.chain;
        let mut ring: Vec<Point2> = c.clone();
        ring.extend(c.iter().rev().skip(1).map(|p| Point2::new(-p.x, p.y)));
        ring.extend(c.iter().skip(1).map(|p| Point2::new(-p.x, -p.y)));
        ring.extend(c.iter().rev().skip(1).map(|p| Point2::new(p.x, -p.y)));
        ring.pop();
        let n = ring.len();
        (0..n)
            .filter(|&i| bulge(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) > MERGE_TOL)
            .map(|i| ring[i])
            .collect()
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to(&self, p: Point2) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        let ring = self.full_vertices();
        let n = ring.len();
        (0..n).map(|i| p.dist_to_segment(ring[i], ring[(i + 1) % n])).fold(f64::INFINITY, f64::min)
    }

    /// Hausdorff distance. Distance to a convex set is convex, so the maximum over a polygon is
    /// attained at a vertex; by symmetry the chain vertices suffice.
    pub fn hausdorff(&self, other: &Self) -> f64 {
        let one = self.chain.iter().map(|&v| other.distance_to(v)).fold(0.0, f64::max);
        let two = other.chain.iter().map(|&v| self.distance_to(v)).fold(0.0, f64::max);
        one.max(two)
    }

    /// Image under `diag(sx, sy)`.
    pub fn scaled(&self, sx: f64, sy: f64) -> Result<Self> {
        if !(sx > 0.0 && sy > 0.0) {
            return Err(Error::InvalidPolygon(format!("scale factors must be positive, got ({sx}, {sy})")));
        }
        Self::new(self.chain.iter().map(|p| Point2::new(p.x * sx, p.y * sy)))
    }

    /// Chain-wise comparison of canonical forms.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.chain.len() == other.chain.len() && self.chain.iter().zip(&other.chain).all(|(p, q)| p.dist(*q) <= tol)
    }
}
