use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{Point2, MERGE_TOL};
use crate::optim::scan_then_golden;
use crate::revolve::frustum;

/// Evenly spaced shifts scored before the golden-section refinement.
pub const SANTALO_PRESCAN: usize = 1024;
/// Final bracket width of the shift search.
pub const SANTALO_WIDTH: f64 = 1e-10;

/// A concave, nonnegative, piecewise-linear profile on `[0, h]`, not necessarily even. The body
/// it generates is symmetric about the X-axis but not about the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisProfile {
    h: f64,
    breakpoints: Vec<Point2>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SantaloSearchResult {
    /// Axis translation `s`: the body occupies `[s, s + h]` at the optimum.
    pub best_shift: f64,
    pub best_product: f64,
    /// Distance from the origin to the far end `x = h`, as a fraction of `h`.
    pub apex_ratio: f64,
    /// Products at the ends of the search bracket.
    pub bracket_products: (f64, f64),
}

impl AxisProfile {
    /// Breakpoints `(x, f)` with `x` strictly increasing from 0; `h` is the last `x`.
    pub fn new(breakpoints: impl IntoIterator<Item = Point2>) -> Result<Self> {
        let pts: Vec<Point2> = breakpoints.into_iter().collect();
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        if pts.len() < 2 {
            return bad("an axis profile needs at least two breakpoints".into());
        }
        if pts.iter().any(|p| !p.is_finite() || p.y < 0.0) {
            return bad("breakpoints must be finite with f >= 0".into());
        }
        if pts[0].x != 0.0 {
            return bad(format!("first breakpoint must be at x = 0, got {}", pts[0].x));
        }
        if pts.windows(2).any(|w| !(w[1].x > w[0].x)) {
            return bad("breakpoint x values must be strictly increasing".into());
        }
        let slopes: Vec<f64> = pts.windows(2).map(|w| (w[1].y - w[0].y) / (w[1].x - w[0].x)).collect();
        if slopes.windows(2).any(|s| s[1] > s[0] + MERGE_TOL) {
            return bad("profile must be concave".into());
        }
        if pts.iter().all(|p| p.y == 0.0) {
            return bad("profile is identically zero".into());
        }
        let h = pts[pts.len() - 1].x;
        Ok(Self { h, breakpoints: pts })
    }

    /// `f(x) = 1 - x` on `[0, 1]`.
    pub fn cone() -> Self {
        Self::new([Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)]).expect("cone is valid")
    }

    pub fn length(&self) -> f64 {
        self.h
    }

    pub fn breakpoints(&self) -> &[Point2] {
        &self.breakpoints
    }

    pub fn volume(&self) -> f64 {
        self.breakpoints.windows(2).map(|w| frustum(w[0].x, w[1].x, w[0].y, w[1].y)).sum()
    }

    /// Upper boundary of the generating domain translated to `[s, s + h]`, left to right,
    /// closed with the two axis points.
    pub fn upper_chain(&self, s: f64) -> Vec<Point2> {
        let mut c = Vec::with_capacity(self.breakpoints.len() + 2);
        c.push(Point2::new(s, 0.0));
        c.extend(self.breakpoints.iter().map(|p| Point2::new(p.x + s, p.y)));
        c.push(Point2::new(s + self.h, 0.0));
        c.dedup_by(|a, b| a.dist(*b) <= MERGE_TOL);
        c
    }

    /// Upper boundary of the polar of the translated domain, left to right. Requires
    /// `-h < s < 0`.
    ///
    /// Walking the upper chain right to left traverses the boundary counter-clockwise; each
    /// edge with outward normal `n` and offset `n·p` becomes the dual vertex `n / (n·p)`.
    pub fn polar_upper_chain(&self, s: f64) -> Result<Vec<Point2>> {
        if !(s < 0.0 && s + self.h > 0.0) {
            return Err(Error::NoInteriorBracket);
        }
        let upper = self.upper_chain(s);
        let mut dual = Vec::with_capacity(upper.len() + 1);
        dual.push(Point2::new(1.0 / (s + self.h), 0.0));
        for w in upper.windows(2).rev() {
            let (p, q) = (w[1], w[0]);
            let d = q - p;
            let n = Point2::new(d.y, -d.x);
            dual.push(n * (1.0 / n.dot(p)));
        }
        dual.push(Point2::new(1.0 / s, 0.0));
        dual.reverse();
        Ok(dual)
    }

    /// Volume of the polar of the body translated to `[s, s + h]`.
    pub fn polar_volume(&self, s: f64) -> Result<f64> {
        let c = self.polar_upper_chain(s)?;
        Ok(c.windows(2).map(|w| frustum(w[0].x, w[1].x, w[0].y, w[1].y)).sum())
    }

    pub fn shifted_product(&self, s: f64) -> Result<f64> {
        Ok(self.volume() * self.polar_volume(s)?)
    }
}

/// Minimizes the Mahler product over axis translations keeping the origin interior.
pub fn santalo_axis_search(profile: &AxisProfile) -> Result<SantaloSearchResult> {
    let h = profile.length();
    let eps = 1e-6 * h;
    let (lo, hi) = (-h + eps, -eps);
    if !(lo < hi) {
        return Err(Error::NoInteriorBracket);
    }
    let score = |s: f64| profile.shifted_product(s).unwrap_or(f64::INFINITY);
    let (best_shift, best_product) = scan_then_golden(score, lo, hi, SANTALO_PRESCAN, SANTALO_WIDTH);
    if !best_product.is_finite() {
        return Err(Error::NoInteriorBracket);
    }
    Ok(SantaloSearchResult {
        best_shift,
        best_product,
        apex_ratio: (best_shift + h) / h,
        bracket_products: (score(lo), score(hi)),
    })
}
