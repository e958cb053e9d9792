//! Bodies of revolution about the X-axis: volumes, polars, affine normalization and the
//! slice/projection duality check.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{GeneratingFunction, Point2, Profile, UnconditionalPolygon};
use crate::quad::{adaptive_simpson, ABS_TOL, MAX_DEPTH};

/// Angular samples per slice in [`BodyOfRevolution::slice_projection_duality`].
pub const DUALITY_ANGLES: usize = 256;

/// Volume swept by the segment from `(x0, r0)` to `(x1, r1)` about the X-axis.
pub fn frustum_volume(x0: f64, x1: f64, r0: f64, r1: f64) -> Result<f64> {
    if !(x1 > x0) {
        return Err(Error::InvalidInterval { x0, x1 });
    }
    Ok(frustum(x0, x1, r0, r1))
}

#[inline]
pub(crate) fn frustum(x0: f64, x1: f64, r0: f64, r1: f64) -> f64 {
    PI / 3.0 * (x1 - x0) * (r0 * r0 + r0 * r1 + r1 * r1)
}

/// Volume of the body generated by an unconditional polygon: twice the frustum sum over its
/// chain.
pub fn domain_volume(domain: &UnconditionalPolygon) -> f64 {
    2.0 * domain.chain().windows(2).map(|w| frustum(w[0].x, w[1].x, w[0].y, w[1].y)).sum::<f64>()
}

/// Diagonal map `diag(b, c, c)` taking a body of revolution into `[-1, 1]³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AffineNormalization {
    /// Axis scale `1 / a`.
    pub b: f64,
    /// Radial scale `1 / f(0)`.
    pub c: f64,
}

/// Origin-symmetric body of revolution about the X-axis.
#[derive(Clone, Debug)]
pub struct BodyOfRevolution {
    generator: GeneratingFunction,
}

impl BodyOfRevolution {
    pub fn new(generator: GeneratingFunction) -> Self {
        Self { generator }
    }

    pub fn from_domain(domain: &UnconditionalPolygon) -> Result<Self> {
        Ok(Self::new(GeneratingFunction::from_domain(domain)?))
    }

    pub fn cylinder() -> Self {
        Self::from_domain(&UnconditionalPolygon::square()).expect("square is a valid domain")
    }

    pub fn bicone() -> Self {
        Self::from_domain(&UnconditionalPolygon::diamond()).expect("diamond is a valid domain")
    }

    pub fn generator(&self) -> &GeneratingFunction {
        &self.generator
    }

    /// π ∫ f²: exact frustum sum for piecewise-linear profiles, adaptive Simpson otherwise.
    pub fn volume(&self) -> f64 {
        PI * profile_square_integral(&self.generator)
    }

    /// The polar body, generated by the polar of the generating domain.
    pub fn polar(&self) -> Result<Self> {
        if !self.generator.is_piecewise_linear() {
            return Err(Error::AnalyticUnsupported);
        }
        Ok(Self::new(self.generator.conjugate()?))
    }

    /// Scales the body so the generator has half-width 1 and `f(0) = 1`. The result lies in
    /// `[-1, 1]³` and its generating domain sits between the cross-polytope and the square.
    pub fn normalize(&self) -> Result<(Self, AffineNormalization)> {
        let a = self.generator.half_width();
        let f0 = self.generator.eval(0.0);
        let norm = AffineNormalization { b: 1.0 / a, c: 1.0 / f0 };
        let g = self.generator.scaled(norm.b, norm.c)?;
        Ok((Self::new(g), norm))
    }

    /// Image under `diag(sx, sr, sr)`.
    pub fn scaled(&self, sx: f64, sr: f64) -> Result<Self> {
        Ok(Self::new(self.generator.scaled(sx, sr)?))
    }

    /// Support function in 3D, from the generator alone: `max_x (w_x·x + |w_⊥|·f(x))` over the
    /// profile breakpoints. Piecewise-linear only.
    pub fn support(&self, w: [f64; 3]) -> Result<f64> {
        let b = self.generator.breakpoints().ok_or(Error::AnalyticUnsupported)?;
        let perp = w[1].hypot(w[2]);
        Ok(b.iter().flat_map(|p| [p.x, -p.x].map(|x| w[0] * x + perp * p.y)).fold(f64::NEG_INFINITY, f64::max))
    }

    /// Checks `R* ∩ u^⊥ = (R | u^⊥)*` for each unit `u`.
    ///
    /// The slice side is the radial function of the revolved polar domain; the projection side
    /// is the reciprocal of the body's own support function, computed from the generator.
    /// Both are sampled at [`DUALITY_ANGLES`] directions in `u^⊥`.
    pub fn slice_projection_duality(&self, directions: &[[f64; 3]]) -> Result<DualityReport> {
        let polar_domain = self.generator.domain()?.polar()?;
        let mut per_direction = Vec::with_capacity(directions.len());
        for &u in directions {
            let (e1, e2) = plane_basis(u)?;
            let mut worst = 0.0f64;
            for i in 0..DUALITY_ANGLES {
                let th = 2.0 * PI * i as f64 / DUALITY_ANGLES as f64;
                let (s, c) = th.sin_cos();
                let w = [c * e1[0] + s * e2[0], c * e1[1] + s * e2[1], c * e1[2] + s * e2[2]];
                let slice = polar_domain.radial(Point2::new(w[0], w[1].hypot(w[2])));
                let projection = 1.0 / self.support(w)?;
                worst = worst.max((slice - projection).abs());
            }
            per_direction.push(DirectionDeviation { u, max_deviation: worst });
        }
        let max_deviation = per_direction.iter().map(|d| d.max_deviation).fold(0.0, f64::max);
        Ok(DualityReport { max_deviation, per_direction })
    }
}

/// ∫_{-a}^{a} f².
pub(crate) fn profile_square_integral(g: &GeneratingFunction) -> f64 {
    match g.profile() {
        Profile::PiecewiseLinear(b) => {
            2.0 * b.windows(2).map(|w| frustum(w[0].x, w[1].x, w[0].y, w[1].y)).sum::<f64>() / PI
        }
        Profile::Analytic(_) => {
            let a = g.half_width();
            2.0 * adaptive_simpson(|x| g.eval(x).powi(2), 0.0, a, ABS_TOL / 2.0, MAX_DEPTH)
        }
    }
}

fn plane_basis(u: [f64; 3]) -> Result<([f64; 3], [f64; 3])> {
    let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::Field { field: "direction".into(), msg: "must be a nonzero vector".into() });
    }
    let u = [u[0] / n, u[1] / n, u[2] / n];
    let helper = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = normalize3(cross3(u, helper));
    let e2 = cross3(u, e1);
    Ok((e1, e2))
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize3(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectionDeviation {
    pub u: [f64; 3],
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub max_deviation: f64,
    pub per_direction: Vec<DirectionDeviation>,
}
