use std::fmt;
use std::sync::Arc;

use super::{Point2, UnconditionalPolygon, MERGE_TOL};
use crate::error::{Error, Result};
use crate::optim::golden_section;

/// Bracket width for pointwise conjugate minimization on analytic profiles.
pub const CONJUGATE_BRACKET: f64 = 1e-12;

/// Named closed-form profiles readable from JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedProfile {
    /// `√(a² − x²)`: revolves to the ball of radius `a`.
    UnitDisk,
    /// `1 − (x/a)²`
    Parabola,
    /// `cos(πx / 2a)`
    Cosine,
}

impl NamedProfile {
    pub fn name(self) -> &'static str {
        match self {
            NamedProfile::UnitDisk => "unit-disk",
            NamedProfile::Parabola => "parabola",
            NamedProfile::Cosine => "cosine",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "unit-disk" => Some(NamedProfile::UnitDisk),
            "parabola" => Some(NamedProfile::Parabola),
            "cosine" => Some(NamedProfile::Cosine),
            _ => None,
        }
    }

    fn evaluator(self, a: f64) -> Evaluator {
        match self {
            NamedProfile::UnitDisk => Arc::new(move |x: f64| (a * a - x * x).max(0.0).sqrt()),
            NamedProfile::Parabola => Arc::new(move |x: f64| (1.0 - (x / a).powi(2)).max(0.0)),
            NamedProfile::Cosine => Arc::new(move |x: f64| (std::f64::consts::FRAC_PI_2 * x / a).cos().max(0.0)),
        }
    }
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A closed-form profile. Evaluated at `|x|`, so evenness holds by construction.
#[derive(Clone)]
pub struct AnalyticProfile {
    named: Option<NamedProfile>,
    eval: Evaluator,
}

impl AnalyticProfile {
    pub fn named(&self) -> Option<NamedProfile> {
        self.named
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x.abs())
    }
}

impl fmt::Debug for AnalyticProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.named {
            Some(n) => write!(f, "AnalyticProfile({})", n.name()),
            None => f.write_str("AnalyticProfile(<custom>)"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Profile {
    /// Breakpoints `(x, f(x))` on `[0, a]` with `x` strictly increasing from 0 to `a`; the
    /// profile is linear between them and extended evenly to `[-a, 0]`.
    PiecewiseLinear(Vec<Point2>),
    Analytic(AnalyticProfile),
}

/// A concave, even, nonnegative profile `f` on `[-a, a]` with `f(0) > 0`.
///
/// The generating domain `{|x| <= a, |y| <= f(x)}` revolves about the X-axis to an
/// origin-symmetric body of revolution.
#[derive(Clone, Debug)]
pub struct GeneratingFunction {
    half_width: f64,
    profile: Profile,
}

impl GeneratingFunction {
    /// Piecewise-linear profile from breakpoints on `[0, a]`.
    pub fn piecewise_linear(breakpoints: impl IntoIterator<Item = Point2>) -> Result<Self> {
        let mut pts: Vec<Point2> = breakpoints.into_iter().collect();
        for (i, p) in pts.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidGenerator(format!("breakpoints[{i}] is not finite")));
            }
            if p.y < 0.0 {
                return Err(Error::InvalidGenerator(format!("breakpoints[{i}]: f = {} is negative", p.y)));
            }
        }
        if pts.len() < 2 {
            return Err(Error::InvalidGenerator("need at least the breakpoints x = 0 and x = a".into()));
        }
        if pts[0].x != 0.0 {
            return Err(Error::InvalidGenerator(format!("breakpoints[0]: x must be 0, got {}", pts[0].x)));
        }
        for i in 1..pts.len() {
            if pts[i].x <= pts[i - 1].x {
                return Err(Error::InvalidGenerator(format!("breakpoints[{i}]: x must be strictly increasing")));
            }
        }
        if pts[0].y <= 0.0 {
            return Err(Error::ZeroProfile(0.0));
        }
        let n = pts.len();
        if let Some(p) = pts[1..n - 1].iter().find(|p| p.y <= 0.0) {
            return Err(Error::ZeroProfile(p.x));
        }
        // Slopes on [0, a] must be non-increasing and start at <= 0 (even extension).
        let mut prev_slope = 0.0;
        for i in 1..n {
            let slope = (pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x);
            // Rise above the previous piece's extension, so short pieces are not over-penalized.
            let rise = (slope - prev_slope) * (pts[i].x - pts[i - 1].x);
            if rise > MERGE_TOL * (1.0 + pts[i].y.max(pts[i - 1].y)) {
                return Err(Error::InvalidGenerator(format!(
                    "breakpoints[{i}]: profile is not concave (slope {slope} after {prev_slope})"
                )));
            }
            prev_slope = slope;
        }
        // Drop breakpoints that are collinear with their neighbours.
        let mut kept: Vec<Point2> = Vec::with_capacity(n);
        for p in pts.drain(..) {
            while kept.len() >= 2 {
                let (a, b) = (kept[kept.len() - 2], kept[kept.len() - 1]);
                let dev = (p - a).cross(b - a) / (p - a).norm();
                if dev.abs() <= MERGE_TOL {
                    kept.pop();
                } else {
                    break;
                }
            }
            kept.push(p);
        }
        let half_width = kept[kept.len() - 1].x;
        Ok(Self { half_width, profile: Profile::PiecewiseLinear(kept) })
    }

    /// A named closed-form profile on `[-a, a]`.
    pub fn named(a: f64, which: NamedProfile) -> Result<Self> {
        let g = Self::from_evaluator(a, Some(which), which.evaluator(a))?;
        Ok(g)
    }

    /// An arbitrary analytic profile. Concavity and nonnegativity are spot-checked on a grid.
    pub fn analytic(a: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        Self::from_evaluator(a, None, Arc::new(f))
    }

    fn from_evaluator(a: f64, named: Option<NamedProfile>, eval: Evaluator) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidGenerator(format!("half-width a = {a} must be positive")));
        }
        let g = Self { half_width: a, profile: Profile::Analytic(AnalyticProfile { named, eval }) };
        g.check_sampled_shape()?;
        Ok(g)
    }

    fn check_sampled_shape(&self) -> Result<()> {
        const N: usize = 64;
        let a = self.half_width;
        let xs: Vec<f64> = (0..=N).map(|i| a * i as f64 / N as f64).collect();
        let fs: Vec<f64> = xs.iter().map(|&x| self.eval(x)).collect();
        if fs.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::InvalidGenerator("profile must be finite and nonnegative".into()));
        }
        if fs[0] <= 0.0 {
            return Err(Error::ZeroProfile(0.0));
        }
        if let Some(i) = fs[..N].iter().position(|&f| f <= 0.0) {
            return Err(Error::ZeroProfile(xs[i]));
        }
        // Chord test on the even extension, through 0 as well.
        let full: Vec<(f64, f64)> =
            xs.iter().rev().map(|&x| (-x, self.eval(x))).chain(xs.iter().skip(1).map(|&x| (x, self.eval(x)))).collect();
        for w in full.windows(3) {
            let (x0, f0) = w[0];
            let (x1, f1) = w[1];
            let (x2, f2) = w[2];
            let chord = f0 + (f2 - f0) * (x1 - x0) / (x2 - x0);
            if f1 < chord - 1e-9 * (1.0 + f1.abs()) {
                return Err(Error::InvalidGenerator(format!("profile is not concave near x = {x1}")));
            }
        }
        Ok(())
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn is_piecewise_linear(&self) -> bool {
        matches!(self.profile, Profile::PiecewiseLinear(_))
    }

    pub fn breakpoints(&self) -> Option<&[Point2]> {
        match &self.profile {
            Profile::PiecewiseLinear(b) => Some(b),
            Profile::Analytic(_) => None,
        }
    }

    /// `f(x)`, zero outside `[-a, a]`.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        if x > self.half_width {
            return 0.0;
        }
        match &self.profile {
            Profile::Analytic(p) => p.eval(x),
            Profile::PiecewiseLinear(b) => {
                let i = b.partition_point(|p| p.x < x).clamp(1, b.len() - 1);
                let (p, q) = (b[i - 1], b[i]);
                p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x)
            }
        }
    }

    /// Generating domain `{|x| <= a, |y| <= f(x)}` as a chain. Piecewise-linear only.
    pub fn domain(&self) -> Result<UnconditionalPolygon> {
        let b = self.breakpoints().ok_or(Error::AnalyticUnsupported)?;
        UnconditionalPolygon::new(
            std::iter::once(Point2::new(-self.half_width, 0.0)).chain(b.iter().rev().map(|p| Point2::new(-p.x, p.y))),
        )
    }

    /// Generating function of a domain. Inverse of [`GeneratingFunction::domain`].
    pub fn from_domain(domain: &UnconditionalPolygon) -> Result<Self> {
        let mut pts: Vec<Point2> = Vec::with_capacity(domain.len());
        for p in domain.chain().iter().rev() {
            let bp = Point2::new(-p.x, p.y);
            if pts.last().is_some_and(|q: &Point2| (q.x - bp.x).abs() <= MERGE_TOL) {
                continue;
            }
            pts.push(bp);
        }
        Self::piecewise_linear(pts)
    }

    /// Image of the generating domain under `diag(sx, sy)`: `F(x) = sy·f(x / sx)`.
    pub fn scaled(&self, sx: f64, sy: f64) -> Result<Self> {
        if !(sx > 0.0 && sy > 0.0) {
            return Err(Error::InvalidGenerator(format!("scale factors must be positive, got ({sx}, {sy})")));
        }
        match &self.profile {
            Profile::PiecewiseLinear(b) => Self::piecewise_linear(b.iter().map(|p| Point2::new(p.x * sx, p.y * sy))),
            Profile::Analytic(p) => {
                let inner = p.eval.clone();
                Ok(Self {
                    half_width: self.half_width * sx,
                    profile: Profile::Analytic(AnalyticProfile {
                        named: None,
                        eval: Arc::new(move |x| sy * inner(x / sx)),
                    }),
                })
            }
        }
    }

    /// The conjugate `f*(x') = inf_x (1 − x'x) / f(x)` on `[-1/a, 1/a]`: the generating function
    /// of the polar body.
    ///
    /// Piecewise-linear profiles are conjugated exactly through the polar of the generating
    /// domain. Analytic profiles get a pointwise golden-section evaluator; the infimum runs
    /// over the open set where `f > 0`.
    pub fn conjugate(&self) -> Result<Self> {
        match &self.profile {
            Profile::PiecewiseLinear(_) => Self::from_domain(&self.domain()?.polar()?),
            Profile::Analytic(_) => {
                let f = self.clone();
                let a = self.half_width;
                Ok(Self {
                    half_width: 1.0 / a,
                    profile: Profile::Analytic(AnalyticProfile {
                        named: None,
                        eval: Arc::new(move |xp| conjugate_at(&f, xp)),
                    }),
                })
            }
        }
    }
}

/// Pointwise `inf_x (1 − x'x) / f(x)` by golden-section search; the objective is quasiconvex
/// for concave positive `f`.
pub fn conjugate_at(f: &GeneratingFunction, xp: f64) -> f64 {
    let a = f.half_width();
    let obj = |x: f64| {
        let fx = f.eval(x);
        let num = 1.0 - xp * x;
        if fx > 0.0 {
            num / fx
        } else if num <= 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    };
    let (_, best) = golden_section(obj, -a, a, CONJUGATE_BRACKET);
    best.min(obj(-a)).min(obj(a)).max(0.0)
}
