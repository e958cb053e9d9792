//! Vertex elimination: carries a normalized unconditional polygon to the square or the diamond
//! through steps that never increase the Mahler product of the generated body.
//!
//! Write the chain as `D, .., A3, A2, A1, B`. When `A1` sits on the open top edge the step
//! compares dropping `A1` with sliding it to `C`, where the line `A3 A2` meets `y = 1`, and
//! keeps the smaller product. When nothing sits on the top edge the polygon is replaced by its
//! polar, which has the same product and does have a top-edge vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{Point2, UnconditionalPolygon};
use crate::mahler::{domain_product, revolution_bound};

/// Tolerance for monotonicity, swap neutrality and the lower bound.
pub const PRODUCT_TOL: f64 = 1e-9;
/// Products closer than this count as tied; ties go to [`StepKind::DropVertex`].
pub const TIE_TOL: f64 = 1e-12;
/// Tolerance for recognising the square and diamond chains.
pub const TERMINAL_TOL: f64 = 1e-9;
/// Tolerance for a vertex lying on the top edge `y = 1`.
pub const TOP_EDGE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    DropVertex,
    SlideToC,
    PolarSwap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Terminal {
    Cylinder,
    Bicone,
}

impl Terminal {
    pub fn name(self) -> &'static str {
        match self {
            Terminal::Cylinder => "cylinder",
            Terminal::Bicone => "bicone",
        }
    }

    pub fn chain(self) -> UnconditionalPolygon {
        match self {
            Terminal::Cylinder => UnconditionalPolygon::square(),
            Terminal::Bicone => UnconditionalPolygon::diamond(),
        }
    }

    pub fn of(p: &UnconditionalPolygon) -> Option<Self> {
        [Terminal::Cylinder, Terminal::Bicone].into_iter().find(|t| p.approx_eq(&t.chain(), TERMINAL_TOL))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionStep {
    pub kind: StepKind,
    pub chain_before: UnconditionalPolygon,
    pub chain_after: UnconditionalPolygon,
    pub product_before: f64,
    pub product_after: f64,
    /// Product of the candidate that was not chosen; absent for polar swaps.
    pub rejected_product: Option<f64>,
    /// The slide target `C` fell outside the top edge and was clamped onto it.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionCertificate {
    pub initial: UnconditionalPolygon,
    pub initial_product: f64,
    pub steps: Vec<ReductionStep>,
    pub terminal: Terminal,
    pub min_product: f64,
}

impl ReductionCertificate {
    pub fn final_chain(&self) -> &UnconditionalPolygon {
        self.steps.last().map_or(&self.initial, |s| &s.chain_after)
    }
}

/// The two candidates of a top-edge step.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidates {
    pub dropped: UnconditionalPolygon,
    pub slid: UnconditionalPolygon,
}

/// Rescales a polygon so its axis points are `D = (-1, 0)` and `B = (0, 1)`.
pub fn normalize_polygon(p: &UnconditionalPolygon) -> Result<UnconditionalPolygon> {
    p.scaled(1.0 / p.x_extent(), 1.0 / p.y_extent())
}

fn is_normalized(p: &UnconditionalPolygon) -> bool {
    (p.x_extent() - 1.0).abs() <= TERMINAL_TOL && (p.y_extent() - 1.0).abs() <= TERMINAL_TOL
}

/// The vertex before `B`, when it lies on the open top edge.
fn top_vertex(chain: &[Point2]) -> Option<Point2> {
    let n = chain.len();
    let a1 = *chain.get(n.checked_sub(2)?)?;
    ((a1.y - 1.0).abs() <= TOP_EDGE_TOL && a1.x > -1.0 + TOP_EDGE_TOL && a1.x < -TOP_EDGE_TOL).then_some(a1)
}

/// Where the line through `A3` and `A2` meets `y = 1`, clamped to the top edge. With no `A3`
/// (`A2 = D`) the preceding edge is taken as the left side `x = -1`.
fn slide_target(chain: &[Point2]) -> (Point2, bool) {
    let n = chain.len();
    let a2 = chain[n - 3];
    let x = match n.checked_sub(4).map(|i| chain[i]) {
        Some(a3) if (a2.x - a3.x).abs() > f64::EPSILON * a2.x.abs().max(1.0) => {
            let k = (a2.y - a3.y) / (a2.x - a3.x);
            a2.x + (1.0 - a2.y) / k
        }
        Some(_) => a2.x,
        None => -1.0,
    };
    let clamped_x = x.clamp(-1.0, 0.0);
    (Point2::new(clamped_x, 1.0), (clamped_x - x).abs() > TIE_TOL)
}

/// Builds both candidates for a polygon whose chain has a vertex on the open top edge.
pub fn candidates(p: &UnconditionalPolygon) -> Result<(Candidates, bool)> {
    let c = p.chain();
    if top_vertex(c).is_none() {
        return Err(Error::NotReducible("no chain vertex on the open top edge y = 1, -1 < x < 0".into()));
    }
    let n = c.len();
    let dropped = UnconditionalPolygon::new(c[..n - 2].iter().copied().chain([c[n - 1]]))?;
    let (target, clamped) = slide_target(c);
    let slid = UnconditionalPolygon::new(c[..n - 3].iter().copied().chain([target, c[n - 1]]))?;
    Ok((Candidates { dropped, slid }, clamped))
}

/// One top-edge step: returns both candidates and the chosen step.
pub fn reduce_once(p: &UnconditionalPolygon) -> Result<(Candidates, ReductionStep)> {
    let (cands, clamped) = candidates(p)?;
    let before = domain_product(p)?;
    let drop = domain_product(&cands.dropped)?;
    let slide = domain_product(&cands.slid)?;
    let step = if drop <= slide + TIE_TOL {
        ReductionStep {
            kind: StepKind::DropVertex,
            chain_before: p.clone(),
            chain_after: cands.dropped.clone(),
            product_before: before,
            product_after: drop,
            rejected_product: Some(slide),
            clamped: false,
        }
    } else {
        ReductionStep {
            kind: StepKind::SlideToC,
            chain_before: p.clone(),
            chain_after: cands.slid.clone(),
            product_before: before,
            product_after: slide,
            rejected_product: Some(drop),
            clamped,
        }
    };
    Ok((cands, step))
}

/// Step budget for a polygon: twice the vertex count of the full reflected polygon, plus 4.
pub fn step_budget(p: &UnconditionalPolygon) -> usize {
    2 * p.full_vertices().len() + 4
}

pub fn reduce_to_terminal(p: &UnconditionalPolygon) -> Result<ReductionCertificate> {
    if !is_normalized(p) {
        return Err(Error::NotReducible(format!(
            "polygon must contain D = (-1, 0) and B = (0, 1) on its axes; extents are ({}, {})",
            p.x_extent(),
            p.y_extent()
        )));
    }
    let budget = step_budget(p);
    let initial_product = domain_product(p)?;
    let mut current = p.clone();
    let mut product = initial_product;
    let mut steps = Vec::new();
    loop {
        if let Some(terminal) = Terminal::of(&current) {
            let min_product = steps.iter().map(|s: &ReductionStep| s.product_after).fold(initial_product, f64::min);
            return Ok(ReductionCertificate { initial: p.clone(), initial_product, steps, terminal, min_product });
        }
        if steps.len() >= budget {
            return Err(Error::NonTerminating(budget));
        }
        let step = if top_vertex(current.chain()).is_some() {
            reduce_once(&current)?.1
        } else {
            let polar = current.polar()?;
            let after = domain_product(&polar)?;
            ReductionStep {
                kind: StepKind::PolarSwap,
                chain_before: current.clone(),
                chain_after: polar,
                product_before: product,
                product_after: after,
                rejected_product: None,
                clamped: false,
            }
        };
        current = step.chain_after.clone();
        product = step.product_after;
        steps.push(step);
    }
}

/// Result of re-checking a certificate from its chains alone.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CertificateAudit {
    pub failures: Vec<String>,
}

impl CertificateAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PRODUCT_TOL
}

/// Recomputes every product and re-checks each step's construction, monotonicity, the
/// terminal shape and the lower bound.
pub fn audit_certificate(cert: &ReductionCertificate) -> CertificateAudit {
    let mut failures = Vec::new();
    let mut fail = |msg: String| failures.push(msg);
    let recompute = |p: &UnconditionalPolygon| domain_product(p).unwrap_or(f64::NAN);

    if !close(recompute(&cert.initial), cert.initial_product) {
        fail("initial product does not match the initial chain".into());
    }
    let mut prev = &cert.initial;
    let mut prev_product = cert.initial_product;
    let mut min_product = cert.initial_product;
    for (i, s) in cert.steps.iter().enumerate() {
        if !s.chain_before.approx_eq(prev, TIE_TOL) || !close(s.product_before, prev_product) {
            fail(format!("step {i}: does not continue from the previous chain"));
        }
        if !close(recompute(&s.chain_before), s.product_before) {
            fail(format!("step {i}: productBefore does not match its chain"));
        }
        if !close(recompute(&s.chain_after), s.product_after) {
            fail(format!("step {i}: productAfter does not match its chain"));
        }
        if !(s.product_after <= s.product_before + PRODUCT_TOL) {
            fail(format!("step {i}: product increases from {} to {}", s.product_before, s.product_after));
        }
        if let Some(msg) = check_construction(s) {
            fail(format!("step {i}: {msg}"));
        }
        min_product = min_product.min(s.product_after);
        prev = &s.chain_after;
        prev_product = s.product_after;
    }
    if Terminal::of(prev) != Some(cert.terminal) {
        fail(format!("final chain is not the {} chain", cert.terminal.name()));
    }
    if !close(min_product, cert.min_product) {
        fail(format!("minProduct {} does not match the steps ({min_product})", cert.min_product));
    }
    if !(min_product >= revolution_bound() - PRODUCT_TOL) {
        fail(format!("product {min_product} is below the bound"));
    }
    CertificateAudit { failures }
}

fn check_construction(s: &ReductionStep) -> Option<String> {
    match s.kind {
        StepKind::PolarSwap => {
            let polar = s.chain_before.polar().ok()?;
            if !polar.approx_eq(&s.chain_after, 1e-9) {
                return Some("chainAfter is not the polar of chainBefore".into());
            }
            (!close(s.product_before, s.product_after)).then(|| "polar swap changed the product".into())
        }
        StepKind::DropVertex | StepKind::SlideToC => {
            let (cands, clamped) = match candidates(&s.chain_before) {
                Ok(c) => c,
                Err(e) => return Some(e.to_string()),
            };
            let (expect, other) = match s.kind {
                StepKind::DropVertex => (&cands.dropped, &cands.slid),
                _ => (&cands.slid, &cands.dropped),
            };
            if !expect.approx_eq(&s.chain_after, 1e-9) {
                return Some(format!("chainAfter is not the {:?} candidate", s.kind));
            }
            if s.kind == StepKind::SlideToC && s.clamped != clamped {
                return Some("clamp flag does not match the construction".into());
            }
            let other = domain_product(other).unwrap_or(f64::NAN);
            (s.product_after > other + TIE_TOL + PRODUCT_TOL).then(|| "the larger candidate was chosen".into())
        }
    }
}

pub fn verify_certificate(cert: &ReductionCertificate) -> bool {
    audit_certificate(cert).passed()
}
