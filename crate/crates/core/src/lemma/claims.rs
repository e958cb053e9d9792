//! Grid checks of the endpoint sign claims that drive the vertex-elimination argument.

use rayon::prelude::*;
use serde::Serialize;

use super::chain_step::{
    chain_curvature_factor, chain_quarter_product_dt, chain_slope_at_slide_end, corner_curvature_numerator,
};
use super::vertex_drop::{curvature_factor_slope, quarter_product, quarter_product_dt, quarter_product_dt2};
use super::{
    base_polygon, corner_polygon, region_membership, slide_run, slope_range, top_run, ChainVolumes, LemmaConfig,
    RegionTag,
};
use crate::error::{Error, Result};

/// Smallest accepted grid resolution.
pub const MIN_GRID: usize = 50;
/// Node count per side of the region-cover check.
pub const COVER_GRID: usize = 400;
/// `t` samples per point in the concavity check.
pub const CONCAVITY_SAMPLES: usize = 20;
/// Edge slopes sampled per point in the chain-step checks.
pub const SLOPE_SAMPLES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SignClaim {
    pub claim: &'static str,
    pub statement: &'static str,
    pub grid: usize,
    pub samples: usize,
    pub violations: usize,
    /// Largest amount by which the claimed inequality fails; 0 when it always holds.
    pub max_violation: f64,
    /// Largest value of the quantity claimed to be `<= 0`; its distance below zero is the margin.
    pub max_value: f64,
    /// Parameters `[x0, y0]` or `[x0, y0, k]` where the claimed quantity came closest to failing.
    pub argmax: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SignClaimReport {
    pub grid: usize,
    pub tolerance: f64,
    pub total_violations: usize,
    pub claims: Vec<SignClaim>,
}

/// Running maximum of a quantity claimed to be `<= 0`.
#[derive(Clone, Debug)]
struct Tally {
    samples: usize,
    violations: usize,
    worst: f64,
    at: Option<Vec<f64>>,
}

impl Tally {
    fn new() -> Self {
        Self { samples: 0, violations: 0, worst: f64::NEG_INFINITY, at: None }
    }

    fn push(&mut self, value: f64, tol: f64, at: impl FnOnce() -> Vec<f64>) {
        self.samples += 1;
        // NaN counts as a failure.
        if !(value <= tol) {
            self.violations += 1;
        }
        if !(value <= self.worst) {
            self.worst = if value.is_nan() { f64::INFINITY } else { value };
            self.at = Some(at());
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.violations += other.violations;
        if other.worst > self.worst {
            self.worst = other.worst;
            self.at = other.at;
        }
        self
    }

    fn finish(self, claim: &'static str, statement: &'static str, grid: usize) -> SignClaim {
        SignClaim {
            claim,
            statement,
            grid,
            samples: self.samples,
            violations: self.violations,
            max_violation: self.worst.max(0.0),
            max_value: self.worst,
            argmax: self.at,
        }
    }
}

struct ClaimSpec {
    claim: &'static str,
    statement: &'static str,
    eval: fn(f64, f64, f64, &mut Tally) -> Result<()>,
    wants: fn(RegionTag) -> bool,
}

const CLAIMS: &[ClaimSpec] = &[
    ClaimSpec { claim: "endpoint-slope", statement: "F'(t_max) <= 0 on D1", eval: endpoint_slope, wants: |r| r.in_d1 },
    ClaimSpec {
        claim: "endpoint-curvature",
        statement: "F''(t_max) <= 0 on D2",
        eval: endpoint_curvature,
        wants: |r| r.in_d2,
    },
    ClaimSpec {
        claim: "concavity",
        statement: "F is concave on [0, t_max] on D2",
        eval: concavity,
        wants: |r| r.in_d2,
    },
    ClaimSpec {
        claim: "curvature-factor-increasing",
        statement: "I(t) has positive slope on the triangle",
        eval: curvature_increasing,
        wants: |_| true,
    },
    ClaimSpec {
        claim: "chain-endpoint-slope",
        statement: "F'(t_max) <= 0 on D1 for the corner bodies over all admissible k",
        eval: chain_endpoint_slope,
        wants: |r| r.in_d1,
    },
    ClaimSpec {
        claim: "chain-slide-end",
        statement: "F'(t0) <= 0 or F''(t0) <= 0 on D1 for the corner bodies",
        eval: chain_slide_end,
        wants: |r| r.in_d1,
    },
    ClaimSpec {
        claim: "chain-slide-end-curvature",
        statement: "F''(t0) <= 0 on D2 for V between the base and corner volumes",
        eval: chain_slide_end_curvature,
        wants: |r| r.in_d2,
    },
    ClaimSpec {
        claim: "corner-numerator",
        statement: "L1(k) <= 0 on D2 over all admissible k",
        eval: corner_numerator,
        wants: |r| r.in_d2,
    },
];

/// Evaluates every claim on a cell-centred `grid × grid` sampling of the open triangle, plus
/// the region cover on [`COVER_GRID`] nodes of the closed triangle.
pub fn verify_sign_claims(grid: usize, tolerance: f64) -> Result<SignClaimReport> {
    if grid < MIN_GRID {
        return Err(Error::Field { field: "grid".into(), msg: format!("must be at least {MIN_GRID}, got {grid}") });
    }
    let mut claims = Vec::with_capacity(CLAIMS.len() + 1);
    for spec in CLAIMS {
        let tally = (0..grid)
            .into_par_iter()
            .map(|j| -> Result<Tally> {
                let mut t = Tally::new();
                let y0 = (j as f64 + 0.5) / grid as f64;
                for i in 0..grid {
                    let x0 = -1.0 + y0 * (i as f64 + 0.5) / grid as f64;
                    if (spec.wants)(region_membership(x0, y0)?) {
                        (spec.eval)(x0, y0, tolerance, &mut t)?;
                    }
                }
                Ok(t)
            })
            .try_reduce(Tally::new, |a, b| Ok(a.merge(b)))?;
        claims.push(tally.finish(spec.claim, spec.statement, grid));
    }
    claims.push(region_cover(COVER_GRID)?);
    let total_violations = claims.iter().map(|c| c.violations).sum();
    Ok(SignClaimReport { grid, tolerance, total_violations, claims })
}

fn region_cover(n: usize) -> Result<SignClaim> {
    let tally = (0..=n)
        .into_par_iter()
        .map(|j| -> Result<Tally> {
            let mut t = Tally::new();
            let y = j as f64 / n as f64;
            for i in 0..=n {
                // The last node is pinned to the edge x = y - 1 exactly.
                let x = if i == n { y - 1.0 } else { -1.0 + y * i as f64 / n as f64 };
                let r = region_membership(x, y)?;
                t.push(if r.in_d1 || r.in_d2 { -1.0 } else { 1.0 }, 0.0, || vec![x, y]);
            }
            Ok(t)
        })
        .try_reduce(Tally::new, |a, b| Ok(a.merge(b)))?;
    Ok(tally.finish("region-cover", "D1 and D2 cover the closed triangle", n))
}

fn endpoint_slope(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    let c = LemmaConfig::new(x0, y0, top_run(x0, y0))?;
    t.push(quarter_product_dt(&c), tol, || vec![x0, y0]);
    Ok(())
}

fn endpoint_curvature(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    let c = LemmaConfig::new(x0, y0, top_run(x0, y0))?;
    t.push(quarter_product_dt2(&c), tol, || vec![x0, y0]);
    Ok(())
}

fn concavity(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    let end = top_run(x0, y0);
    let n = CONCAVITY_SAMPLES;
    let f: Vec<f64> = (0..n)
        .map(|i| LemmaConfig::new(x0, y0, end * i as f64 / (n - 1) as f64).map(|c| quarter_product(&c)))
        .collect::<Result<_>>()?;
    let worst = f.windows(3).map(|w| 0.5 * (w[0] + w[2]) - w[1]).fold(f64::NEG_INFINITY, f64::max);
    t.push(worst, tol, || vec![x0, y0]);
    Ok(())
}

fn curvature_increasing(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    t.push(-curvature_factor_slope(x0, y0), tol, || vec![x0, y0]);
    Ok(())
}

fn slopes(x0: f64, y0: f64) -> impl Iterator<Item = f64> {
    let (lo, hi) = slope_range(x0, y0);
    (0..SLOPE_SAMPLES).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / SLOPE_SAMPLES as f64)
}

fn corner_volumes(x0: f64, y0: f64, k: f64) -> Result<ChainVolumes> {
    ChainVolumes::of(&corner_polygon(x0, y0, k)?)
}

fn chain_endpoint_slope(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    // The formula is evaluated past the end of the slide, as an upper bound for the slope there.
    let c = LemmaConfig::new(x0, y0, top_run(x0, y0))?;
    for k in slopes(x0, y0) {
        let v = corner_volumes(x0, y0, k)?;
        t.push(chain_quarter_product_dt(&c, v), tol, || vec![x0, y0, k]);
    }
    Ok(())
}

fn chain_slide_end(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    for k in slopes(x0, y0) {
        let v = corner_volumes(x0, y0, k)?;
        let c = LemmaConfig::with_slope(x0, y0, slide_run(x0, y0, k), k)?;
        let slope = chain_slope_at_slide_end(&c, v)?;
        let curvature = chain_curvature_factor(&c, v);
        t.push(slope.min(curvature), tol, || vec![x0, y0, k]);
    }
    Ok(())
}

fn chain_slide_end_curvature(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    let base = ChainVolumes::of(&base_polygon(x0, y0)?)?;
    for k in slopes(x0, y0) {
        let corner = corner_volumes(x0, y0, k)?;
        let c = LemmaConfig::with_slope(x0, y0, slide_run(x0, y0, k), k)?;
        for w in [0.0, 0.5, 1.0] {
            let v = ChainVolumes { primal: base.primal + w * (corner.primal - base.primal), polar: base.polar };
            t.push(chain_curvature_factor(&c, v), tol, || vec![x0, y0, k]);
        }
    }
    Ok(())
}

fn corner_numerator(x0: f64, y0: f64, tol: f64, t: &mut Tally) -> Result<()> {
    for k in slopes(x0, y0) {
        t.push(corner_curvature_numerator(x0, y0, k), tol, || vec![x0, y0, k]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_grid() {
        assert!(verify_sign_claims(10, 1e-9).is_err());
    }

    #[test]
    fn tally_tracks_worst() {
        let mut t = Tally::new();
        t.push(-1.0, 1e-9, || vec![0.0]);
        t.push(0.5, 1e-9, || vec![1.0]);
        t.push(f64::NAN, 1e-9, || vec![2.0]);
        let c = t.finish("x", "x", 1);
        assert_eq!(c.violations, 2);
        assert_eq!(c.argmax, Some(vec![2.0]));
    }
}
