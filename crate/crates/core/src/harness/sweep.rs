use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sample::{chain_digest, sample_polygon, sample_rng};
use crate::error::{Error, Result};
use crate::geom2d::{GeneratingFunction, Point2, UnconditionalPolygon};
use crate::lemma::vertex_drop::quarter_product;
use crate::lemma::{top_run, LemmaConfig};
use crate::mahler::{
    cone_bound, mahler_product_psh, revolution_bound, santalo_axis_search, AxisProfile, ParallelSectionsBody, PSH_BOUND,
};
use crate::reduction::{audit_certificate, reduce_to_terminal};

/// Version tag written in the CSV comment line; bump when columns change.
pub const CSV_VERSION: u32 = 1;

/// Slack below which a sample counts as a violation of the mode's bound.
const VIOLATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Random normalized polygons, reduced to a terminal body.
    Revolution,
    /// Random generators with random polygonal cross-sections.
    Psh,
    /// Cones of random height and radius, optimized over axis translations.
    SantaloCone,
    /// Random parameter points of the single-vertex closed forms.
    LemmaGrid,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Revolution, Mode::Psh, Mode::SantaloCone, Mode::LemmaGrid];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Revolution => "revolution",
            Mode::Psh => "psh",
            Mode::SantaloCone => "santalo-cone",
            Mode::LemmaGrid => "lemma-grid",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn bound(self) -> f64 {
        match self {
            Mode::Revolution | Mode::LemmaGrid => revolution_bound(),
            Mode::Psh => PSH_BOUND,
            Mode::SantaloCone => cone_bound(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub samples: usize,
    pub max_vertices: usize,
    pub seed: u64,
    pub mode: Mode,
    pub out_path: Option<PathBuf>,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl SweepConfig {
    pub fn new(mode: Mode, seed: u64, samples: usize) -> Self {
        Self { samples, max_vertices: 12, seed, mode, out_path: None, jobs: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Field { field: "samples".into(), msg: "must be positive".into() });
        }
        if !(3..=32).contains(&self.max_vertices) {
            return Err(Error::Field {
                field: "maxVertices".into(),
                msg: format!("must lie in [3, 32], got {}", self.max_vertices),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub id: usize,
    pub chain_digest: String,
    pub product: f64,
    pub slack: f64,
    pub terminal: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleFailure {
    pub id: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
    pub bound: f64,
    pub min_product: f64,
    pub argmin_id: usize,
    pub argmin_chain: Vec<Point2>,
    pub max_product: f64,
    pub violations: usize,
    pub failures: Vec<SampleFailure>,
    /// Largest `|apex ratio - 3/4|`, cone mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_apex_deviation: Option<f64>,
}

struct Outcome {
    row: SweepRow,
    chain: Vec<Point2>,
    violation: bool,
    failure: Option<String>,
    apex_ratio: Option<f64>,
}

impl Outcome {
    fn new(id: usize, mode: Mode, product: f64, chains: &[&[Point2]], shown: Vec<Point2>) -> Self {
        let slack = product - mode.bound();
        Self {
            row: SweepRow { id, chain_digest: chain_digest(chains.iter().copied()), product, slack, terminal: None },
            chain: shown,
            violation: !(slack >= -VIOLATION_TOL),
            failure: None,
            apex_ratio: None,
        }
    }

    fn failed(id: usize, e: Error) -> Self {
        Self {
            row: SweepRow { id, chain_digest: String::new(), product: f64::NAN, slack: f64::NAN, terminal: None },
            chain: Vec::new(),
            violation: true,
            failure: Some(e.to_string()),
            apex_ratio: None,
        }
    }
}

fn positive_scale<R: Rng>(rng: &mut R) -> f64 {
    // Log-uniform on [1/5, 5].
    (5f64.ln() * (2.0 * rng.random::<f64>() - 1.0)).exp()
}

fn vertex_count<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.random_range(3..=max as u32) as usize
}

fn evaluate(cfg: &SweepConfig, id: usize) -> Result<Outcome> {
    let mut rng = sample_rng(cfg.seed, id as u64);
    match cfg.mode {
        Mode::Revolution => {
            let n = vertex_count(&mut rng, cfg.max_vertices);
            let p = sample_polygon(&mut rng, n);
            let cert = reduce_to_terminal(&p)?;
            let audit = audit_certificate(&cert);
            let mut out = Outcome::new(id, cfg.mode, cert.initial_product, &[p.chain()], p.chain().to_vec());
            out.row.terminal = Some(cert.terminal.name());
            if !(cert.min_product >= revolution_bound() - VIOLATION_TOL) || !audit.passed() {
                out.violation = true;
                out.failure = audit.failures.first().cloned();
            }
            Ok(out)
        }
        Mode::Psh => {
            let n = vertex_count(&mut rng, cfg.max_vertices);
            let domain = sample_polygon(&mut rng, n).scaled(positive_scale(&mut rng), positive_scale(&mut rng))?;
            let m = vertex_count(&mut rng, cfg.max_vertices);
            let section = sample_polygon(&mut rng, m).scaled(positive_scale(&mut rng), positive_scale(&mut rng))?;
            let body = ParallelSectionsBody::new(GeneratingFunction::from_domain(&domain)?, section.clone());
            let r = mahler_product_psh(&body)?;
            Ok(Outcome::new(id, cfg.mode, r.product, &[domain.chain(), section.chain()], section.chain().to_vec()))
        }
        Mode::SantaloCone => {
            let (h, r) = (positive_scale(&mut rng), positive_scale(&mut rng));
            let cone = AxisProfile::new([Point2::new(0.0, r), Point2::new(h, 0.0)])?;
            let s = santalo_axis_search(&cone)?;
            let mut out =
                Outcome::new(id, cfg.mode, s.best_product, &[cone.breakpoints()], cone.breakpoints().to_vec());
            out.apex_ratio = Some(s.apex_ratio);
            Ok(out)
        }
        Mode::LemmaGrid => {
            let (x0, y0) = loop {
                let y0 = rng.random::<f64>();
                let x0 = -1.0 + y0 * rng.random::<f64>();
                if y0 > 1e-6 && y0 < 1.0 - 1e-6 && x0 > -1.0 && x0 < y0 - 1.0 {
                    break (x0, y0);
                }
            };
            let end = top_run(x0, y0);
            let at = |t: f64| LemmaConfig::new(x0, y0, t).map(|c| 4.0 * quarter_product(&c));
            let cfg_t = LemmaConfig::new(x0, y0, end * rng.random::<f64>())?;
            let product = 4.0 * quarter_product(&cfg_t);
            let floor = at(0.0)?.min(at(end)?);
            let poly: UnconditionalPolygon = cfg_t.polygon()?;
            let mut out = Outcome::new(id, cfg.mode, product, &[poly.chain()], poly.chain().to_vec());
            if product < floor - VIOLATION_TOL {
                out.violation = true;
                out.failure = Some(format!("product {product} below the endpoint minimum {floor}"));
            }
            Ok(out)
        }
    }
}

fn outcomes(cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    cfg.validate()?;
    let run = || -> Vec<Outcome> {
        (0..cfg.samples)
            .into_par_iter()
            .map(|id| evaluate(cfg, id).unwrap_or_else(|e| Outcome::failed(id, e)))
            .collect()
    };
    if cfg.jobs == 0 {
        return Ok(run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    Ok(pool.install(run))
}

/// Rows of a sweep in sample order.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    Ok(outcomes(cfg)?.into_iter().map(|o| o.row).collect())
}

/// Writes the versioned comment line, the header and one line per row.
pub fn write_csv<W: Write>(mut w: W, cfg: &SweepConfig, rows: &[SweepRow]) -> Result<()> {
    writeln!(
        w,
        "# revmahler-sweep v{CSV_VERSION} mode={} seed={} samples={} max-vertices={}",
        cfg.mode.name(),
        cfg.seed,
        cfg.samples,
        cfg.max_vertices
    )?;
    let mut csv = csv::Writer::from_writer(w);
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

/// Runs the sweep, writes the CSV to `cfg.out_path` when set, and summarizes.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    let outs = outcomes(cfg)?;
    if let Some(path) = &cfg.out_path {
        let rows: Vec<SweepRow> = outs.iter().map(|o| o.row.clone()).collect();
        write_csv(BufWriter::new(File::create(path)?), cfg, &rows)?;
    }
    let best = outs.iter().filter(|o| o.row.product.is_finite()).min_by(|a, b| a.row.product.total_cmp(&b.row.product));
    let max_product = outs.iter().map(|o| o.row.product).filter(|p| p.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    let apex: Vec<f64> = outs.iter().filter_map(|o| o.apex_ratio).collect();
    Ok(SweepSummary {
        mode: cfg.mode,
        seed: cfg.seed,
        samples: cfg.samples,
        bound: cfg.mode.bound(),
        min_product: best.map_or(f64::NAN, |o| o.row.product),
        argmin_id: best.map_or(0, |o| o.row.id),
        argmin_chain: best.map_or_else(Vec::new, |o| o.chain.clone()),
        max_product,
        violations: outs.iter().filter(|o| o.violation).count(),
        failures: outs
            .iter()
            .filter_map(|o| o.failure.as_ref().map(|m| SampleFailure { id: o.row.id, message: m.clone() }))
            .collect(),
        max_apex_deviation: (!apex.is_empty()).then(|| apex.iter().map(|r| (r - 0.75).abs()).fold(0.0, f64::max)),
    })
}
