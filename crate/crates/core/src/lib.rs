//! Polar duals and Mahler volumes of origin-symmetric bodies of revolution in R³.
//!
//! The crate covers planar unconditional polygons and generating functions ([`geom2d`]),
//! solids of revolution about the X-axis ([`revolve`]), Mahler products ([`mahler`]), the
//! closed-form polynomials behind the vertex-elimination argument ([`lemma`]), the reduction
//! loop that carries any normalized polygon to the square or diamond ([`reduction`]), and the
//! seeded sweep harness ([`harness`]).

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geom2d;
pub mod harness;
pub mod io;
pub mod lemma;
pub mod mahler;
pub mod optim;
pub mod quad;
pub mod reduction;
pub mod revolve;

pub use error::{Error, Result};
pub use geom2d::{GeneratingFunction, NamedProfile, Point2, UnconditionalPolygon};
pub use lemma::{CoefficientBundle, LemmaConfig, RegionTag};
pub use mahler::{
    functional_product, mahler_product, mahler_product_psh, santalo_axis_search, AxisProfile, MahlerReport,
    ParallelSectionsBody, SantaloSearchResult,
};
pub use reduction::{ReductionCertificate, ReductionStep, StepKind, Terminal};
pub use revolve::{AffineNormalization, BodyOfRevolution, DualityReport};
