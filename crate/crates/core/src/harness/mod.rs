//! Seeded sampling, sweeps over random bodies, and the golden-constant checks.
//!
//! Every sample draws from its own `ChaCha8Rng` stream (`seed_from_u64(seed)` with the stream
//! set to the sample index), so rows do not depend on the worker count or on scheduling.

mod golden;
mod sample;
mod sweep;

pub use golden::{golden_check, GoldenItem, GoldenReport};
pub use sample::{chain_digest, sample_polygon, sample_rng};
pub use sweep::{
    run_sweep, sweep_rows, write_csv, Mode, SampleFailure, SweepConfig, SweepRow, SweepSummary, CSV_VERSION,
};
