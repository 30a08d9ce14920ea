//! Monte Carlo harness: mixture data-generating process, seeded and
//! parallel replication loops, decision-percentage tables and figure data.
//!
//! Data come from `m(π) = π·N(0,1) + (1−π)·N(0,2)`; each replication draws
//! a sample, estimates `D̂₁`, `D̂₂` against the two candidate models and
//! runs [`model_select`](crate::inference::model_select).
//!
//! Replication `r` at sample size `n` draws from its own generator seeded by
//! [`replication_seed`]`(master, n, r)`, so tables are reproducible and the
//! result does not depend on how rayon schedules the work.

mod config;
mod dgp;
mod emit;
mod figure;
mod run;

pub use config::{ExperimentConfig, WideComponent, DEFAULT_REPLICATIONS, DEFAULT_SAMPLE_SIZES, DEFAULT_SEED, DESK_REPLICATIONS};
pub use dgp::{replication_seed, sample_mixture, MixtureDgp};
pub use emit::{emit_table, format_sig6, round_sig6, TableFormat};
pub use figure::{emit_figure_data, CURVE_POINTS, HISTOGRAM_BINS};
pub use run::{aggregate, run_experiment, run_replications, ReplicationOutcome, TableRow};
