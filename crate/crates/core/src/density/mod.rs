//! Kernels, kernel density estimation and bandwidth selection.
//!
//! Every kernel here is a bounded, nonnegative, right-continuous function of
//! bounded variation that integrates to one. Two further conditions used in
//! the consistency argument for the plug-in estimator (a uniform entropy
//! bound on the class `{K((x − ·)/h)}` and pointwise measurability of that
//! class) are analytic and have no runtime check; all three kernels satisfy
//! them. Only the univariate case is supported.

mod bandwidth;
mod kde;
mod kernel;

pub use bandwidth::{
    bandwidth_silverman, check_schedule, BandwidthRule, BandwidthSchedule, ScheduleCheck,
    DEFAULT_RATE_EXPONENT,
};
pub use kde::{kde_evaluate, KdeFit};
pub use kernel::{kernel_eval, KernelFamily, KernelSpec};
