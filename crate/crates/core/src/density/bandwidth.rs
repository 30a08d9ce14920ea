use serde::{Deserialize, Serialize};

use crate::{Error, Result, Sample};

/// Default β in the rate condition `(n·h)^(1−β) / log n → ∞`.
pub const DEFAULT_RATE_EXPONENT: f64 = 0.5;

/// How the bandwidth of each fit is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthRule {
    #[default]
    Silverman,
    Fixed(f64),
}

impl BandwidthRule {
    pub fn select(&self, sample: &Sample) -> Result<f64> {
        match *self {
            BandwidthRule::Silverman => bandwidth_silverman(sample),
            BandwidthRule::Fixed(h) if h.is_finite() && h > 0.0 => Ok(h),
            BandwidthRule::Fixed(h) => Err(Error::invalid("bandwidth", format!("fixed bandwidth {h} must be positive"))),
        }
    }
}

/// Silverman's rule of thumb, `h = 1.06 · σ̂ · n^(−1/5)` with σ̂ the
/// (n − 1) sample standard deviation.
pub fn bandwidth_silverman(sample: &Sample) -> Result<f64> {
    if sample.len() < 2 {
        return Err(Error::SampleTooSmall {
            needed: 2,
            got: sample.len(),
        });
    }
    let sd = sample.std_dev();
    if !sd.is_finite() {
        return Err(Error::invalid("sample", "contains non-finite values"));
    }
    if sd == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(1.06 * sd * (sample.len() as f64).powf(-0.2))
}

/// A bandwidth together with the admissible band `h_lower ≤ h ≤ h_upper`
/// and the rate exponent β used by the consistency conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthSchedule {
    pub h: f64,
    pub h_lower: f64,
    pub h_upper: f64,
    pub rate_exponent_beta: f64,
    pub n: usize,
}

impl BandwidthSchedule {
    pub fn new(n: usize, h: f64, h_lower: f64, h_upper: f64) -> Self {
        Self {
            h,
            h_lower,
            h_upper,
            rate_exponent_beta: DEFAULT_RATE_EXPONENT,
            n,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.rate_exponent_beta = beta;
        self
    }

    /// `(n·h)^(1−β) / log n`; infinite for n = 1.
    pub fn rate_ratio(&self) -> f64 {
        let n = self.n as f64;
        (n * self.h).powf(1.0 - self.rate_exponent_beta) / n.ln()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleCheck {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Advisory check of a schedule: `h_lower ≤ h ≤ h_upper` and
/// `(n·h)^(1−β) > log n`. Every violated condition gets a diagnostic.
pub fn check_schedule(sched: &BandwidthSchedule) -> ScheduleCheck {
    let mut diagnostics = Vec::new();
    let BandwidthSchedule {
        h,
        h_lower,
        h_upper,
        rate_exponent_beta: beta,
        n,
    } = *sched;

    if !(h.is_finite() && h > 0.0) {
        diagnostics.push(format!("bandwidth h = {h} is not positive and finite"));
    }
    if !(h_lower > 0.0) {
        diagnostics.push(format!("lower bound h_lower = {h_lower} is not positive"));
    }
    if h < h_lower {
        diagnostics.push(format!("h = {h} is below h_lower = {h_lower}"));
    }
    if h > h_upper {
        diagnostics.push(format!("h = {h} is above h_upper = {h_upper}"));
    }
    if !(beta > 0.0 && beta < 1.0) {
        diagnostics.push(format!("rate exponent beta = {beta} is outside (0, 1)"));
    }
    if n < 2 {
        diagnostics.push(format!("n = {n}: log n is not positive"));
    } else {
        let lhs = (n as f64 * h).powf(1.0 - beta);
        let rhs = (n as f64).ln();
        if !(lhs > rhs) {
            diagnostics.push(format!(
                "rate condition fails: (n*h)^(1-beta) = {lhs:.6} <= log n = {rhs:.6}"
            ));
        }
    }

    ScheduleCheck {
        ok: diagnostics.is_empty(),
        diagnostics,
    }
}
