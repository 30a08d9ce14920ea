//! Goodness-of-fit and model-selection tests built on the plug-in
//! α-divergence.
//!
//! Model selection uses the divergence indicator
//! `DI = D_α(f, f₁) − D_α(f, f₂)`: negative favours model 1, positive model 2,
//! zero means the models are equally close to the truth. Its estimate is
//! scaled by `√(n·h)` and compared against a two-sided normal band of
//! half-width `z_{1−level/2} · √Γ̂`.
//!
//! The asymptotic variances of the estimators depend on `x` and on the
//! pointwise KDE variance factor `σ²(x)`, so they cannot standardise a
//! scalar statistic directly. They are exposed verbatim as
//! [`pointwise_sigma_j`] and [`pointwise_gamma`]; the decision rule instead
//! uses [`estimate_gamma_integrated`], the empirical variance over the sample
//! of the influence function
//! `ψ(w) = (1/(1−α)) · [(f₁(w)/f̂_n(w))^(1−α) − (f₂(w)/f̂_n(w))^(1−α)]`
//! of the linearised indicator.
//!
//! `order` (the divergence order α) and `level` (the significance level) are
//! deliberately separate parameters.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::density::{bandwidth_silverman, KdeFit, KernelSpec};
use crate::divergence::{estimate_divergence, plug_in_pair, DensityModel, DivergenceOrder};
use crate::{Error, Result, Sample};

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid("level", format!("significance level {level} outside (0, 1)")))
    }
}

/// Standard normal quantile `Φ⁻¹(p)`.
pub fn normal_quantile(p: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub statistic: f64,
    pub threshold: f64,
    pub significance_level: f64,
    pub reject: bool,
}

impl GofResult {
    /// Critical region `{statistic ≥ Φ⁻¹(1 − level) · scale_sigma}`; the
    /// boundary rejects.
    pub fn from_statistic(statistic: f64, level: f64, scale_sigma: f64) -> Result<Self> {
        check_level(level)?;
        if !(scale_sigma.is_finite() && scale_sigma > 0.0) {
            return Err(Error::invalid("scale_sigma", format!("{scale_sigma} must be positive")));
        }
        let threshold = normal_quantile(1.0 - level) * scale_sigma;
        Ok(Self {
            statistic,
            threshold,
            significance_level: level,
            reject: statistic >= threshold,
        })
    }
}

/// Tests `H₀: D_α(f, model) = 0` with a Gaussian-kernel KDE at Silverman's
/// bandwidth. `scale_sigma` is the caller's scale for the statistic; no
/// default is assumed.
pub fn gof_test(
    sample: &Sample,
    model: &DensityModel,
    order: DivergenceOrder,
    level: f64,
    scale_sigma: f64,
) -> Result<GofResult> {
    let h = bandwidth_silverman(sample)?;
    gof_test_with(sample, model, order, level, scale_sigma, KernelSpec::gaussian(), h)
}

pub fn gof_test_with(
    sample: &Sample,
    model: &DensityModel,
    order: DivergenceOrder,
    level: f64,
    scale_sigma: f64,
    kernel: KernelSpec,
    bandwidth: f64,
) -> Result<GofResult> {
    check_level(level)?;
    let est = estimate_divergence(sample, model, order, kernel, bandwidth)?;
    GofResult::from_statistic(est.value, level, scale_sigma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Model1,
    Model2,
    Indecisive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub d1: f64,
    pub d2: f64,
    /// `d1 − d2`.
    pub di_raw: f64,
    /// `√(n·h) · di_raw`.
    pub di_scaled: f64,
    /// Γ̂.
    pub variance_estimate: f64,
    pub decision: Decision,
    pub significance_level: f64,
    /// `z_{1−level/2}`.
    pub critical_value: f64,
    pub n: usize,
    pub bandwidth: f64,
}

impl SelectionResult {
    /// `di_scaled / √Γ̂`, or `None` when Γ̂ is zero.
    pub fn standardized(&self) -> Option<f64> {
        (self.variance_estimate > 0.0).then(|| self.di_scaled / self.variance_estimate.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceFormula {
    /// Asymptotic variance of `√(n·h)(D̂_α(f̂_n, f_j) − D_α(f, f_j))`.
    SigmaJ,
    /// Asymptotic variance of the scaled indicator under equivalence.
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointwiseVariance {
    pub formula: VarianceFormula,
    pub evaluated_at: f64,
    pub value: f64,
}

fn pointwise_inputs(f: &DensityModel, x: f64, sigma2_x: f64) -> Result<f64> {
    if !(sigma2_x.is_finite() && sigma2_x >= 0.0) {
        return Err(Error::invalid("sigma2_x", format!("{sigma2_x} must be nonnegative")));
    }
    let fx = f.density(x);
    if !(fx > 0.0) {
        return Err(Error::DensityVanishes(x));
    }
    Ok(fx)
}

/// `σ_j² = (1/(1−α)²) · (f_j(x)/f(x))^(4−4α) · f²(x) · σ²(x)`.
pub fn pointwise_sigma_j(
    f: &DensityModel,
    fj: &DensityModel,
    order: DivergenceOrder,
    x: f64,
    sigma2_x: f64,
) -> Result<PointwiseVariance> {
    let fx = pointwise_inputs(f, x, sigma2_x)?;
    let a = order.alpha();
    let ratio = fj.density(x) / fx;
    let value = ratio.powf(4.0 - 4.0 * a) * fx * fx * sigma2_x / ((1.0 - a) * (1.0 - a));
    Ok(PointwiseVariance {
        formula: VarianceFormula::SigmaJ,
        evaluated_at: x,
        value,
    })
}

/// `Γ = (1/(1−α)²) · [(f₁/f)^(1−α) − (f₂/f)^(1−α)]⁴ · f²(x) · σ²(x)`.
pub fn pointwise_gamma(
    f: &DensityModel,
    f1: &DensityModel,
    f2: &DensityModel,
    order: DivergenceOrder,
    x: f64,
    sigma2_x: f64,
) -> Result<PointwiseVariance> {
    let fx = pointwise_inputs(f, x, sigma2_x)?;
    let a = order.alpha();
    let bracket = (f1.density(x) / fx).powf(1.0 - a) - (f2.density(x) / fx).powf(1.0 - a);
    let value = bracket.powi(4) * fx * fx * sigma2_x / ((1.0 - a) * (1.0 - a));
    Ok(PointwiseVariance {
        formula: VarianceFormula::Gamma,
        evaluated_at: x,
        value,
    })
}

/// Empirical (1/n) variance of the influence function ψ over the sample.
fn influence_variance(
    fit: &KdeFit,
    f1: &DensityModel,
    f2: &DensityModel,
    order: DivergenceOrder,
) -> Result<f64> {
    let a = order.alpha();
    let mut psi = Vec::with_capacity(fit.len());
    for &w in fit.sample().values() {
        let fw = fit.evaluate(w);
        if !(fw > 0.0) {
            return Err(Error::DensityVanishes(w));
        }
        let ln_fw = fw.ln();
        let r1 = ((1.0 - a) * (f1.ln_density(w) - ln_fw)).exp();
        let r2 = ((1.0 - a) * (f2.ln_density(w) - ln_fw)).exp();
        psi.push((r1 - r2) / (1.0 - a));
    }
    let n = psi.len() as f64;
    let mean = psi.iter().sum::<f64>() / n;
    let var = psi.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / n;
    if !var.is_finite() {
        return Err(Error::IntegralDiverged(f64::NAN));
    }
    Ok(var)
}

/// Γ̂: empirical variance of ψ(Wᵢ) with `f̂_n` the KDE of `sample`.
pub fn estimate_gamma_integrated(
    sample: &Sample,
    f1: &DensityModel,
    f2: &DensityModel,
    order: DivergenceOrder,
    kernel: KernelSpec,
    bandwidth: f64,
) -> Result<f64> {
    let fit = KdeFit::new(sample.clone(), kernel, bandwidth)?;
    influence_variance(&fit, f1, f2, order)
}

/// Three-way choice between `f1` and `f2` from the divergence indicator.
pub fn model_select(
    sample: &Sample,
    f1: &DensityModel,
    f2: &DensityModel,
    order: DivergenceOrder,
    level: f64,
    kernel: KernelSpec,
    bandwidth: f64,
) -> Result<SelectionResult> {
    check_level(level)?;
    let fit = KdeFit::new(sample.clone(), kernel, bandwidth)?;
    let n = fit.len();
    let variance_estimate = influence_variance(&fit, f1, f2, order)?;
    let fit = DensityModel::kde(fit);
    let (d1, d2) = plug_in_pair(&fit, f1, f2, order)?;

    let di_raw = d1.value - d2.value;
    let di_scaled = (n as f64 * bandwidth).sqrt() * di_raw;
    let critical_value = normal_quantile(1.0 - level / 2.0);
    let decision = if di_scaled.abs() <= critical_value * variance_estimate.sqrt() {
        Decision::Indecisive
    } else if di_scaled < 0.0 {
        Decision::Model1
    } else {
        Decision::Model2
    };

    Ok(SelectionResult {
        d1: d1.value,
        d2: d2.value,
        di_raw,
        di_scaled,
        variance_estimate,
        decision,
        significance_level: level,
        critical_value,
        n,
        bandwidth,
    })
}
