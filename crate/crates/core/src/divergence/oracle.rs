use super::{alpha_from_renyi_value, DivergenceOrder, Gaussian};
use crate::{Error, Result};

/// Closed-form Rényi divergence between two Gaussians:
///
/// ```text
/// σ_α² = α σ_q² + (1−α) σ_p²
/// R_α(p‖q) = α (μ_p − μ_q)² / (2σ_α²) + (1/(2(1−α))) · log(σ_α² / (σ_p^(2(1−α)) σ_q^(2α)))
/// ```
///
/// Defined only when `σ_α² > 0`, which always holds for α ∈ (0, 1).
pub fn gaussian_renyi_oracle(p: &Gaussian, q: &Gaussian, order: DivergenceOrder) -> Result<f64> {
    let a = order.alpha();
    let (vp, vq) = (p.variance, q.variance);
    // written so that p == q gives exactly 0
    let mixed = vp + a * (vq - vp);
    if !(mixed > 0.0) {
        return Err(Error::InadmissibleOrder(mixed));
    }
    let dm = p.mean - q.mean;
    let log_term = (mixed / vp).ln() - a * (vq / vp).ln();
    Ok(a * dm * dm / (2.0 * mixed) + log_term / (2.0 * (1.0 - a)))
}

/// Closed-form α-divergence between two Gaussians.
pub fn gaussian_alpha_oracle(p: &Gaussian, q: &Gaussian, order: DivergenceOrder) -> Result<f64> {
    gaussian_renyi_oracle(p, q, order).map(|r| alpha_from_renyi_value(order, r))
}
