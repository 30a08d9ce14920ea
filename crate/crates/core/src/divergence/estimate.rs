use serde::{Deserialize, Serialize};

use super::{DensityModel, DivergenceOrder};
use crate::density::{KdeFit, KernelSpec};
use crate::quadrature::{Grid, QuadratureInfo};
use crate::{Error, Result, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceKind {
    AlphaDiv,
    Renyi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceEstimate {
    pub kind: DivergenceKind,
    pub order: DivergenceOrder,
    pub value: f64,
    /// Sample size behind a plug-in estimate; 0 for exact densities.
    pub n: usize,
    pub quadrature: QuadratureInfo,
}

/// `ln p` sampled on the grid nodes.
fn ln_on_grid(model: &DensityModel, grid: &Grid) -> Vec<f64> {
    grid.nodes().map(|x| model.ln_density(x)).collect()
}

/// `∫ p^α q^(1−α) dx` from log-densities on the grid.
///
/// Where `p` vanishes the integrand is 0 for α > 0; where `q` vanishes
/// while `p` does not, the likelihood ratio is unbounded.
fn affinity(
    ln_p: &[f64],
    ln_q: &[f64],
    grid: &Grid,
    order: DivergenceOrder,
) -> Result<(f64, QuadratureInfo)> {
    let a = order.alpha();
    let mut values = Vec::with_capacity(grid.points);
    for (i, (&lp, &lq)) in ln_p.iter().zip(ln_q).enumerate() {
        let v = if lq == f64::NEG_INFINITY {
            if lp > f64::NEG_INFINITY {
                return Err(Error::UnboundedLikelihoodRatio(grid.node(i)));
            }
            0.0
        } else if lp == f64::NEG_INFINITY {
            if a > 0.0 {
                0.0
            } else {
                return Err(Error::IntegralDiverged(grid.node(i)));
            }
        } else {
            (a * lp + (1.0 - a) * lq).exp()
        };
        if !v.is_finite() {
            return Err(Error::IntegralDiverged(grid.node(i)));
        }
        values.push(v);
    }
    let integral = grid.simpson(&values);
    if !integral.is_finite() {
        return Err(Error::IntegralDiverged(f64::NAN));
    }
    Ok((integral, QuadratureInfo::from_grid(grid, &values)))
}

fn alpha_from_affinity(integral: f64, order: DivergenceOrder) -> f64 {
    let a = order.alpha();
    (1.0 - integral) / (a * (1.0 - a))
}

fn renyi_from_affinity(integral: f64, order: DivergenceOrder) -> Result<f64> {
    if !(integral > 0.0) {
        return Err(Error::LogOfNonpositive(integral));
    }
    Ok(integral.ln() / (order.alpha() - 1.0))
}

fn default_grid(p: &DensityModel, q: &DensityModel) -> Grid {
    Grid::covering([p.effective_range(), q.effective_range()])
}

/// `D_α(p, q) = (1/(α(1−α))) · {1 − ∫ (p/q)^α q dx}` by quadrature.
pub fn alpha_divergence(
    p: &DensityModel,
    q: &DensityModel,
    order: DivergenceOrder,
) -> Result<DivergenceEstimate> {
    alpha_divergence_on(p, q, order, &default_grid(p, q))
}

pub fn alpha_divergence_on(
    p: &DensityModel,
    q: &DensityModel,
    order: DivergenceOrder,
    grid: &Grid,
) -> Result<DivergenceEstimate> {
    let (integral, quadrature) = affinity(&ln_on_grid(p, grid), &ln_on_grid(q, grid), grid, order)?;
    Ok(DivergenceEstimate {
        kind: DivergenceKind::AlphaDiv,
        order,
        value: alpha_from_affinity(integral, order),
        n: p.sample_size().max(q.sample_size()),
        quadrature,
    })
}

/// `R_α(p, q) = (1/(α−1)) · log ∫ p^α q^(1−α) dx` by quadrature.
pub fn renyi_divergence(
    p: &DensityModel,
    q: &DensityModel,
    order: DivergenceOrder,
) -> Result<DivergenceEstimate> {
    renyi_divergence_on(p, q, order, &default_grid(p, q))
}

pub fn renyi_divergence_on(
    p: &DensityModel,
    q: &DensityModel,
    order: DivergenceOrder,
    grid: &Grid,
) -> Result<DivergenceEstimate> {
    let (integral, quadrature) = affinity(&ln_on_grid(p, grid), &ln_on_grid(q, grid), grid, order)?;
    Ok(DivergenceEstimate {
        kind: DivergenceKind::Renyi,
        order,
        value: renyi_from_affinity(integral, order)?,
        n: p.sample_size().max(q.sample_size()),
        quadrature,
    })
}

/// `D_α = (1/(α(α−1))) · {exp((α−1)·R_α) − 1}`.
///
/// Both sides share the affinity `∫ p^α q^(1−α) = exp((α−1)·R_α)`, so the
/// map is exact for any pair of densities.
pub fn alpha_from_renyi_value(order: DivergenceOrder, renyi: f64) -> f64 {
    let a = order.alpha();
    ((a - 1.0) * renyi).exp_m1() / (a * (a - 1.0))
}

/// Converts a Rényi estimate to the α-divergence of the same order. An
/// α-divergence estimate is returned unchanged.
pub fn alpha_from_renyi(r: &DivergenceEstimate) -> DivergenceEstimate {
    match r.kind {
        DivergenceKind::AlphaDiv => r.clone(),
        DivergenceKind::Renyi => DivergenceEstimate {
            kind: DivergenceKind::AlphaDiv,
            value: alpha_from_renyi_value(r.order, r.value),
            ..r.clone()
        },
    }
}

/// Plug-in `D̂_α(f̂_n, model)` with `f̂_n` the KDE of `sample`.
pub fn estimate_divergence(
    sample: &Sample,
    model: &DensityModel,
    order: DivergenceOrder,
    kernel: KernelSpec,
    bandwidth: f64,
) -> Result<DivergenceEstimate> {
    let fit = DensityModel::kde(KdeFit::new(sample.clone(), kernel, bandwidth)?);
    alpha_divergence(&fit, model, order)
}

/// Plug-in `R̂_α(f̂_n, model)`.
pub fn estimate_renyi_divergence(
    sample: &Sample,
    model: &DensityModel,
    order: DivergenceOrder,
    kernel: KernelSpec,
    bandwidth: f64,
) -> Result<DivergenceEstimate> {
    let fit = DensityModel::kde(KdeFit::new(sample.clone(), kernel, bandwidth)?);
    renyi_divergence(&fit, model, order)
}

/// `D̂_α(f̂_n, f1)` and `D̂_α(f̂_n, f2)` sharing one grid and one KDE pass.
pub(crate) fn plug_in_pair(
    fit: &DensityModel,
    f1: &DensityModel,
    f2: &DensityModel,
    order: DivergenceOrder,
) -> Result<(DivergenceEstimate, DivergenceEstimate)> {
    let grid = Grid::covering([
        fit.effective_range(),
        f1.effective_range(),
        f2.effective_range(),
    ]);
    let ln_fit = ln_on_grid(fit, &grid);
    let one = |model: &DensityModel| -> Result<DivergenceEstimate> {
        let (integral, quadrature) = affinity(&ln_fit, &ln_on_grid(model, &grid), &grid, order)?;
        Ok(DivergenceEstimate {
            kind: DivergenceKind::AlphaDiv,
            order,
            value: alpha_from_affinity(integral, order),
            n: fit.sample_size(),
            quadrature,
        })
    };
    Ok((one(f1)?, one(f2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergence::Gaussian;
    use approx::assert_abs_diff_eq;

    fn n(mean: f64, var: f64) -> DensityModel {
        DensityModel::gaussian(mean, var).unwrap()
    }

    #[test]
    fn identical_densities_have_zero_divergence() {
        let p = n(0.0, 1.0);
        let d = alpha_divergence(&p, &p, DivergenceOrder::HALF).unwrap();
        assert_abs_diff_eq!(d.value, 0.0, epsilon = 1e-12);
        assert_eq!(d.kind, DivergenceKind::AlphaDiv);
        assert_eq!(d.n, 0);
        let r = renyi_divergence(&p, &p, DivergenceOrder::HALF).unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn half_order_bhattacharyya_values() {
        // 4(1 − √(2σ₁σ₂/(σ₁²+σ₂²))), σ₁ = 1, σ₂ = √2; 30-digit reference
        let d = alpha_divergence(&n(0.0, 1.0), &n(0.0, 2.0), DivergenceOrder::HALF).unwrap();
        assert_abs_diff_eq!(d.value, 0.116_065_826_341_412_64, epsilon = 1e-12);
        // −2 log √(2·1·2/5) = −log 0.8
        let r = renyi_divergence(&n(0.0, 1.0), &n(0.0, 4.0), DivergenceOrder::HALF).unwrap();
        assert_abs_diff_eq!(r.value, 0.223_143_551_314_209_76, epsilon = 1e-12);
    }

    #[test]
    fn half_order_is_symmetric() {
        let pairs = [((0.0, 1.0), (0.0, 2.0)), ((1.0, 0.5), (-2.0, 3.0)), ((0.3, 7.0), (0.0, 0.3))];
        for ((m1, v1), (m2, v2)) in pairs {
            let a = alpha_divergence(&n(m1, v1), &n(m2, v2), DivergenceOrder::HALF).unwrap();
            let b = alpha_divergence(&n(m2, v2), &n(m1, v1), DivergenceOrder::HALF).unwrap();
            assert_abs_diff_eq!(a.value, b.value, epsilon = 1e-12);
        }
    }

    #[test]
    fn alpha_from_renyi_scalar_cases() {
        for a in [0.1, 0.5, 0.9] {
            let o = DivergenceOrder::new(a).unwrap();
            assert_eq!(alpha_from_renyi_value(o, 0.0), 0.0);
        }
        // (1/(α(α−1)))(e^{(α−1)·0.1} − 1) at α = 0.5, i.e. 4(1 − e^{−0.05})
        let v = alpha_from_renyi_value(DivergenceOrder::HALF, 0.1);
        assert_abs_diff_eq!(v, 0.195_082_301_997_143_96, epsilon = 1e-15);
    }

    #[test]
    fn alpha_from_renyi_keeps_order_and_changes_kind() {
        let r = renyi_divergence(&n(0.0, 1.0), &n(1.0, 2.0), DivergenceOrder::new(0.3).unwrap()).unwrap();
        let d = alpha_from_renyi(&r);
        assert_eq!(d.kind, DivergenceKind::AlphaDiv);
        assert_eq!(d.order, r.order);
        assert_eq!(alpha_from_renyi(&d), d);
    }

    #[test]
    fn vanishing_model_density_is_unbounded_ratio() {
        let fit = KdeFit::new(vec![0.0, 0.5].into(), KernelSpec::gaussian(), 0.5).unwrap();
        let p = DensityModel::kde(fit);
        let narrow = DensityModel::kde(KdeFit::new(vec![0.0].into(), KernelSpec::uniform(), 0.1).unwrap());
        let err = alpha_divergence(&p, &narrow, DivergenceOrder::HALF).unwrap_err();
        assert!(matches!(err, Error::UnboundedLikelihoodRatio(_)));
        assert!(err.to_string().contains("unbounded likelihood ratio"));
    }

    #[test]
    fn vanishing_kde_contributes_zero() {
        // compact KDE is zero on most of the grid; α > 0 makes that harmless
        let p = DensityModel::kde(KdeFit::new(vec![0.0].into(), KernelSpec::uniform(), 0.5).unwrap());
        let q = n(0.0, 1.0);
        let d = alpha_divergence(&p, &q, DivergenceOrder::HALF).unwrap();
        assert!(d.value.is_finite());
        assert_eq!(d.n, 1);
    }

    #[test]
    fn negative_order_with_vanishing_p_diverges() {
        let p = DensityModel::kde(KdeFit::new(vec![0.0].into(), KernelSpec::uniform(), 0.5).unwrap());
        let q = n(0.0, 1.0);
        let err = alpha_divergence(&p, &q, DivergenceOrder::new_unchecked(-0.5).unwrap()).unwrap_err();
        assert!(err.to_string().contains("integral diverged"));
    }

    #[test]
    fn nonpositive_affinity_is_rejected() {
        assert!(matches!(
            renyi_from_affinity(0.0, DivergenceOrder::HALF),
            Err(Error::LogOfNonpositive(_))
        ));
        assert!(Error::LogOfNonpositive(0.0).to_string().contains("log of nonpositive"));
    }

    #[test]
    fn plug_in_pair_matches_separate_estimates() {
        let sample = Sample::new(vec![-1.2, -0.3, 0.1, 0.4, 0.9, 1.7]);
        let fit = DensityModel::kde(KdeFit::new(sample, KernelSpec::gaussian(), 0.4).unwrap());
        let (f1, f2) = (n(0.0, 1.0), n(0.0, 2.0));
        let (d1, d2) = plug_in_pair(&fit, &f1, &f2, DivergenceOrder::HALF).unwrap();
        assert_eq!(d1.value, alpha_divergence(&fit, &f1, DivergenceOrder::HALF).unwrap().value);
        assert_eq!(d2.value, alpha_divergence(&fit, &f2, DivergenceOrder::HALF).unwrap().value);
        assert_eq!(d1.n, 6);
    }

    #[test]
    fn unchecked_order_above_one() {
        let o = DivergenceOrder::new_unchecked(2.0).unwrap();
        let p = Gaussian::new(0.0, 1.0).unwrap();
        let q = Gaussian::new(0.5, 1.5).unwrap();
        let r = renyi_divergence(&p.into(), &q.into(), o).unwrap();
        let exact = crate::divergence::gaussian_renyi_oracle(&p, &q, o).unwrap();
        assert_abs_diff_eq!(r.value, exact, epsilon = 1e-9);
    }
}
