//! AR(1) with intercept, `X_t − μ = φ(X_{t−1} − μ) + ε_t`, `ε_t ~ N(0, σ²)`,
//! and the unit-root comparison recast on the first differences
//! `W_t = X_t − X_{t−1}`, which do not depend on μ.
//!
//! Under the random walk (φ = 1) `W_t = ε_t`, with density [`m1_density`].
//! For the stationary alternative, [`m2_density`] is the zero-mean Gaussian
//! of variance `2σ²/(1−φ²)`. Note that the marginal variance of `W_t` for a
//! stationary AR(1) is actually `2σ²/(1+φ)` ([`differenced_variance`]); the
//! two agree only at φ = 0.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::divergence::DensityModel;
use crate::{Error, Provenance, Result, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ar1Config {
    pub phi: f64,
    pub mu: f64,
    pub sigma2: f64,
    /// Number of differences; the simulated path has `n + 1` points.
    pub n: usize,
    pub seed: u64,
    /// Steps discarded before `X₀`.
    #[serde(default)]
    pub burn_in: usize,
}

impl Ar1Config {
    pub fn new(phi: f64, mu: f64, sigma2: f64, n: usize, seed: u64) -> Self {
        Self {
            phi,
            mu,
            sigma2,
            n,
            seed,
            burn_in: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma2.is_finite() && self.sigma2 > 0.0) {
            return Err(Error::invalid("sigma2", format!("{} must be positive", self.sigma2)));
        }
        if !(self.phi.abs() <= 1.0) {
            return Err(Error::invalid("phi", format!("|phi| = {} exceeds 1", self.phi.abs())));
        }
        if !self.mu.is_finite() {
            return Err(Error::invalid("mu", "must be finite"));
        }
        if self.n == 0 {
            return Err(Error::invalid("n", "must be positive"));
        }
        Ok(())
    }
}

/// First differences of an AR(1) path; `len() == n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferencedSample {
    pub w: Sample,
}

impl DifferencedSample {
    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn into_sample(self) -> Sample {
        self.w
    }
}

/// Simulates `X₀, …, X_n`.
///
/// `X₀ − μ` is drawn from the stationary law `N(0, σ²/(1−φ²))` when |φ| < 1
/// and from `N(0, σ²)` when |φ| = 1. The centred process `X_t − μ` depends
/// only on (φ, σ², seed), so paths for different μ are shifts of each other.
pub fn simulate_ar1(cfg: &Ar1Config) -> Result<Sample> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sigma = cfg.sigma2.sqrt();
    let innovation = Normal::new(0.0, sigma).expect("positive sigma");
    let start_sd = if cfg.phi.abs() < 1.0 {
        sigma / (1.0 - cfg.phi * cfg.phi).sqrt()
    } else {
        sigma
    };

    let mut y = Normal::new(0.0, start_sd).expect("positive sd").sample(&mut rng);
    for _ in 0..cfg.burn_in {
        y = cfg.phi * y + innovation.sample(&mut rng);
    }
    let mut path = Vec::with_capacity(cfg.n + 1);
    path.push(cfg.mu + y);
    for _ in 0..cfg.n {
        y = cfg.phi * y + innovation.sample(&mut rng);
        path.push(cfg.mu + y);
    }
    Ok(Sample::with_provenance(
        path,
        Provenance {
            seed: Some(cfg.seed),
            dgp: format!("ar1(phi={}, mu={}, sigma2={})", cfg.phi, cfg.mu, cfg.sigma2),
        },
    ))
}

/// `W_t = X_t − X_{t−1}` for t = 1..n.
pub fn difference(x: &Sample) -> Result<DifferencedSample> {
    if x.len() < 2 {
        return Err(Error::SampleTooSmall {
            needed: 2,
            got: x.len(),
        });
    }
    let w = x.values().windows(2).map(|p| p[1] - p[0]).collect();
    let mut provenance = x.provenance().clone();
    provenance.dgp = format!("diff({})", provenance.dgp);
    Ok(DifferencedSample {
        w: Sample::with_provenance(w, provenance),
    })
}

/// Density of `W_t` under the random walk: `N(0, σ²)`.
pub fn m1_density(sigma2: f64) -> Result<DensityModel> {
    let m = DensityModel::Ar1M1 { sigma2 };
    m.validate()?;
    Ok(m)
}

/// Density of `W_t` under the stationary model: `N(0, 2σ²/(1−φ²))`.
pub fn m2_density(sigma2: f64, phi: f64) -> Result<DensityModel> {
    let m = DensityModel::Ar1M2 { sigma2, phi };
    m.validate()?;
    Ok(m)
}

/// Variance assumed by [`m2_density`].
pub fn m2_variance(sigma2: f64, phi: f64) -> f64 {
    2.0 * sigma2 / (1.0 - phi * phi)
}

/// Actual marginal variance of `W_t` for a stationary AR(1), `2σ²/(1+φ)`.
pub fn differenced_variance(sigma2: f64, phi: f64) -> f64 {
    2.0 * sigma2 / (1.0 + phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Grid;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn phi_zero_is_white_noise_around_mu() {
        let x = simulate_ar1(&Ar1Config::new(0.0, 3.0, 1.0, 100_000, 1)).unwrap();
        assert_eq!(x.len(), 100_001);
        assert_abs_diff_eq!(x.mean(), 3.0, epsilon = 0.02);
    }

    #[test]
    fn random_walk_increments_have_innovation_variance() {
        let x = simulate_ar1(&Ar1Config::new(1.0, -7.0, 2.5, 10_000, 4)).unwrap();
        let w = difference(&x).unwrap();
        assert_eq!(w.len(), 10_000);
        assert_relative_eq!(w.w.variance(), 2.5, max_relative = 0.05);
        assert_abs_diff_eq!(w.w.mean(), 0.0, epsilon = 0.05);
    }

    #[test]
    fn stationary_variance() {
        // σ²/(1−φ²) = 4/3
        let x = simulate_ar1(&Ar1Config::new(0.5, 0.0, 1.0, 100_000, 9)).unwrap();
        assert_relative_eq!(x.variance(), 1.0 / 0.75, max_relative = 0.02);
    }

    #[test]
    fn differenced_variance_is_two_sigma2_over_one_plus_phi() {
        let phi = 0.6;
        let x = simulate_ar1(&Ar1Config::new(phi, 0.0, 1.0, 200_000, 21)).unwrap();
        let w = difference(&x).unwrap();
        assert_relative_eq!(w.w.variance(), differenced_variance(1.0, phi), max_relative = 0.02);
        // the model-2 density assumes a much wider law
        assert!(m2_variance(1.0, phi) > 2.0 * w.w.variance());
    }

    #[test]
    fn simulation_is_seeded() {
        let cfg = Ar1Config::new(0.8, 1.0, 1.0, 50, 77);
        assert_eq!(simulate_ar1(&cfg).unwrap(), simulate_ar1(&cfg).unwrap());
        let other = Ar1Config { seed: 78, ..cfg };
        assert_ne!(simulate_ar1(&cfg).unwrap(), simulate_ar1(&other).unwrap());
    }

    #[test]
    fn burn_in_changes_start() {
        let cfg = Ar1Config::new(0.8, 0.0, 1.0, 10, 5);
        let burned = Ar1Config { burn_in: 100, ..cfg };
        assert_ne!(simulate_ar1(&cfg).unwrap().values()[0], simulate_ar1(&burned).unwrap().values()[0]);
    }

    #[test]
    fn difference_examples() {
        assert_eq!(difference(&vec![1.0, 2.0, 3.0].into()).unwrap().w.values(), &[1.0, 1.0]);
        assert_eq!(difference(&vec![4.0; 5].into()).unwrap().w.values(), &[0.0; 4]);
        assert!(difference(&vec![1.0].into()).is_err());
        let x: Sample = vec![0.5, -1.0, 2.0, 2.25].into();
        let shifted = x.map(|v| v + 8.0);
        assert_eq!(difference(&x).unwrap().w.values(), difference(&shifted).unwrap().w.values());
    }

    #[test]
    fn model_densities() {
        let m1 = m1_density(1.0).unwrap();
        assert_abs_diff_eq!(m1.density(0.0), 1.0 / (2.0 * std::f64::consts::PI).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(m1_density(2.0).unwrap().density(0.0), 1.0 / (4.0 * std::f64::consts::PI).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(Grid::STANDARD.integrate(|x| m1.density(x)), 1.0, epsilon = 1e-12);
        assert!(m1_density(0.0).is_err());

        assert_eq!(m2_density(1.0, 0.0).unwrap().as_gaussian().unwrap().variance, 2.0);
        assert_abs_diff_eq!(m2_density(1.0, 0.5).unwrap().as_gaussian().unwrap().variance, 8.0 / 3.0, epsilon = 1e-15);
        assert!(m2_density(1.0, 0.999).unwrap().as_gaussian().unwrap().variance > 999.0);
        let err = m2_density(1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("stationarity violated"));
        assert!(m2_density(1.0, -1.5).is_err());
    }

    #[test]
    fn rejects_bad_config() {
        assert!(simulate_ar1(&Ar1Config::new(1.1, 0.0, 1.0, 10, 0)).is_err());
        assert!(simulate_ar1(&Ar1Config::new(0.5, 0.0, 0.0, 10, 0)).is_err());
        assert!(simulate_ar1(&Ar1Config::new(0.5, 0.0, 1.0, 0, 0)).is_err());
    }
}
