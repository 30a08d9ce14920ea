use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::density::KdeFit;
use crate::{Error, Result};

/// Half-width of a Gaussian's effective support, in standard deviations.
const GAUSSIAN_REACH: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gaussian {
    pub mean: f64,
    pub variance: f64,
}

impl Gaussian {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        let g = Self { mean, variance };
        g.validate()?;
        Ok(g)
    }

    pub fn standard() -> Self {
        Self {
            mean: 0.0,
            variance: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.mean.is_finite() {
            return Err(Error::invalid("mean", format!("{} is not finite", self.mean)));
        }
        if !(self.variance.is_finite() && self.variance > 0.0) {
            return Err(Error::invalid("variance", format!("{} must be positive", self.variance)));
        }
        Ok(())
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn ln_density(&self, x: f64) -> f64 {
        let d = x - self.mean;
        -0.5 * (2.0 * PI * self.variance).ln() - d * d / (2.0 * self.variance)
    }

    pub fn density(&self, x: f64) -> f64 {
        self.ln_density(x).exp()
    }

    fn range(&self) -> (f64, f64) {
        let r = GAUSSIAN_REACH * self.std_dev();
        (self.mean - r, self.mean + r)
    }
}

/// An evaluable univariate density supported on the whole real line.
///
/// `Ar1M1` and `Ar1M2` are the marginal densities of the differenced AR(1)
/// series under the random-walk and stationary models; see [`crate::ar1`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DensityModel {
    Gaussian(Gaussian),
    /// `weight · first + (1 − weight) · second`.
    Mixture {
        weight: f64,
        first: Box<DensityModel>,
        second: Box<DensityModel>,
    },
    #[serde(skip)]
    Kde(Arc<KdeFit>),
    Ar1M1 { sigma2: f64 },
    Ar1M2 { sigma2: f64, phi: f64 },
}

impl PartialEq for DensityModel {
    fn eq(&self, other: &Self) -> bool {
        use DensityModel::*;
        match (self, other) {
            (Gaussian(a), Gaussian(b)) => a == b,
            (
                Mixture { weight: w1, first: a1, second: b1 },
                Mixture { weight: w2, first: a2, second: b2 },
            ) => w1 == w2 && a1 == a2 && b1 == b2,
            (Kde(a), Kde(b)) => Arc::ptr_eq(a, b),
            (Ar1M1 { sigma2: a }, Ar1M1 { sigma2: b }) => a == b,
            (Ar1M2 { sigma2: a, phi: p }, Ar1M2 { sigma2: b, phi: q }) => a == b && p == q,
            _ => false,
        }
    }
}

impl DensityModel {
    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        Ok(DensityModel::Gaussian(Gaussian::new(mean, variance)?))
    }

    pub fn mixture(weight: f64, first: DensityModel, second: DensityModel) -> Result<Self> {
        let m = DensityModel::Mixture {
            weight,
            first: Box::new(first),
            second: Box::new(second),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn kde(fit: KdeFit) -> Self {
        DensityModel::Kde(Arc::new(fit))
    }

    /// Checks parameters; needed after deserialisation.
    pub fn validate(&self) -> Result<()> {
        match self {
            DensityModel::Gaussian(g) => g.validate(),
            DensityModel::Mixture { weight, first, second } => {
                if !(0.0..=1.0).contains(weight) {
                    return Err(Error::invalid("weight", format!("mixture weight {weight} outside [0, 1]")));
                }
                first.validate()?;
                second.validate()
            }
            DensityModel::Kde(_) => Ok(()),
            DensityModel::Ar1M1 { sigma2 } => {
                if !(sigma2.is_finite() && *sigma2 > 0.0) {
                    return Err(Error::invalid("sigma2", format!("{sigma2} must be positive")));
                }
                Ok(())
            }
            DensityModel::Ar1M2 { sigma2, phi } => {
                if !(sigma2.is_finite() && *sigma2 > 0.0) {
                    return Err(Error::invalid("sigma2", format!("{sigma2} must be positive")));
                }
                if !(phi.abs() < 1.0) {
                    return Err(Error::StationarityViolated(phi.abs()));
                }
                Ok(())
            }
        }
    }

    /// The equivalent Gaussian for Gaussian-family models.
    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match *self {
            DensityModel::Gaussian(g) => Some(g),
            DensityModel::Ar1M1 { sigma2 } => Some(Gaussian {
                mean: 0.0,
                variance: sigma2,
            }),
            DensityModel::Ar1M2 { sigma2, phi } => Some(Gaussian {
                mean: 0.0,
                variance: 2.0 * sigma2 / (1.0 - phi * phi),
            }),
            _ => None,
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match self {
            DensityModel::Kde(fit) => fit.evaluate(x),
            DensityModel::Mixture { weight, first, second } => {
                weight * first.density(x) + (1.0 - weight) * second.density(x)
            }
            _ => self.ln_density(x).exp(),
        }
    }

    pub fn ln_density(&self, x: f64) -> f64 {
        match self {
            DensityModel::Kde(fit) => fit.evaluate(x).ln(),
            DensityModel::Mixture { weight, first, second } => {
                let w = *weight;
                if w == 1.0 {
                    return first.ln_density(x);
                }
                if w == 0.0 {
                    return second.ln_density(x);
                }
                let a = w.ln() + first.ln_density(x);
                let b = (1.0 - w).ln() + second.ln_density(x);
                let m = a.max(b);
                if m == f64::NEG_INFINITY {
                    return m;
                }
                m + ((a - m).exp() + (b - m).exp()).ln()
            }
            other => other
                .as_gaussian()
                .expect("gaussian-family model")
                .ln_density(x),
        }
    }

    /// Interval outside which the density is negligible.
    pub fn effective_range(&self) -> (f64, f64) {
        match self {
            DensityModel::Kde(fit) => {
                let k = fit.kernel();
                let pad = if k.support_radius().is_finite() {
                    k.support_radius()
                } else {
                    GAUSSIAN_REACH
                } * fit.bandwidth();
                (fit.min() - pad, fit.max() + pad)
            }
            DensityModel::Mixture { first, second, .. } => {
                let (a, b) = first.effective_range();
                let (c, d) = second.effective_range();
                (a.min(c), b.max(d))
            }
            other => other.as_gaussian().expect("gaussian-family model").range(),
        }
    }

    /// Sample size behind a KDE model; 0 for closed-form models.
    pub(crate) fn sample_size(&self) -> usize {
        match self {
            DensityModel::Kde(fit) => fit.len(),
            _ => 0,
        }
    }
}

impl From<Gaussian> for DensityModel {
    fn from(g: Gaussian) -> Self {
        DensityModel::Gaussian(g)
    }
}
