use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The order α of a divergence.
///
/// [`DivergenceOrder::new`] admits only α ∈ (0, 1), the range in which the
/// plug-in estimator is known to be consistent. [`DivergenceOrder::new_unchecked`]
/// accepts any finite α other than 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct DivergenceOrder(f64);

impl DivergenceOrder {
    pub const HALF: DivergenceOrder = DivergenceOrder(0.5);

    pub fn new(alpha: f64) -> Result<Self> {
        let order = Self::new_unchecked(alpha)?;
        if !order.is_admissible() {
            return Err(Error::UncheckedOrder(alpha));
        }
        Ok(order)
    }

    pub fn new_unchecked(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha == 0.0 || alpha == 1.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        Ok(Self(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    pub fn is_admissible(self) -> bool {
        self.0 > 0.0 && self.0 < 1.0
    }
}

impl Default for DivergenceOrder {
    fn default() -> Self {
        Self::HALF
    }
}

impl TryFrom<f64> for DivergenceOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new_unchecked(alpha)
    }
}

impl From<DivergenceOrder> for f64 {
    fn from(o: DivergenceOrder) -> f64 {
        o.0
    }
}
