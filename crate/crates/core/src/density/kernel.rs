use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Beyond this many bandwidths a Gaussian kernel term is exactly zero in f64
/// (`exp(-x)` underflows for x > ~745).
const GAUSSIAN_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    #[default]
    Gaussian,
    Epanechnikov,
    Uniform,
}

/// Kernel shape. Defaults to Gaussian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KernelSpec {
    pub family: KernelFamily,
}

impl KernelSpec {
    pub const fn new(family: KernelFamily) -> Self {
        Self { family }
    }

    pub const fn gaussian() -> Self {
        Self::new(KernelFamily::Gaussian)
    }

    pub const fn epanechnikov() -> Self {
        Self::new(KernelFamily::Epanechnikov)
    }

    pub const fn uniform() -> Self {
        Self::new(KernelFamily::Uniform)
    }

    /// Radius of the support; infinite for the Gaussian.
    pub fn support_radius(&self) -> f64 {
        match self.family {
            KernelFamily::Gaussian => f64::INFINITY,
            KernelFamily::Epanechnikov | KernelFamily::Uniform => 1.0,
        }
    }

    /// Radius outside which the kernel evaluates to exactly 0.0.
    pub(crate) fn effective_radius(&self) -> f64 {
        match self.family {
            KernelFamily::Gaussian => GAUSSIAN_CUTOFF,
            _ => self.support_radius(),
        }
    }

    /// `sup |K|`.
    pub fn sup_norm(&self) -> f64 {
        match self.family {
            KernelFamily::Gaussian => FRAC_1_SQRT_2PI,
            KernelFamily::Epanechnikov => 0.75,
            KernelFamily::Uniform => 0.5,
        }
    }

    /// `∫ K(t)² dt`, the roughness constant of the kernel.
    pub fn roughness(&self) -> f64 {
        match self.family {
            KernelFamily::Gaussian => 0.5 / PI.sqrt(),
            KernelFamily::Epanechnikov => 0.6,
            KernelFamily::Uniform => 0.5,
        }
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match self.family {
            KernelFamily::Gaussian => FRAC_1_SQRT_2PI * (-0.5 * t * t).exp(),
            KernelFamily::Epanechnikov => {
                if t.abs() < 1.0 {
                    0.75 * (1.0 - t * t)
                } else {
                    0.0
                }
            }
            // half-open [-1, 1) keeps the kernel right-continuous
            KernelFamily::Uniform => {
                if (-1.0..1.0).contains(&t) {
                    0.5
                } else {
                    0.0
                }
            }
        }
    }
}

/// `K(t)` for the given kernel; zero outside the support of compact kernels.
pub fn kernel_eval(spec: KernelSpec, t: f64) -> f64 {
    spec.eval(t)
}
