use std::sync::Arc;

use serde::Serialize;

use super::KernelSpec;
use crate::{Error, Result, Sample};

/// A fitted Parzen–Rosenblatt estimate `f̂_n(x) = (1/(n·h)) Σ K((Wᵢ − x)/h)`.
///
/// The sample is kept sorted so evaluation only touches observations within
/// the kernel's effective radius; terms outside it are exactly zero, so the
/// result equals the full sum.
#[derive(Debug, Clone, Serialize)]
pub struct KdeFit {
    sample: Sample,
    kernel: KernelSpec,
    bandwidth: f64,
    #[serde(skip)]
    sorted: Arc<[f64]>,
}

impl KdeFit {
    pub fn new(sample: Sample, kernel: KernelSpec, bandwidth: f64) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::invalid("bandwidth", format!("{bandwidth} is not a positive finite number")));
        }
        if sample.values().iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sample", "contains non-finite values"));
        }
        let mut sorted = sample.values().to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self {
            sample,
            kernel,
            bandwidth,
            sorted: sorted.into(),
        })
    }

    pub fn sample(&self) -> &Sample {
        &self.sample
    }

    pub fn kernel(&self) -> KernelSpec {
        self.kernel
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub(crate) fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub(crate) fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let h = self.bandwidth;
        let r = self.kernel.effective_radius() * h;
        let lo = self.sorted.partition_point(|&w| w < x - r);
        let hi = self.sorted.partition_point(|&w| w <= x + r);
        let sum: f64 = self.sorted[lo..hi]
            .iter()
            .map(|&w| self.kernel.eval((w - x) / h))
            .sum();
        sum / (self.sorted.len() as f64 * h)
    }

    pub fn evaluate_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.evaluate(x)).collect()
    }
}

/// `f̂_n(x)` for a fit.
pub fn kde_evaluate(fit: &KdeFit, x: f64) -> f64 {
    fit.evaluate(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::KernelSpec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn naive(sample: &[f64], k: KernelSpec, h: f64, x: f64) -> f64 {
        let mut acc = 0.0;
        for &w in sample {
            acc += k.eval((w - x) / h) / h;
        }
        acc / sample.len() as f64
    }

    fn trapezoid_mass(fit: &KdeFit) -> f64 {
        let h = fit.bandwidth();
        let (lo, hi) = (fit.min() - 10.0 * h, fit.max() + 10.0 * h);
        let m = 4096;
        let dx = (hi - lo) / (m - 1) as f64;
        (0..m)
            .map(|i| {
                let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
                w * fit.evaluate(lo + i as f64 * dx)
            })
            .sum::<f64>()
            * dx
    }

    #[test]
    fn single_point_at_site() {
        let fit = KdeFit::new(vec![0.0].into(), KernelSpec::gaussian(), 1.0).unwrap();
        assert_abs_diff_eq!(kde_evaluate(&fit, 0.0), 0.398_942_280_401_432_7, epsilon = 1e-15);
    }

    #[test]
    fn two_points_symmetric() {
        let fit = KdeFit::new(vec![-1.0, 1.0].into(), KernelSpec::gaussian(), 1.0).unwrap();
        let expected = 0.5 * 2.0 * 0.241_970_724_519_143_35;
        assert_abs_diff_eq!(fit.evaluate(0.0), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(fit.evaluate(0.0), naive(&[-1.0, 1.0], KernelSpec::gaussian(), 1.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn rejects_empty_sample_and_bad_bandwidth() {
        let err = KdeFit::new(Sample::new(vec![]), KernelSpec::gaussian(), 1.0).unwrap_err();
        assert_eq!(err, Error::EmptySample);
        assert!(err.to_string().contains("empty sample"));
        assert!(KdeFit::new(vec![1.0].into(), KernelSpec::gaussian(), 0.0).is_err());
        assert!(KdeFit::new(vec![1.0].into(), KernelSpec::gaussian(), f64::NAN).is_err());
    }

    #[test]
    fn far_tail_underflows_to_zero() {
        let fit = KdeFit::new(vec![0.0].into(), KernelSpec::gaussian(), 0.1).unwrap();
        assert_eq!(fit.evaluate(100.0), 0.0);
    }

    fn kernels() -> impl Strategy<Value = KernelSpec> {
        prop_oneof![
            Just(KernelSpec::gaussian()),
            Just(KernelSpec::epanechnikov()),
            Just(KernelSpec::uniform()),
        ]
    }

    proptest! {
        #[test]
        fn matches_naive_double_loop(
            pts in prop::collection::vec(-5.0f64..5.0, 1..=20),
            k in kernels(),
            h in 0.05f64..3.0,
            xs in prop::collection::vec(-8.0f64..8.0, 1..10),
        ) {
            let fit = KdeFit::new(pts.clone().into(), k, h).unwrap();
            for x in xs {
                prop_assert!((fit.evaluate(x) - naive(&pts, k, h, x)).abs() <= 1e-12);
            }
        }

        #[test]
        fn nonnegative_and_normalised(
            pts in prop::collection::vec(-5.0f64..5.0, 1..60),
            h in 0.1f64..2.0,
            k in kernels(),
        ) {
            let fit = KdeFit::new(pts.into(), k, h).unwrap();
            let lo = fit.min() - 10.0 * h;
            let hi = fit.max() + 10.0 * h;
            for i in 0..200 {
                let x = lo + (hi - lo) * i as f64 / 199.0;
                prop_assert!(fit.evaluate(x) >= 0.0);
            }
            if k == KernelSpec::gaussian() {
                prop_assert!((trapezoid_mass(&fit) - 1.0).abs() <= 1e-4);
            }
        }

        #[test]
        fn location_equivariant(
            pts in prop::collection::vec(-5.0f64..5.0, 1..30),
            h in 0.1f64..2.0,
            c in -10.0f64..10.0,
            x in -6.0f64..6.0,
        ) {
            let fit = KdeFit::new(pts.clone().into(), KernelSpec::gaussian(), h).unwrap();
            let shifted: Vec<f64> = pts.iter().map(|w| w + c).collect();
            let fit_c = KdeFit::new(shifted.into(), KernelSpec::gaussian(), h).unwrap();
            prop_assert!((fit_c.evaluate(x + c) - fit.evaluate(x)).abs() <= 1e-12);
        }
    }
}
