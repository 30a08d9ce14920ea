use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::divergence::DensityModel;
use crate::{Error, Provenance, Result, Sample};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `replication` at sample size `n`.
pub fn replication_seed(master: u64, n: usize, replication: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ n as u64) ^ replication as u64)
}

/// `π·N(0,1) + (1−π)·N(0, wide_variance)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureDgp {
    pub pi: f64,
    pub wide_variance: f64,
}

impl MixtureDgp {
    pub fn new(pi: f64, wide_variance: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&pi) {
            return Err(Error::invalid("pi", format!("{pi} outside [0, 1]")));
        }
        if !(wide_variance.is_finite() && wide_variance > 0.0) {
            return Err(Error::invalid("wide_variance", format!("{wide_variance} must be positive")));
        }
        Ok(Self { pi, wide_variance })
    }

    pub fn sample(&self, n: usize, seed: u64) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let wide_sd = self.wide_variance.sqrt();
        let values = (0..n)
            .map(|_| {
                let narrow = rng.gen::<f64>() < self.pi;
                let z: f64 = rng.sample(StandardNormal);
                if narrow {
                    z
                } else {
                    wide_sd * z
                }
            })
            .collect();
        Sample::with_provenance(
            values,
            Provenance {
                seed: Some(seed),
                dgp: format!("mixture(pi={}, wide_variance={})", self.pi, self.wide_variance),
            },
        )
    }

    pub fn density(&self) -> DensityModel {
        DensityModel::mixture(
            self.pi,
            DensityModel::gaussian(0.0, 1.0).expect("valid"),
            DensityModel::gaussian(0.0, self.wide_variance).expect("valid"),
        )
        .expect("validated weight")
    }

    pub fn variance(&self) -> f64 {
        self.pi + (1.0 - self.pi) * self.wide_variance
    }
}

/// `n` draws from `π·N(0,1) + (1−π)·N(0,2)`.
pub fn sample_mixture(pi: f64, n: usize, seed: u64) -> Result<Sample> {
    Ok(MixtureDgp::new(pi, 2.0)?.sample(n, seed))
}
