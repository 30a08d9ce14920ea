use serde::{Deserialize, Serialize};

use crate::density::{BandwidthRule, KernelSpec};
use crate::divergence::{DensityModel, DivergenceOrder};
use crate::{Error, Result};

/// Default sample-size grid.
pub const DEFAULT_SAMPLE_SIZES: [usize; 7] = [20, 100, 300, 500, 1000, 1500, 2000];

pub const DEFAULT_REPLICATIONS: usize = 1000;

/// Replications of the `--desk` preset.
pub const DESK_REPLICATIONS: usize = 200;

pub const DEFAULT_SEED: u64 = 20_130_901;

/// How the wide component "N(0,2)" is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WideComponent {
    /// Variance 2.
    #[default]
    Variance,
    /// Standard deviation 2, i.e. variance 4.
    StdDev,
}

impl WideComponent {
    pub fn variance(self) -> f64 {
        match self {
            WideComponent::Variance => 2.0,
            WideComponent::StdDev => 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// Weight π of N(0,1) in the mixture.
    pub pi: f64,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub order_alpha: DivergenceOrder,
    /// Significance level of the selection test.
    pub level: f64,
    pub kernel: KernelSpec,
    pub bandwidth_rule: BandwidthRule,
    pub seed: u64,
    pub model1: DensityModel,
    pub model2: DensityModel,
    pub wide_component: WideComponent,
}

/// On-disk form; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    pi: Option<f64>,
    sample_sizes: Option<Vec<usize>>,
    replications: Option<usize>,
    order_alpha: Option<f64>,
    #[serde(default)]
    allow_unchecked_order: bool,
    level: Option<f64>,
    kernel: Option<KernelSpec>,
    bandwidth_rule: Option<BandwidthRule>,
    seed: Option<u64>,
    model1: Option<DensityModel>,
    model2: Option<DensityModel>,
    wide_component: Option<WideComponent>,
    #[serde(default)]
    desk: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::with_wide_component(WideComponent::Variance)
    }
}

impl ExperimentConfig {
    fn with_wide_component(wide: WideComponent) -> Self {
        Self {
            pi: 1.0,
            sample_sizes: DEFAULT_SAMPLE_SIZES.to_vec(),
            replications: DEFAULT_REPLICATIONS,
            order_alpha: DivergenceOrder::HALF,
            level: 0.05,
            kernel: KernelSpec::gaussian(),
            bandwidth_rule: BandwidthRule::Silverman,
            seed: DEFAULT_SEED,
            model1: DensityModel::gaussian(0.0, 1.0).expect("valid"),
            model2: DensityModel::gaussian(0.0, wide.variance()).expect("valid"),
            wide_component: wide,
        }
    }

    /// Default settings with 200 replications.
    pub fn desk() -> Self {
        Self {
            replications: DESK_REPLICATIONS,
            ..Self::default()
        }
    }

    /// Parses a JSON config. Missing fields take their defaults; the
    /// default `model2` follows `wide_component`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(s).map_err(|e| Error::invalid("config", e.to_string()))?;
        let wide = file.wide_component.unwrap_or_default();
        let mut cfg = Self::with_wide_component(wide);
        if file.desk {
            cfg.replications = DESK_REPLICATIONS;
        }
        if let Some(v) = file.pi {
            cfg.pi = v;
        }
        if let Some(v) = file.sample_sizes {
            cfg.sample_sizes = v;
        }
        if let Some(v) = file.replications {
            cfg.replications = v;
        }
        if let Some(a) = file.order_alpha {
            cfg.order_alpha = if file.allow_unchecked_order {
                DivergenceOrder::new_unchecked(a)?
            } else {
                DivergenceOrder::new(a)?
            };
        }
        if let Some(v) = file.level {
            cfg.level = v;
        }
        if let Some(v) = file.kernel {
            cfg.kernel = v;
        }
        if let Some(v) = file.bandwidth_rule {
            cfg.bandwidth_rule = v;
        }
        if let Some(v) = file.seed {
            cfg.seed = v;
        }
        if let Some(v) = file.model1 {
            cfg.model1 = v;
        }
        if let Some(v) = file.model2 {
            cfg.model2 = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.pi) {
            return Err(Error::invalid("pi", format!("{} outside [0, 1]", self.pi)));
        }
        if self.sample_sizes.is_empty() {
            return Err(Error::invalid("sample_sizes", "empty"));
        }
        if let Some(&n) = self.sample_sizes.iter().find(|&&n| n < 2) {
            return Err(Error::invalid("sample_sizes", format!("size {n} is below 2")));
        }
        if self.replications == 0 {
            return Err(Error::invalid("replications", "must be at least 1"));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::invalid("level", format!("{} outside (0, 1)", self.level)));
        }
        if let BandwidthRule::Fixed(h) = self.bandwidth_rule {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::invalid("bandwidth_rule", format!("fixed bandwidth {h} must be positive")));
            }
        }
        if matches!(self.model1, DensityModel::Kde(_)) || matches!(self.model2, DensityModel::Kde(_)) {
            return Err(Error::invalid("model", "candidate models must be closed-form"));
        }
        self.model1.validate()?;
        self.model2.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_json_gives_defaults() {
        assert_eq!(ExperimentConfig::from_json_str("{}").unwrap(), ExperimentConfig::default());
        assert_eq!(ExperimentConfig::from_json_str(r#"{"desk": true}"#).unwrap().replications, 200);
    }

    #[test]
    fn std_dev_reading_changes_default_model2() {
        let cfg = ExperimentConfig::from_json_str(r#"{"wide_component": "std_dev"}"#).unwrap();
        assert_eq!(cfg.model2, DensityModel::gaussian(0.0, 4.0).unwrap());
    }

    #[test]
    fn full_config() {
        let cfg = ExperimentConfig::from_json_str(
            r#"{
                "pi": 0.43, "sample_sizes": [100, 500], "replications": 10,
                "order_alpha": 0.25, "level": 0.1, "kernel": "epanechnikov",
                "bandwidth_rule": {"fixed": 0.3}, "seed": 5,
                "model1": {"family": "ar1_m1", "sigma2": 1.0},
                "model2": {"family": "ar1_m2", "sigma2": 1.0, "phi": 0.0}
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.pi, 0.43);
        assert_eq!(cfg.kernel, KernelSpec::epanechnikov());
        assert_eq!(cfg.bandwidth_rule, BandwidthRule::Fixed(0.3));
        assert_eq!(cfg.order_alpha.alpha(), 0.25);
    }

    #[test]
    fn invalid_configs() {
        for bad in [
            r#"{"pi": 1.5}"#,
            r#"{"sample_sizes": [1]}"#,
            r#"{"sample_sizes": []}"#,
            r#"{"replications": 0}"#,
            r#"{"level": 0}"#,
            r#"{"order_alpha": 1.5}"#,
            r#"{"bandwidth_rule": {"fixed": -1}}"#,
            r#"{"model2": {"family": "ar1_m2", "sigma2": 1.0, "phi": 1.0}}"#,
            r#"{"unknown": 1}"#,
        ] {
            assert!(ExperimentConfig::from_json_str(bad).is_err(), "{bad}");
        }
        let cfg = ExperimentConfig::from_json_str(r#"{"order_alpha": 1.5, "allow_unchecked_order": true}"#).unwrap();
        assert_eq!(cfg.order_alpha.alpha(), 1.5);
    }
}
