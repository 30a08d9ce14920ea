use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{replication_seed, ExperimentConfig, MixtureDgp};
use crate::inference::{model_select, Decision, SelectionResult};
use crate::{Error, Result};

/// One replication's selection result and the seed that reproduces its sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicationOutcome {
    pub replication: usize,
    pub seed: u64,
    pub result: SelectionResult,
}

/// Aggregate over the replications at one sample size. Percentages are on
/// a 0–100 scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub mean_d1: f64,
    pub mean_d2: f64,
    pub mean_di: f64,
    pub pct_model1: f64,
    pub pct_indecisive: f64,
    pub pct_model2: f64,
}

/// Runs every replication at sample size `n`, in replication order.
pub fn run_replications(cfg: &ExperimentConfig, n: usize) -> Result<Vec<ReplicationOutcome>> {
    cfg.validate()?;
    let dgp = MixtureDgp::new(cfg.pi, cfg.wide_component.variance())?;
    let outcomes: Vec<Result<ReplicationOutcome>> = (0..cfg.replications)
        .into_par_iter()
        .map(|r| {
            let seed = replication_seed(cfg.seed, n, r);
            let fail = |e: Error| Error::ReplicationFailed {
                n,
                replication: r,
                seed,
                source: Box::new(e),
            };
            let sample = dgp.sample(n, seed);
            let h = cfg.bandwidth_rule.select(&sample).map_err(fail)?;
            let result = model_select(&sample, &cfg.model1, &cfg.model2, cfg.order_alpha, cfg.level, cfg.kernel, h)
                .map_err(fail)?;
            Ok(ReplicationOutcome {
                replication: r,
                seed,
                result,
            })
        })
        .collect();
    outcomes.into_iter().collect()
}

pub fn aggregate(n: usize, outcomes: &[ReplicationOutcome]) -> TableRow {
    let k = outcomes.len() as f64;
    let mean = |f: fn(&SelectionResult) -> f64| outcomes.iter().map(|o| f(&o.result)).sum::<f64>() / k;
    let pct = |d: Decision| outcomes.iter().filter(|o| o.result.decision == d).count() as f64 * 100.0 / k;
    TableRow {
        n,
        mean_d1: mean(|r| r.d1),
        mean_d2: mean(|r| r.d2),
        mean_di: mean(|r| r.di_raw),
        pct_model1: pct(Decision::Model1),
        pct_indecisive: pct(Decision::Indecisive),
        pct_model2: pct(Decision::Model2),
    }
}

/// One [`TableRow`] per configured sample size.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TableRow>> {
    cfg.validate()?;
    cfg.sample_sizes
        .iter()
        .map(|&n| {
            log::info!("n = {n}: {} replications", cfg.replications);
            run_replications(cfg, n).map(|o| aggregate(n, &o))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(pi: f64) -> ExperimentConfig {
        ExperimentConfig {
            pi,
            sample_sizes: vec![50, 200],
            replications: 20,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn percentages_close_to_100() {
        for pi in [0.0, 0.43, 1.0] {
            for row in run_experiment(&small(pi)).unwrap() {
                let total = row.pct_model1 + row.pct_indecisive + row.pct_model2;
                assert!((total - 100.0).abs() <= 0.01, "{row:?}");
            }
        }
    }

    #[test]
    fn deterministic_and_ordered() {
        let cfg = small(0.43);
        let a = run_replications(&cfg, 80).unwrap();
        let b = run_replications(&cfg, 80).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().enumerate().all(|(i, o)| o.replication == i));
        assert_eq!(a[3].seed, replication_seed(cfg.seed, 80, 3));
    }
}
