use std::io::Write;

use super::{format_sig6, replication_seed, ExperimentConfig, MixtureDgp};
use crate::density::KdeFit;
use crate::inference::model_select;
use crate::Result;

pub const HISTOGRAM_BINS: usize = 40;
pub const CURVE_POINTS: usize = 512;

/// Plot data for one sample of size `n` drawn from the configured mixture.
///
/// The output is three CSV blocks separated by blank lines, each introduced
/// by a `# <name>` line and its own header:
///
/// * `histogram`: `bin_lo,bin_hi,count,density` over the sample range;
/// * `curves`: `x,f1,f2,kde` on a 512-point grid;
/// * `series`: `n,d1,d2,di,decision`, one row per configured sample size,
///   each from a single seeded sample.
pub fn emit_figure_data(cfg: &ExperimentConfig, n: usize) -> Result<Vec<u8>> {
    cfg.validate()?;
    let dgp = MixtureDgp::new(cfg.pi, cfg.wide_component.variance())?;
    let sample = dgp.sample(n, replication_seed(cfg.seed, n, 0));
    let mut out = Vec::new();

    // histogram
    let (lo, hi) = (sample.min(), sample.max());
    let width = ((hi - lo) / HISTOGRAM_BINS as f64).max(f64::MIN_POSITIVE);
    let mut counts = [0usize; HISTOGRAM_BINS];
    for &v in sample.values() {
        let b = (((v - lo) / width) as usize).min(HISTOGRAM_BINS - 1);
        counts[b] += 1;
    }
    writeln!(out, "# histogram\nbin_lo,bin_hi,count,density").expect("write to Vec");
    for (i, c) in counts.iter().enumerate() {
        let a = lo + i as f64 * width;
        writeln!(
            out,
            "{},{},{},{}",
            format_sig6(a),
            format_sig6(a + width),
            c,
            format_sig6(*c as f64 / (n as f64 * width))
        )
        .expect("write to Vec");
    }

    // curves
    let h = cfg.bandwidth_rule.select(&sample)?;
    let kde = KdeFit::new(sample.clone(), cfg.kernel, h)?;
    let bound = (4.0 * cfg.wide_component.variance().sqrt()).max(lo.abs()).max(hi.abs());
    writeln!(out, "\n# curves\nx,f1,f2,kde").expect("write to Vec");
    for i in 0..CURVE_POINTS {
        let x = -bound + 2.0 * bound * i as f64 / (CURVE_POINTS - 1) as f64;
        writeln!(
            out,
            "{},{},{},{}",
            format_sig6(x),
            format_sig6(cfg.model1.density(x)),
            format_sig6(cfg.model2.density(x)),
            format_sig6(kde.evaluate(x))
        )
        .expect("write to Vec");
    }

    // series
    writeln!(out, "\n# series\nn,d1,d2,di,decision").expect("write to Vec");
    for &m in &cfg.sample_sizes {
        let s = dgp.sample(m, replication_seed(cfg.seed, m, 0));
        let h = cfg.bandwidth_rule.select(&s)?;
        let r = model_select(&s, &cfg.model1, &cfg.model2, cfg.order_alpha, cfg.level, cfg.kernel, h)?;
        let decision = serde_json::to_value(r.decision).expect("enum");
        writeln!(
            out,
            "{},{},{},{},{}",
            m,
            format_sig6(r.d1),
            format_sig6(r.d2),
            format_sig6(r.di_raw),
            decision.as_str().expect("string")
        )
        .expect("write to Vec");
    }
    Ok(out)
}
