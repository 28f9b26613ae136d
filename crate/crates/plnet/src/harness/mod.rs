//! Replicated sweep orchestration: generate graphs, fail them, census the
//! wreckage, aggregate across seeds, and join with analytic predictions.
//!
//! Replicates (and grid cells) run in parallel on the rayon pool; results
//! are joined in deterministic grid order, so output bytes never depend on
//! scheduling. All randomness flows from `base_seed` through
//! [`Seed::derive`], making whole sweeps reproducible bit for bit.

mod csvout;

pub use csvout::{
    fmt_sig10, write_critical_csv, write_dist_csv, write_giant_fraction_csv, write_meta,
    write_sweep_csv, RunMeta,
};

use crate::analytic::{
    self, critical_failure_rate, predict, surviving_degree_count, PlnParams, SurvivorPrediction,
    BETA0, POLE_EPS,
};
use crate::error::{Error, Result};
use crate::failsim::{census_components, draw_failure_mask, giant_decay_ratio, ComponentCensus};
use crate::graphgen::{build_configuration_multigraph, synthesize_histogram, HistogramMode};
use crate::seed::Seed;
use rayon::prelude::*;

/// Experimental protocol for one sweep over a `(beta, p)` grid.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub betas: Vec<f64>,
    /// Failure probabilities, each at most [`analytic::P_CAP`].
    pub p_values: Vec<f64>,
    /// Target node count; alpha is chosen per beta to hit it.
    pub target_nodes: u64,
    pub replicates: u32,
    pub base_seed: Seed,
    pub histogram_mode: HistogramMode,
}

impl SweepConfig {
    pub fn new(betas: Vec<f64>, p_values: Vec<f64>, target_nodes: u64, base_seed: Seed) -> Self {
        SweepConfig {
            betas,
            p_values,
            target_nodes,
            replicates: 20,
            base_seed,
            histogram_mode: HistogramMode::Deterministic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates < 1 {
            return Err(Error::Domain("replicates must be >= 1".into()));
        }
        if self.betas.is_empty() || self.p_values.is_empty() {
            return Err(Error::Domain("sweep needs at least one beta and one p".into()));
        }
        for &b in &self.betas {
            if !b.is_finite() || b <= 1.0 + POLE_EPS {
                return Err(Error::Domain(format!("sweep beta must exceed 1, got {b}")));
            }
        }
        for &p in &self.p_values {
            if !(0.0..=analytic::P_CAP).contains(&p) {
                return Err(Error::Domain(format!(
                    "sweep p must lie in [0, {}], got {p}",
                    analytic::P_CAP
                )));
            }
        }
        Ok(())
    }
}

/// One row of the joined empirical/analytic sweep table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub beta: f64,
    pub alpha: f64,
    pub p: f64,
    pub num_vertices_mean: f64,
    pub giant_size_mean: f64,
    pub giant_size_std: f64,
    pub second_size_mean: f64,
    pub second_size_std: f64,
    pub orphan_count_mean: f64,
    pub orphan_count_std: f64,
    pub survivors_outside_giant_mean: f64,
    pub survivors_outside_giant_std: f64,
    pub total_survivors_mean: f64,
    pub total_survivors_std: f64,
    pub giant_decay_ratio_mean: f64,
    pub giant_decay_ratio_std: f64,
    pub beta_prime: f64,
    pub alpha_prime: f64,
    pub expected_orphans: f64,
    pub expected_survivors: f64,
    pub has_giant: bool,
    /// Critical failure rate for this beta; `None` outside `(2, BETA0)` or
    /// when the threshold lies beyond the p = 0.99 cap.
    pub p_critical: Option<f64>,
}

/// Per-replicate observables, retained by [`run_sweep_detailed`] so
/// aggregate statistics can be audited.
#[derive(Debug, Clone)]
pub struct ReplicateOutcome {
    pub beta: f64,
    pub p: f64,
    pub replicate: u32,
    pub num_vertices: u64,
    pub failed_count: u64,
    pub intact_giant: u64,
    pub census: ComponentCensus,
    pub decay_ratio: f64,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn run_replicate(
    config: &SweepConfig,
    params: &PlnParams,
    bi: usize,
    pi: usize,
    ri: u32,
) -> Result<ReplicateOutcome> {
    let p = config.p_values[pi];
    let tag = [bi as u64, pi as u64, ri as u64];
    let hist_seed = config.base_seed.derive(&[tag[0], tag[1], tag[2], 0]);
    let build_seed = config.base_seed.derive(&[tag[0], tag[1], tag[2], 1]);
    let mask_seed = config.base_seed.derive(&[tag[0], tag[1], tag[2], 2]);

    let hist = synthesize_histogram(params, config.histogram_mode, hist_seed);
    let graph = build_configuration_multigraph(&hist, build_seed)?;
    let n = graph.num_vertices() as u64;
    let before = census_components(&graph, None)?;
    let mask = draw_failure_mask(graph.num_vertices(), p, mask_seed)?;
    let after = census_components(&graph, Some(&mask))?;

    // Exact conservation, enforced on every run: failed + orphans +
    // degree>=1 survivors must account for every vertex.
    let degree_ge1 = after.total_survivors - after.orphan_count;
    if mask.failed_count() + after.orphan_count + degree_ge1 != n {
        return Err(Error::Invariant(format!(
            "conservation broke at beta={}, p={p}, replicate {ri}: {} failed + {} orphans + \
             {degree_ge1} connected survivors != {n} vertices",
            params.beta(),
            mask.failed_count(),
            after.orphan_count
        )));
    }
    let hist_total: u64 = after.surviving_degree_histogram.values().sum();
    if hist_total != after.total_survivors
        || after.giant_size + after.survivors_outside_giant != after.total_survivors
    {
        return Err(Error::Invariant(format!(
            "census bookkeeping inconsistent at beta={}, p={p}, replicate {ri}",
            params.beta()
        )));
    }

    let decay_ratio = giant_decay_ratio(&before, &after)?;
    Ok(ReplicateOutcome {
        beta: params.beta(),
        p,
        replicate: ri,
        num_vertices: n,
        failed_count: mask.failed_count(),
        intact_giant: before.giant_size,
        census: after,
        decay_ratio,
    })
}

/// Run the sweep and keep every per-replicate outcome alongside the
/// aggregated records (grid order: beta major, p minor, replicate last).
pub fn run_sweep_detailed(config: &SweepConfig) -> Result<(Vec<SweepRecord>, Vec<ReplicateOutcome>)> {
    config.validate()?;
    struct BetaCtx {
        params: PlnParams,
        p_critical: Option<f64>,
        predictions: Vec<SurvivorPrediction>,
    }
    let contexts: Vec<BetaCtx> = config
        .betas
        .iter()
        .map(|&beta| {
            let params = PlnParams::for_size(beta, config.target_nodes)?;
            // p_critical is a per-beta annotation. It is absent outside
            // (2, beta0), when the threshold lies beyond the p = 0.99 cap,
            // and at scales where beta' peaks below beta0 and turns back
            // down (small graphs), where no sound bisection exists. The
            // sweep itself must traverse such grids; direct callers of
            // critical_failure_rate still get the hard error.
            let p_critical = if beta > 2.0 && beta < BETA0 {
                critical_failure_rate(&params).ok()
            } else {
                None
            };
            let predictions = config
                .p_values
                .iter()
                .map(|&p| predict(&params, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(BetaCtx {
                params,
                p_critical,
                predictions,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut tasks = Vec::with_capacity(config.betas.len() * config.p_values.len() * config.replicates as usize);
    for bi in 0..config.betas.len() {
        for pi in 0..config.p_values.len() {
            for ri in 0..config.replicates {
                tasks.push((bi, pi, ri));
            }
        }
    }
    let outcomes: Vec<ReplicateOutcome> = tasks
        .par_iter()
        .map(|&(bi, pi, ri)| run_replicate(config, &contexts[bi].params, bi, pi, ri))
        .collect::<Result<Vec<_>>>()?;

    let reps = config.replicates as usize;
    let mut records = Vec::with_capacity(config.betas.len() * config.p_values.len());
    for (bi, ctx) in contexts.iter().enumerate() {
        for (pi, &p) in config.p_values.iter().enumerate() {
            let cell = &outcomes[(bi * config.p_values.len() + pi) * reps..][..reps];
            let pred = &ctx.predictions[pi];
            let collect = |f: &dyn Fn(&ReplicateOutcome) -> f64| -> Vec<f64> {
                cell.iter().map(f).collect()
            };
            let (giant_m, giant_s) = mean_std(&collect(&|o| o.census.giant_size as f64));
            let (second_m, second_s) = mean_std(&collect(&|o| o.census.second_size as f64));
            let (orph_m, orph_s) = mean_std(&collect(&|o| o.census.orphan_count as f64));
            let (out_m, out_s) = mean_std(&collect(&|o| o.census.survivors_outside_giant as f64));
            let (tot_m, tot_s) = mean_std(&collect(&|o| o.census.total_survivors as f64));
            let (decay_m, decay_s) = mean_std(&collect(&|o| o.decay_ratio));
            let (nv_m, _) = mean_std(&collect(&|o| o.num_vertices as f64));
            records.push(SweepRecord {
                beta: ctx.params.beta(),
                alpha: ctx.params.alpha(),
                p,
                num_vertices_mean: nv_m,
                giant_size_mean: giant_m,
                giant_size_std: giant_s,
                second_size_mean: second_m,
                second_size_std: second_s,
                orphan_count_mean: orph_m,
                orphan_count_std: orph_s,
                survivors_outside_giant_mean: out_m,
                survivors_outside_giant_std: out_s,
                total_survivors_mean: tot_m,
                total_survivors_std: tot_s,
                giant_decay_ratio_mean: decay_m,
                giant_decay_ratio_std: decay_s,
                beta_prime: pred.beta_prime,
                alpha_prime: pred.alpha_prime,
                expected_orphans: pred.expected_orphans,
                expected_survivors: pred.expected_survivors,
                has_giant: pred.has_giant,
                p_critical: ctx.p_critical,
            });
        }
    }
    Ok((records, outcomes))
}

/// Aggregated sweep over the `(beta, p)` grid; see [`run_sweep_detailed`]
/// for the replicate-level view.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    run_sweep_detailed(config).map(|(records, _)| records)
}

/// One row of the surviving-degree-distribution table.
#[derive(Debug, Clone, PartialEq)]
pub struct DistRow {
    pub p: f64,
    pub k: u32,
    pub analytic_count: f64,
    pub empirical_count: u64,
}

/// Surviving degree distribution, one seeded graph per failure rate,
/// paired with the analytic expectation `c(G', k)`. Zero-count tail rows
/// (beyond the last degree with either an observed node or an expected
/// count of at least 0.5) are omitted.
pub fn surviving_distribution_table(
    params: &PlnParams,
    p_values: &[f64],
    seed: Seed,
) -> Result<Vec<DistRow>> {
    for &p in p_values {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "surviving distribution requires 0 <= p < 1, got {p}"
            )));
        }
    }
    let hist = synthesize_histogram(params, HistogramMode::Deterministic, seed);
    let mut rows = Vec::new();
    for (pi, &p) in p_values.iter().enumerate() {
        let build_seed = seed.derive(&[pi as u64, 0]);
        let mask_seed = seed.derive(&[pi as u64, 1]);
        let graph = build_configuration_multigraph(&hist, build_seed)?;
        let mask = draw_failure_mask(graph.num_vertices(), p, mask_seed)?;
        let census = census_components(&graph, Some(&mask))?;
        let mut cell = Vec::new();
        let mut last_nonzero = 0usize;
        for k in 0..=params.max_degree() {
            let analytic = surviving_degree_count(params, p, k)?;
            let empirical = census
                .surviving_degree_histogram
                .get(&k)
                .copied()
                .unwrap_or(0);
            if empirical > 0 || analytic >= 0.5 {
                last_nonzero = cell.len();
            }
            cell.push(DistRow {
                p,
                k,
                analytic_count: analytic,
                empirical_count: empirical,
            });
        }
        cell.truncate(last_nonzero + 1);
        rows.extend(cell);
    }
    Ok(rows)
}

/// `(beta, p_critical)` rows over a strictly increasing beta range;
/// the computed curve must be strictly decreasing (checked).
pub fn critical_curve_table(betas: &[f64], target_nodes: u64) -> Result<Vec<(f64, f64)>> {
    if betas.is_empty() {
        return Err(Error::Domain("critical curve needs at least one beta".into()));
    }
    for pair in betas.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Domain(
                "critical curve betas must be strictly increasing".into(),
            ));
        }
    }
    for &b in betas {
        if b <= 2.0 || b >= BETA0 {
            return Err(Error::Domain(format!(
                "critical curve is defined for 2 < beta < {BETA0}, got {b}"
            )));
        }
    }
    let rows: Vec<(f64, f64)> = betas
        .par_iter()
        .map(|&beta| {
            let params = PlnParams::for_size(beta, target_nodes)?;
            Ok((beta, critical_failure_rate(&params)?))
        })
        .collect::<Result<Vec<_>>>()?;
    for pair in rows.windows(2) {
        if pair[1].1 >= pair[0].1 {
            return Err(Error::Invariant(format!(
                "critical curve not strictly decreasing: p_c({}) = {} vs p_c({}) = {}",
                pair[0].0, pair[0].1, pair[1].0, pair[1].1
            )));
        }
    }
    Ok(rows)
}

/// One row of the intact giant-component-fraction table.
#[derive(Debug, Clone, PartialEq)]
pub struct GiantFractionRow {
    pub beta: f64,
    pub mean_fraction: f64,
    pub std: f64,
}

/// Fraction of nodes in the giant component of intact graphs, replicated
/// per beta over `2 <= beta < BETA0`.
pub fn intact_giant_fraction_table(
    betas: &[f64],
    target_nodes: u64,
    replicates: u32,
    seed: Seed,
) -> Result<Vec<GiantFractionRow>> {
    if replicates < 1 {
        return Err(Error::Domain("replicates must be >= 1".into()));
    }
    for &b in betas {
        if !(2.0..BETA0).contains(&b) {
            return Err(Error::Domain(format!(
                "intact giant fractions are tabulated for 2 <= beta < {BETA0}, got {b}"
            )));
        }
    }
    let mut tasks = Vec::new();
    for (bi, &beta) in betas.iter().enumerate() {
        for r in 0..replicates {
            tasks.push((bi, beta, r));
        }
    }
    let fractions: Vec<(usize, f64)> = tasks
        .par_iter()
        .map(|&(bi, beta, r)| {
            let params = PlnParams::for_size(beta, target_nodes)?;
            let hist = synthesize_histogram(&params, HistogramMode::Deterministic, seed);
            let graph =
                build_configuration_multigraph(&hist, seed.derive(&[bi as u64, r as u64]))?;
            let census = census_components(&graph, None)?;
            Ok((bi, census.giant_size as f64 / graph.num_vertices() as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(betas.len());
    for (bi, &beta) in betas.iter().enumerate() {
        let xs: Vec<f64> = fractions
            .iter()
            .filter(|(i, _)| *i == bi)
            .map(|&(_, f)| f)
            .collect();
        let (mean, std) = mean_std(&xs);
        rows.push(GiantFractionRow {
            beta,
            mean_fraction: mean,
            std,
        });
    }
    Ok(rows)
}
