//! Resilience of finite power-law networks (PLNs) to independent random
//! node failures.
//!
//! A PLN is a graph with minimum degree 1 whose expected number of
//! degree-`k` nodes is `e^alpha * k^(-beta)`. This crate answers two
//! questions about such networks when every node fails independently with
//! probability `p`:
//!
//! * analytically — what are the power-law parameters `(alpha', beta')` of
//!   the surviving graph, how many orphans and survivors are expected, and
//!   at which failure rate does the giant component dissolve
//!   ([`analytic`]);
//! * empirically — generate configuration-model multigraphs from the same
//!   degree distribution, delete nodes, and census the surviving
//!   components ([`graphgen`], [`failsim`], [`harness`]).
//!
//! The [`harness`] module runs replicated sweeps over `(beta, p)` grids and
//! emits figure-ready CSV tables joining both sides.

pub mod analytic;
pub mod error;
pub mod failsim;
pub mod graphgen;
pub mod harness;
pub mod seed;

pub use analytic::{
    alpha_for_size, chi, critical_failure_rate, giant_fraction_beta2, predict,
    self_arc_probability, surviving_degree_count, xi, zeta, zeta_inverse, PlnParams,
    SurvivorPrediction, BETA0,
};
pub use error::{Error, Result};
pub use failsim::{census_components, draw_failure_mask, giant_decay_ratio, ComponentCensus, FailureMask};
pub use graphgen::{
    build_configuration_multigraph, count_self_and_parallel, synthesize_histogram,
    DegreeHistogram, HistogramMode, Multigraph,
};
pub use harness::{
    critical_curve_table, intact_giant_fraction_table, run_sweep, run_sweep_detailed,
    surviving_distribution_table, SweepConfig, SweepRecord,
};
pub use seed::Seed;
