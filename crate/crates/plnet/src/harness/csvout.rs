//! CSV and metadata-sidecar writers.
//!
//! Floats are printed with 10 significant digits, row order follows the
//! grid (beta major, p minor, k innermost), and nothing here reads clocks
//! or global state, so identical inputs produce identical bytes.

use super::{DistRow, GiantFractionRow, SweepRecord};
use crate::seed::{Seed, GENERATOR_ID};
use std::io::{self, Write};

/// Format with 10 significant digits, C `%.10g` style: fixed point for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig10(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.9e}");
        match s.split_once('e') {
            Some((mantissa, exponent)) => {
                format!("{}e{}", trim_fraction(mantissa.to_string()), exponent)
            }
            None => s,
        }
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig10).unwrap_or_default()
}

pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    writeln!(
        w,
        "beta,alpha,p,num_vertices_mean,giant_size_mean,giant_size_std,second_size_mean,\
         second_size_std,orphan_count_mean,orphan_count_std,survivors_outside_giant_mean,\
         survivors_outside_giant_std,total_survivors_mean,total_survivors_std,\
         giant_decay_ratio_mean,giant_decay_ratio_std,beta_prime,alpha_prime,\
         expected_orphans,expected_survivors,has_giant,p_critical"
    )?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_sig10(r.beta),
            fmt_sig10(r.alpha),
            fmt_sig10(r.p),
            fmt_sig10(r.num_vertices_mean),
            fmt_sig10(r.giant_size_mean),
            fmt_sig10(r.giant_size_std),
            fmt_sig10(r.second_size_mean),
            fmt_sig10(r.second_size_std),
            fmt_sig10(r.orphan_count_mean),
            fmt_sig10(r.orphan_count_std),
            fmt_sig10(r.survivors_outside_giant_mean),
            fmt_sig10(r.survivors_outside_giant_std),
            fmt_sig10(r.total_survivors_mean),
            fmt_sig10(r.total_survivors_std),
            fmt_sig10(r.giant_decay_ratio_mean),
            fmt_sig10(r.giant_decay_ratio_std),
            fmt_sig10(r.beta_prime),
            fmt_sig10(r.alpha_prime),
            fmt_sig10(r.expected_orphans),
            fmt_sig10(r.expected_survivors),
            r.has_giant,
            opt(r.p_critical),
        )?;
    }
    Ok(())
}

pub fn write_dist_csv<W: Write>(rows: &[DistRow], mut w: W) -> io::Result<()> {
    writeln!(w, "p,k,analytic_count,empirical_count")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_sig10(r.p),
            r.k,
            fmt_sig10(r.analytic_count),
            r.empirical_count
        )?;
    }
    Ok(())
}

pub fn write_critical_csv<W: Write>(rows: &[(f64, f64)], mut w: W) -> io::Result<()> {
    writeln!(w, "beta,p_critical")?;
    for &(beta, pc) in rows {
        writeln!(w, "{},{}", fmt_sig10(beta), fmt_sig10(pc))?;
    }
    Ok(())
}

pub fn write_giant_fraction_csv<W: Write>(rows: &[GiantFractionRow], mut w: W) -> io::Result<()> {
    writeln!(w, "beta,mean_fraction,std")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{}",
            fmt_sig10(r.beta),
            fmt_sig10(r.mean_fraction),
            fmt_sig10(r.std)
        )?;
    }
    Ok(())
}

/// Provenance recorded next to every CSV artifact.
#[derive(Debug, Clone)]
pub struct RunMeta {
    pub tool: String,
    pub version: String,
    pub base_seed: Seed,
    /// One-line echo of the configuration that produced the table.
    pub config: String,
    pub wall_seconds: f64,
}

pub fn write_meta<W: Write>(meta: &RunMeta, mut w: W) -> io::Result<()> {
    writeln!(w, "tool = {} {}", meta.tool, meta.version)?;
    writeln!(w, "generator = {GENERATOR_ID}")?;
    writeln!(w, "base_seed = {}", meta.base_seed)?;
    writeln!(w, "config = {}", meta.config)?;
    writeln!(w, "wall_seconds = {:.3}", meta.wall_seconds)?;
    Ok(())
}
