//! Closed-form side of the problem: zeta numerics, the survivor series χ
//! and ξ, transformed parameters (α′, β′), critical failure rates, and
//! small diagnostic formulas.
//!
//! All operations are pure functions; callers may invoke them from any
//! number of threads.

mod zeta;

pub use zeta::{zeta, zeta_inverse, POLE_EPS};

use crate::error::{Error, Result};

/// Critical power-law slope: a PLN with slope above this almost surely has
/// no giant component. Fixed constant from the literature, never
/// recomputed at runtime.
pub const BETA0: f64 = 3.47875;

/// Failure probabilities above this cap are outside the studied range; the
/// critical-rate search and the sweep harness both stop here.
pub const P_CAP: f64 = 0.99;

/// Parameters of a power-law degree distribution `c(k) = e^alpha * k^(-beta)`
/// with minimum degree 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlnParams {
    alpha: f64,
    beta: f64,
    max_degree: u32,
}

impl PlnParams {
    /// Validates `beta > 1` (strictly right of the zeta pole cutoff) and
    /// `alpha > 0`, and derives the highest expected degree
    /// `floor(e^(alpha/beta))`.
    pub fn new(beta: f64, alpha: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 1.0 + POLE_EPS {
            return Err(Error::Domain(format!(
                "beta must exceed 1 + {POLE_EPS:e} for zeta(beta) to converge, got {beta}"
            )));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        let md = (alpha / beta).exp().floor();
        if md > u32::MAX as f64 / 2.0 {
            return Err(Error::Domain(format!(
                "max degree e^(alpha/beta) = {md:e} is too large to realize"
            )));
        }
        Ok(PlnParams {
            alpha,
            beta,
            max_degree: (md as u32).max(1),
        })
    }

    /// Parameters whose expected node count `zeta(beta) * e^alpha` is `n`.
    pub fn for_size(beta: f64, n: u64) -> Result<Self> {
        PlnParams::new(beta, alpha_for_size(beta, n)?)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Highest expected degree, the summation limit of the survivor series.
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Expected number of degree-`k` nodes, `e^alpha * k^(-beta)`.
    pub fn expected_count(&self, k: u32) -> f64 {
        debug_assert!(k >= 1);
        self.alpha.exp() * (k as f64).powf(-self.beta)
    }

    /// Expected node count `zeta(beta) * e^alpha`.
    pub fn expected_size(&self) -> f64 {
        zeta::zeta_unchecked(self.beta) * self.alpha.exp()
    }
}

/// Analytic outputs for one `(beta, alpha, p)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivorPrediction {
    pub p: f64,
    pub chi: f64,
    pub xi: f64,
    pub alpha_prime: f64,
    /// Slope of the surviving distribution; `f64::INFINITY` when the
    /// power-law estimate degenerates (see [`predict`]).
    pub beta_prime: f64,
    /// Expected orphan count `c(G', 0) = (1-p) e^alpha chi`.
    pub expected_orphans: f64,
    /// Expected survivors of degree >= 1, `zeta(beta') e^alpha'`.
    pub expected_survivors: f64,
    /// Whether the surviving graph keeps a giant component
    /// (`beta_prime < BETA0`).
    pub has_giant: bool,
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// χ = Σ_{k0=1}^{max_degree} p^k0 / k0^beta, summed in increasing k0.
///
/// `(1-p) e^alpha chi` is the expected orphan count after failures.
pub fn chi(params: &PlnParams, p: f64) -> Result<f64> {
    check_probability(p)?;
    let mut sum = 0.0;
    let mut p_pow = 1.0;
    for k in 1..=params.max_degree {
        p_pow *= p;
        sum += p_pow * (k as f64).powf(-params.beta);
    }
    Ok(sum)
}

/// ξ = Σ_{k0=1}^{max_degree} k0 (1-p) p^(k0-1) / k0^beta.
///
/// ξ(0) = 1 (only the k0 = 1 term survives, with the 0^0 = 1 convention)
/// and ξ(1) = 0; `(1-p) e^alpha xi` is the expected degree-1 survivor
/// count.
pub fn xi(params: &PlnParams, p: f64) -> Result<f64> {
    check_probability(p)?;
    let q = 1.0 - p;
    let mut sum = 0.0;
    let mut p_pow = 1.0; // p^(k0-1)
    for k in 1..=params.max_degree {
        sum += (k as f64).powf(1.0 - params.beta) * q * p_pow;
        p_pow *= p;
    }
    Ok(sum)
}

/// Expected count of surviving nodes of degree `k`:
/// `c(G',k) = (1-p) Σ_{k0=k}^{max_degree} e^alpha/k0^beta C(k0,k) (1-p)^k p^(k0-k)`.
///
/// `k = 0` and `k = 1` reduce algebraically to `(1-p) e^alpha chi` and
/// `(1-p) e^alpha xi`; those are delegated so the identities hold
/// bit-for-bit. For `k > max_degree` the sum is empty and the count is 0.
pub fn surviving_degree_count(params: &PlnParams, p: f64, k: u32) -> Result<f64> {
    check_probability(p)?;
    let ea = params.alpha.exp();
    match k {
        0 => return Ok((1.0 - p) * ea * chi(params, p)?),
        1 => return Ok((1.0 - p) * ea * xi(params, p)?),
        _ => {}
    }
    if k > params.max_degree {
        return Ok(0.0);
    }
    if p == 0.0 {
        // Only the k0 = k term survives and it is exactly the original count.
        return Ok(params.expected_count(k));
    }
    if p == 1.0 {
        return Ok(0.0);
    }
    // Binomial terms in log space; C(k0, k) overflows f64 long before the
    // degrees seen at realistic alpha.
    let ln_q = (1.0 - p).ln();
    let ln_p = p.ln();
    let kf = k as f64;
    let mut sum = 0.0;
    for k0 in k..=params.max_degree {
        let ln_term = params.alpha - params.beta * (k0 as f64).ln()
            + zeta::ln_choose(k0, k)
            + kf * ln_q
            + ((k0 - k) as f64) * ln_p;
        sum += ln_term.exp();
    }
    Ok((1.0 - p) * sum)
}

/// β′ for one failure probability; `f64::INFINITY` when the estimate
/// degenerates. Shared by [`predict`] and the critical-rate search.
fn beta_prime_at(params: &PlnParams, p: f64, zeta_beta: f64) -> Result<f64> {
    let c = chi(params, p)?;
    let x = xi(params, p)?;
    let ratio = (zeta_beta - c) / x;
    if ratio <= 1.0 {
        return Ok(f64::INFINITY);
    }
    zeta_inverse(ratio)
}

/// Full survivor prediction for `(params, p)`.
///
/// `alpha' = alpha + ln((1-p) xi)` and
/// `beta' = zeta^-1((zeta(beta) - chi)/xi)`. When the zeta ratio drops to 1
/// or below there is no finite `beta'`; the field is set to the infinity
/// sentinel, `has_giant` is false, and the survivor count falls back to the
/// conservation identity so sweeps can traverse past the critical point.
///
/// `p = 1` is rejected: ξ(1) = 0 leaves `beta'` undefined.
pub fn predict(params: &PlnParams, p: f64) -> Result<SurvivorPrediction> {
    check_probability(p)?;
    if p >= 1.0 {
        return Err(Error::Domain(
            "predict requires p < 1: xi(1) = 0 makes beta' undefined".into(),
        ));
    }
    let zeta_beta = zeta::zeta_unchecked(params.beta);
    let c = chi(params, p)?;
    let x = xi(params, p)?;
    let ea = params.alpha.exp();
    let expected_orphans = (1.0 - p) * ea * c;
    let alpha_prime = params.alpha + ((1.0 - p) * x).ln();
    let ratio = (zeta_beta - c) / x;
    let (beta_prime, expected_survivors) = if ratio <= 1.0 {
        let fallback = (1.0 - p) * zeta_beta * ea - expected_orphans;
        (f64::INFINITY, fallback)
    } else {
        let bp = zeta_inverse(ratio)?;
        (bp, zeta::zeta_unchecked(bp) * alpha_prime.exp())
    };
    Ok(SurvivorPrediction {
        p,
        chi: c,
        xi: x,
        alpha_prime,
        beta_prime,
        expected_orphans,
        expected_survivors,
        has_giant: beta_prime < BETA0,
    })
}

/// Critical failure rate: the p in (0, [`P_CAP`]] with `beta'(beta, p) = BETA0`.
///
/// Requires `2 < beta < BETA0`. β′ is scanned over the 100-point grid
/// {0, 0.01, …, 0.99}; it must be non-decreasing up to the first grid point
/// at or above `BETA0` (a checked invariant — violation is a hard error,
/// not a silent fallback) and the root is then bisected inside that grid
/// cell to `|beta' - BETA0| < 1e-6`. Finite-size truncation makes β′ turn
/// back down at extreme p for some (beta, alpha), which is why the
/// monotonicity check stops at the crossing: past it the values no longer
/// influence the root. If β′ never reaches `BETA0` by p = 0.99 there is no
/// critical rate in the studied range and a domain error is returned.
pub fn critical_failure_rate(params: &PlnParams) -> Result<f64> {
    let beta = params.beta;
    if beta <= 2.0 || beta >= BETA0 {
        return Err(Error::Domain(format!(
            "critical failure rates only exist for 2 < beta < {BETA0}, got {beta}"
        )));
    }
    let zeta_beta = zeta::zeta_unchecked(beta);
    let mut prev = f64::NEG_INFINITY;
    let mut bracket = None;
    for i in 0..100u32 {
        let p = i as f64 / 100.0;
        let bp = beta_prime_at(params, p, zeta_beta)?;
        if bp < prev - 1e-9 {
            return Err(Error::Invariant(format!(
                "beta'({beta}, p) decreased from {prev} to {bp} at p = {p} before \
                 reaching beta0; bisection would be unsound"
            )));
        }
        if bp >= BETA0 {
            bracket = Some(((i as f64 - 1.0) / 100.0, p));
            break;
        }
        prev = bp;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::Domain(format!(
            "beta'({beta}, p) stays below beta0 = {BETA0} for all p <= {P_CAP}; \
             no critical rate in the studied range"
        ))
    })?;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_prime_at(params, mid, zeta_beta)? < BETA0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let pc = 0.5 * (lo + hi);
    let bp = beta_prime_at(params, pc, zeta_beta)?;
    // Written so a NaN beta' also trips the check.
    let on_target = (bp - BETA0).abs() < 1e-6;
    if !on_target {
        return Err(Error::Invariant(format!(
            "bisection for beta = {beta} ended at p = {pc} with beta' = {bp}, \
             outside the 1e-6 target around beta0"
        )));
    }
    Ok(pc)
}

/// α such that `zeta(beta) e^alpha = n`: `ln(n / zeta(beta))`.
pub fn alpha_for_size(beta: f64, n: u64) -> Result<f64> {
    if !beta.is_finite() || beta <= 1.0 + POLE_EPS {
        return Err(Error::Domain(format!(
            "alpha_for_size requires beta > 1 + {POLE_EPS:e}, got {beta}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("alpha_for_size requires n >= 1".into()));
    }
    Ok((n as f64 / zeta::zeta_unchecked(beta)).ln())
}

/// Probability that an individual edge of the highest-degree node is a
/// self-arc: `2 / (zeta(beta-1) e^((beta-1)/beta * alpha))`.
///
/// Requires `beta > 2` so that `zeta(beta - 1)` converges.
pub fn self_arc_probability(params: &PlnParams) -> Result<f64> {
    let beta = params.beta;
    if beta <= 2.0 + POLE_EPS {
        return Err(Error::Domain(format!(
            "self-arc estimate requires beta > 2 (zeta pole at beta - 1), got {beta}"
        )));
    }
    let z = zeta::zeta_unchecked(beta - 1.0);
    Ok(2.0 / (z * ((beta - 1.0) / beta * params.alpha).exp()))
}

/// Fraction of nodes in the giant component for beta = 2:
/// `1 - 2 ln(alpha) / alpha` (natural log), valid for alpha > e.
pub fn giant_fraction_beta2(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= std::f64::consts::E {
        return Err(Error::Domain(format!(
            "giant_fraction_beta2 requires alpha > e so the fraction stays in (0, 1), got {alpha}"
        )));
    }
    Ok(1.0 - 2.0 * alpha.ln() / alpha)
}
