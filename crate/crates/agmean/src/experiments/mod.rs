//! Monte Carlo experiment drivers connecting the analytic layer to the
//! samplers: CLT normalization of the ratio statistic under the ball, cone,
//! and surface measures; naive and exponentially tilted tail estimation
//! against the rate function; and the surface-vs-cone probability gap.
//!
//! Every driver takes an explicit seed, keys replication `r` to RNG stream
//! `r` (offset per table row where a driver runs several row experiments),
//! and reduces sequentially over the ordered per-replication results. The
//! output is therefore a pure function of `(seed, parameters)` no matter how
//! many rayon workers execute the replications.

pub mod stats;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratefn::{clt_sigma, cumulant, g_p, m_p, rate_j, PParam, TiltParams};
use crate::sampler::{sample_ball, sample_cone, sample_pgauss, sample_tilted_with_logc, RngState};
use stats::{ks_statistic_weighted, log_sum_exp, normal_cdf, weighted_mean_sd, weighted_quantile};

/// Law of the random point whose coordinate ratio is studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Uniform on the unit l_p ball.
    Ball,
    /// Cone measure on the unit l_p sphere (the law of Z/||Z||_p).
    Cone,
    /// Surface measure on the sphere, realized by importance weighting cone
    /// samples; needs p >= 1.
    Surface,
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Measure::Ball => "ball",
            Measure::Cone => "cone",
            Measure::Surface => "surface",
        })
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ball" => Ok(Measure::Ball),
            "cone" => Ok(Measure::Cone),
            "surface" => Ok(Measure::Surface),
            _ => Err(Error::Usage(format!(
                "unknown measure '{s}' (expected ball, cone, or surface)"
            ))),
        }
    }
}

/// Which tail of the ratio distribution an LDP experiment estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Side::Upper),
            "lower" => Ok(Side::Lower),
            _ => Err(Error::Usage(format!(
                "unknown side '{s}' (expected upper or lower)"
            ))),
        }
    }
}

/// Tail-probability estimator variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Naive,
    Tilted,
}

impl std::fmt::Display for Estimator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Estimator::Naive => "naive",
            Estimator::Tilted => "tilted",
        })
    }
}

impl std::str::FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Estimator::Naive),
            "tilted" => Ok(Estimator::Tilted),
            _ => Err(Error::Usage(format!(
                "unknown estimator '{s}' (expected naive or tilted)"
            ))),
        }
    }
}

/// Geometric and p-generalized means of one coordinate vector, kept in the
/// log domain. `ratio = exp(log_gm - log_pm)` lies in [0, 1] up to rounding
/// and is invariant under scaling of the whole vector.
#[derive(Debug, Clone, Copy)]
pub struct RatioStat {
    /// `(1/n) sum ln|x_i|`; `-inf` when some coordinate is zero.
    pub log_gm: f64,
    /// `(1/p) ln((1/n) sum |x_i|^p)`.
    pub log_pm: f64,
    /// `exp(log_gm - log_pm)`; 0 when a coordinate vanishes.
    pub ratio: f64,
}

/// Ratio of the geometric mean of |coordinates| to their p-generalized
/// mean, computed entirely in the log domain.
pub fn gm_ratio(coords: &[f64], p: PParam) -> Result<RatioStat> {
    if coords.is_empty() {
        return Err(Error::Domain("gm_ratio requires at least one coordinate".into()));
    }
    if coords.iter().all(|x| *x == 0.0) {
        return Err(Error::Domain("gm_ratio of the all-zero vector is undefined".into()));
    }
    let n = coords.len() as f64;
    let pp = p.p();
    let mut sum_log = 0.0;
    let mut sum_pow = 0.0;
    for x in coords {
        let a = x.abs();
        sum_log += a.ln();
        sum_pow += a.powf(pp);
    }
    if !(sum_pow > 0.0) {
        return Err(Error::Domain(
            "gm_ratio: p-th powers of all coordinates underflowed to zero".into(),
        ));
    }
    let log_gm = sum_log / n;
    let log_pm = (sum_pow / n).ln() / pp;
    let ratio = if log_gm == f64::NEG_INFINITY {
        0.0
    } else {
        (log_gm - log_pm).exp()
    };
    Ok(RatioStat {
        log_gm,
        log_pm,
        ratio,
    })
}

/// One row of the tail table of a CLT experiment: empirical
/// `P(R_n >= e^(m_p) (1 + a/sqrt(n)))` against the Gaussian limit.
#[derive(Debug, Clone, Copy)]
pub struct CltTailRow {
    pub a: f64,
    pub empirical: f64,
    pub limit: f64,
    /// Standard error of `empirical` (self-normalized form under weights).
    pub std_error: f64,
}

/// Result of a CLT experiment.
#[derive(Debug, Clone)]
pub struct CltResult {
    pub p: f64,
    pub n: usize,
    pub reps: usize,
    pub measure: Measure,
    /// Mean of the normalized statistic `sqrt(n) (e^(-m_p) R_n - 1)`.
    pub mean: f64,
    pub sd: f64,
    /// (level, value) pairs at levels 0.05, 0.25, 0.5, 0.75, 0.95.
    pub quantiles: Vec<(f64, f64)>,
    /// KS distance between the normalized statistic and the centered normal
    /// with standard deviation `clt_sigma(p)`.
    pub ks_distance: f64,
    /// Empirical `P(R_n <= e^(m_p))`; approaches 1/2.
    pub half_prob: f64,
    pub tails: Vec<CltTailRow>,
}

const QUANTILE_LEVELS: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

/// Shared tail/KS/summary reduction over (statistic, weight) pairs, where
/// the statistic plays the role of R_n.
fn summarize_clt(
    p: PParam,
    n: usize,
    reps: usize,
    measure: Measure,
    a_grid: &[f64],
    pairs: Vec<(f64, f64)>,
) -> Result<CltResult> {
    let m = m_p(p);
    let sigma = clt_sigma(p)?;
    let em = m.exp();
    let em_inv = (-m).exp();
    let sqrt_n = (n as f64).sqrt();
    let total_w: f64 = pairs.iter().map(|(_, w)| w).sum();

    let half_prob = pairs
        .iter()
        .filter(|&&(r, _)| r <= em)
        .map(|(_, w)| w)
        .sum::<f64>()
        / total_w;

    let mut tails = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let thr = em * (1.0 + a / sqrt_n);
        let hit_w: f64 = pairs.iter().filter(|&&(r, _)| r >= thr).map(|(_, w)| w).sum();
        let empirical = hit_w / total_w;
        let se = pairs
            .iter()
            .map(|&(r, w)| {
                let d = w * (if r >= thr { 1.0 } else { 0.0 } - empirical);
                d * d
            })
            .sum::<f64>()
            .sqrt()
            / total_w;
        let limit = 1.0 - normal_cdf(a, 0.0, sigma);
        tails.push(CltTailRow {
            a,
            empirical,
            limit,
            std_error: se,
        });
    }

    let mut normalized: Vec<(f64, f64)> = pairs
        .iter()
        .map(|&(r, w)| (sqrt_n * (r * em_inv - 1.0), w))
        .collect();
    normalized.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite statistics"));
    let ks_distance = ks_statistic_weighted(&normalized, |x| normal_cdf(x, 0.0, sigma));
    let (mean, sd) = weighted_mean_sd(&normalized);
    let quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&q| (q, weighted_quantile(&normalized, q)))
        .collect();

    Ok(CltResult {
        p: p.p(),
        n,
        reps,
        measure,
        mean,
        sd,
        quantiles,
        ks_distance,
        half_prob,
        tails,
    })
}

/// Draws `reps` independent ratio statistics of n-dimensional points under
/// the chosen measure and summarizes the CLT normalization: tail table over
/// `a_grid`, KS distance against the Gaussian limit, and the probability of
/// falling below the limit constant.
pub fn clt_experiment(
    p: PParam,
    n: usize,
    reps: usize,
    measure: Measure,
    a_grid: &[f64],
    seed: u64,
) -> Result<CltResult> {
    if n < 100 {
        return Err(Error::Domain(format!("clt_experiment requires n >= 100, got {n}")));
    }
    if measure == Measure::Surface {
        p.require_surface()?;
    }
    check_reps(reps, measure)?;
    let pairs: Vec<(f64, f64)> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngState::new(seed, rep as u64);
            match measure {
                Measure::Cone => {
                    let s = sample_cone(n, p, &mut rng)?;
                    Ok((gm_ratio(&s.coords, p)?.ratio, 1.0))
                }
                Measure::Ball => {
                    let b = sample_ball(n, p, &mut rng)?;
                    Ok((gm_ratio(&b.coords, p)?.ratio, 1.0))
                }
                Measure::Surface => {
                    let s = sample_cone(n, p, &mut rng)?;
                    let w = s.weight.expect("surface requires p >= 1, checked above");
                    Ok((gm_ratio(&s.coords, p)?.ratio, w))
                }
            }
        })
        .collect::<Result<_>>()?;
    summarize_clt(p, n, reps, measure, a_grid, pairs)
}

fn check_reps(reps: usize, measure: Measure) -> Result<()> {
    if reps < 100 {
        return Err(Error::Domain(format!("experiments require reps >= 100, got {reps}")));
    }
    if measure == Measure::Surface {
        // self-normalized weights carry O(1/sqrt(reps)) bias; keep it
        // negligible
        if reps < 10_000 {
            return Err(Error::Domain(format!(
                "surface experiments require reps >= 10000, got {reps}"
            )));
        }
        return Ok(());
    }
    Ok(())
}

/// Reduced-form variant on the ball: instead of the self-normalized ratio,
/// the geometric mean alone is tested against the deterministic threshold
/// `e^(m_p) (1 + a/sqrt(n)) n^(-1/p)`. Equivalently, the statistic
/// `n^(1/p) GM` replaces `R_n` in the same normalization; the Gaussian limit
/// is identical because the dropped norm factor tends to 1 at rate faster
/// than 1/sqrt(n). Valid for any n >= 1, which exposes the exact
/// one-coordinate tail at n = 1.
pub fn reduced_form_experiment(
    p: PParam,
    n: usize,
    reps: usize,
    a_grid: &[f64],
    seed: u64,
) -> Result<CltResult> {
    if n == 0 {
        return Err(Error::Domain("reduced_form_experiment requires n >= 1".into()));
    }
    check_reps(reps, Measure::Ball)?;
    let pp = p.p();
    let shift = (n as f64).ln() / pp;
    let pairs: Vec<(f64, f64)> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngState::new(seed, rep as u64);
            let b = sample_ball(n, p, &mut rng)?;
            let stat = gm_ratio(&b.coords, p)?;
            Ok(((stat.log_gm + shift).exp(), 1.0))
        })
        .collect::<Result<_>>()?;
    summarize_clt(p, n, reps, Measure::Ball, a_grid, pairs)
}

/// Result of one LDP tail estimation.
#[derive(Debug, Clone)]
pub struct LdpResult {
    pub p: f64,
    pub n: usize,
    pub theta: f64,
    pub side: Side,
    pub estimator: Estimator,
    /// `(1/n) ln P-hat`; `-inf` when no replication hit the event.
    pub log_prob_per_n: f64,
    /// Relative standard error of `P-hat` (infinite when no hits).
    pub rel_std_error: f64,
    /// `rate_j(theta, p)`, the value `-log_prob_per_n` approaches.
    pub j_reference: f64,
    /// Number of replications on which the event occurred.
    pub hits: u64,
    /// Set when the expected naive hit count `reps e^(-n J)` falls below 50.
    pub feasibility_warning: bool,
}

fn validate_ldp(theta: f64, n: usize, reps: usize) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta must lie in (0, 1), got {theta}")));
    }
    if n == 0 {
        return Err(Error::Domain("LDP experiments require n >= 1".into()));
    }
    if reps < 100 {
        return Err(Error::Domain(format!("experiments require reps >= 100, got {reps}")));
    }
    Ok(())
}

fn side_event(side: Side, log_ratio: f64, log_theta: f64) -> bool {
    match side {
        Side::Upper => log_ratio >= log_theta,
        Side::Lower => log_ratio <= log_theta,
    }
}

/// Turns per-replication `Some(log weight)` event records into the final
/// estimate. The probability estimate is `(sum of weights)/reps` with
/// weights accumulated in the log domain; for the naive estimator all
/// weights are 1 and this reduces to the hit frequency.
#[allow(clippy::too_many_arguments)]
fn finish_ldp(
    p: PParam,
    theta: f64,
    n: usize,
    reps: usize,
    side: Side,
    estimator: Estimator,
    j_reference: f64,
    feasibility_warning: bool,
    logws: Vec<Option<f64>>,
) -> LdpResult {
    let selected: Vec<f64> = logws.into_iter().flatten().collect();
    let hits = selected.len() as u64;
    let r = reps as f64;
    let (log_prob_per_n, rel_std_error) = if hits == 0 {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        let l1 = log_sum_exp(&selected);
        let doubled: Vec<f64> = selected.iter().map(|x| 2.0 * x).collect();
        let l2 = log_sum_exp(&doubled);
        let log_p = l1 - r.ln();
        // Var(P-hat) = (E W^2 1_A - P^2)/reps, all in the log domain
        let rel = ((r * (l2 - 2.0 * l1).exp() - 1.0).max(0.0) / r).sqrt();
        (log_p / n as f64, rel)
    };
    LdpResult {
        p: p.p(),
        n,
        theta,
        side,
        estimator,
        log_prob_per_n,
        rel_std_error,
        j_reference,
        hits,
        feasibility_warning,
    }
}

/// Naive tail estimator: hit frequency of the event
/// `R_n >= theta` (upper) or `<= theta` (lower) over untilted draws.
/// Infeasible combinations (expected hits below 50) are flagged, not
/// rejected; a zero count reports `log_prob_per_n = -inf`.
pub fn ldp_naive(
    p: PParam,
    theta: f64,
    n: usize,
    reps: usize,
    side: Side,
    seed: u64,
) -> Result<LdpResult> {
    validate_ldp(theta, n, reps)?;
    let j = rate_j(theta, p);
    let expected_hits = reps as f64 * (-(n as f64) * j).exp();
    let warn = expected_hits < 50.0;
    let log_theta = theta.ln();
    let pp = p.p();
    let nf = n as f64;
    let logws: Vec<Option<f64>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngState::new(seed, rep as u64);
            let mut sum_log = 0.0;
            let mut sum_pow = 0.0;
            for _ in 0..n {
                let a = sample_pgauss(p, &mut rng).abs();
                sum_log += a.ln();
                sum_pow += a.powf(pp);
            }
            let log_ratio = sum_log / nf - (sum_pow / nf).ln() / pp;
            side_event(side, log_ratio, log_theta).then_some(0.0)
        })
        .collect();
    Ok(finish_ldp(p, theta, n, reps, side, Estimator::Naive, j, warn, logws))
}

/// Importance-sampled tail estimator at the optimal exponential tilt
/// `(s*, t*) = (p G_p(theta) - 1, 1/p - G_p(theta))`, which recenters the
/// draw distribution so the rare event becomes typical. The side must match
/// the position of theta relative to `e^(m_p)`.
pub fn ldp_tilted(
    p: PParam,
    theta: f64,
    n: usize,
    reps: usize,
    side: Side,
    seed: u64,
) -> Result<LdpResult> {
    validate_ldp(theta, n, reps)?;
    let em = m_p(p).exp();
    match side {
        Side::Upper if theta < em => {
            return Err(Error::Domain(format!(
                "upper tail needs theta >= e^(m_p) = {em}, got {theta}"
            )))
        }
        Side::Lower if theta > em => {
            return Err(Error::Domain(format!(
                "lower tail needs theta <= e^(m_p) = {em}, got {theta}"
            )))
        }
        _ => {}
    }
    let pp = p.p();
    let g = g_p(theta, p)?;
    let tilt = TiltParams::new(pp * g - 1.0, 1.0 / pp - g);
    ldp_tilted_with(tilt, p, theta, n, reps, side, seed)
}

/// Tilted estimator with a caller-chosen tilt. With the zero tilt this
/// reproduces [`ldp_naive`] bit for bit (same draws, unit weights); other
/// tilts trade variance for bias-free reweighting via the accumulated
/// change-of-measure weight.
pub fn ldp_tilted_with(
    tilt: TiltParams,
    p: PParam,
    theta: f64,
    n: usize,
    reps: usize,
    side: Side,
    seed: u64,
) -> Result<LdpResult> {
    validate_ldp(theta, n, reps)?;
    if !tilt.in_domain(p) {
        return Err(Error::Domain(format!(
            "tilt (s, t) = ({}, {}) outside s > -1, t < 1/p for p = {}",
            tilt.s,
            tilt.t,
            p.p()
        )));
    }
    let j = rate_j(theta, p);
    let logc = cumulant(tilt, p);
    let log_theta = theta.ln();
    let pp = p.p();
    let nf = n as f64;
    let logws: Vec<Option<f64>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngState::new(seed, rep as u64);
            let mut sum_log = 0.0;
            let mut sum_pow = 0.0;
            let mut logw = 0.0;
            for _ in 0..n {
                let d = sample_tilted_with_logc(tilt, p, logc, &mut rng)
                    .expect("tilt validated in-domain");
                let a = d.value.abs();
                sum_log += a.ln();
                sum_pow += a.powf(pp);
                logw += d.log_weight_increment;
            }
            let log_ratio = sum_log / nf - (sum_pow / nf).ln() / pp;
            side_event(side, log_ratio, log_theta).then_some(logw)
        })
        .collect();
    Ok(finish_ldp(p, theta, n, reps, side, Estimator::Tilted, j, false, logws))
}

/// Event whose probability the surface-vs-cone comparison estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventSpec {
    RatioAtLeast(f64),
    RatioAtMost(f64),
}

impl EventSpec {
    pub fn threshold(&self) -> f64 {
        match *self {
            EventSpec::RatioAtLeast(t) | EventSpec::RatioAtMost(t) => t,
        }
    }

    pub fn side(&self) -> Side {
        match self {
            EventSpec::RatioAtLeast(_) => Side::Upper,
            EventSpec::RatioAtMost(_) => Side::Lower,
        }
    }

    fn holds(&self, ratio: f64) -> bool {
        match *self {
            EventSpec::RatioAtLeast(t) => ratio >= t,
            EventSpec::RatioAtMost(t) => ratio <= t,
        }
    }
}

/// One dimension row of the surface-vs-cone comparison.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceVsConeRow {
    pub n: usize,
    /// Unweighted (cone measure) estimate of the event probability.
    pub cone_prob: f64,
    /// Self-normalized surface-weighted estimate over the same draws.
    pub surface_prob: f64,
    /// `|surface_prob - cone_prob|`.
    pub gap: f64,
    pub cone_std_error: f64,
    pub surface_std_error: f64,
}

/// Estimates the event probability under the cone measure and under the
/// surface measure (importance-weighted, same draws) for each dimension of
/// `n_list`. The gap vanishes identically for p = 1 and 2 where the
/// measures coincide, and shrinks with n otherwise, mirroring the total
/// variation bound of order n^(-1/2).
pub fn surface_vs_cone(
    p: PParam,
    n_list: &[usize],
    reps: usize,
    event: EventSpec,
    seed: u64,
) -> Result<Vec<SurfaceVsConeRow>> {
    p.require_surface()?;
    check_reps(reps, Measure::Surface)?;
    if n_list.is_empty() {
        return Err(Error::Domain("surface_vs_cone requires a nonempty n list".into()));
    }
    if n_list.contains(&0) {
        return Err(Error::Domain("surface_vs_cone requires n >= 1".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for (row_idx, &n) in n_list.iter().enumerate() {
        let base = row_idx as u64 * reps as u64;
        let draws: Vec<(bool, f64)> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = RngState::new(seed, base + rep as u64);
                let s = sample_cone(n, p, &mut rng)?;
                let stat = gm_ratio(&s.coords, p)?;
                Ok((event.holds(stat.ratio), s.weight.expect("p >= 1 checked")))
            })
            .collect::<Result<_>>()?;
        let r = reps as f64;
        let cone_prob = draws.iter().filter(|(hit, _)| *hit).count() as f64 / r;
        let total_w: f64 = draws.iter().map(|(_, w)| w).sum();
        let hit_w: f64 = draws.iter().filter(|(hit, _)| *hit).map(|(_, w)| w).sum();
        let surface_prob = hit_w / total_w;
        let cone_std_error = (cone_prob * (1.0 - cone_prob) / r).sqrt();
        let surface_std_error = draws
            .iter()
            .map(|&(hit, w)| {
                let d = w * (if hit { 1.0 } else { 0.0 } - surface_prob);
                d * d
            })
            .sum::<f64>()
            .sqrt()
            / total_w;
        rows.push(SurfaceVsConeRow {
            n,
            cone_prob,
            surface_prob,
            gap: (surface_prob - cone_prob).abs(),
            cone_std_error,
            surface_std_error,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: f64) -> PParam {
        PParam::new(p).unwrap()
    }

    #[test]
    fn enum_parsing_round_trips() {
        for s in ["ball", "cone", "surface"] {
            assert_eq!(s.parse::<Measure>().unwrap().to_string(), s);
        }
        for s in ["upper", "lower"] {
            assert_eq!(s.parse::<Side>().unwrap().to_string(), s);
        }
        for s in ["naive", "tilted"] {
            assert_eq!(s.parse::<Estimator>().unwrap().to_string(), s);
        }
        assert!(matches!("sphere".parse::<Measure>(), Err(Error::Usage(_))));
        assert!(matches!("both".parse::<Side>(), Err(Error::Usage(_))));
        assert!(matches!("is".parse::<Estimator>(), Err(Error::Usage(_))));
    }

    #[test]
    fn gm_ratio_basics() {
        let p = pp(2.0);
        // constant vector: equality case
        let r = gm_ratio(&[0.4, -0.4, 0.4, 0.4], p).unwrap();
        assert!((r.ratio - 1.0).abs() <= 1e-12);
        // scale invariance
        let a = gm_ratio(&[0.3, -1.2, 0.77], p).unwrap();
        let b = gm_ratio(&[0.3 * 7.3, -1.2 * 7.3, 0.77 * 7.3], p).unwrap();
        assert!((a.ratio - b.ratio).abs() <= 1e-12);
        // zero coordinate collapses the geometric mean
        let z = gm_ratio(&[1.0, 0.0, 1.0], pp(1.0)).unwrap();
        assert_eq!(z.ratio, 0.0);
        assert_eq!(z.log_gm, f64::NEG_INFINITY);
        assert!(z.log_pm.is_finite());
        // error cases
        assert!(gm_ratio(&[], p).is_err());
        assert!(gm_ratio(&[0.0, 0.0], p).is_err());
    }

    #[test]
    fn gm_ratio_respects_am_gm() {
        let p_values = [1.0, 2.0, 4.0];
        let mut rng = RngState::new(8, 0);
        for (i, &pv) in p_values.iter().enumerate() {
            let p = pp(pv);
            for k in 0..300 {
                let n = 1 + (k % 17);
                let coords: Vec<f64> = (0..n).map(|_| sample_pgauss(p, &mut rng)).collect();
                let r = gm_ratio(&coords, p).unwrap();
                assert!(r.ratio <= 1.0 + 1e-12, "p={pv} iter={k} i={i}");
                assert!(r.ratio >= 0.0);
            }
        }
    }

    #[test]
    fn clt_smoke_and_determinism() {
        let p = pp(2.0);
        let grid = [-1.0, 0.0, 1.0];
        let a = clt_experiment(p, 100, 200, Measure::Cone, &grid, 42).unwrap();
        let b = clt_experiment(p, 100, 200, Measure::Cone, &grid, 42).unwrap();
        assert_eq!(a.ks_distance.to_bits(), b.ks_distance.to_bits());
        assert_eq!(a.half_prob.to_bits(), b.half_prob.to_bits());
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        for (ra, rb) in a.tails.iter().zip(&b.tails) {
            assert_eq!(ra.empirical.to_bits(), rb.empirical.to_bits());
        }
        assert!(a.ks_distance >= 0.0 && a.ks_distance <= 1.0);
        assert!(a.half_prob >= 0.0 && a.half_prob <= 1.0);
        assert_eq!(a.tails.len(), 3);
        // limit at a = 0 is exactly 1/2
        assert!((a.tails[1].limit - 0.5).abs() <= 1e-9);
        assert_eq!(a.quantiles.len(), 5);
        let different_seed = clt_experiment(p, 100, 200, Measure::Cone, &grid, 43).unwrap();
        assert_ne!(a.half_prob.to_bits(), different_seed.half_prob.to_bits());
    }

    #[test]
    fn clt_ball_matches_cone_on_shared_seed() {
        // the radial factor cancels from the scale-invariant ratio, so the
        // two measures see the same ratio samples up to rounding
        let p = pp(1.0);
        let grid = [0.0];
        let ball = clt_experiment(p, 100, 300, Measure::Ball, &grid, 9).unwrap();
        let cone = clt_experiment(p, 100, 300, Measure::Cone, &grid, 9).unwrap();
        assert!((ball.half_prob - cone.half_prob).abs() <= 1e-9);
        assert!((ball.ks_distance - cone.ks_distance).abs() <= 1e-9);
        assert!((ball.tails[0].empirical - cone.tails[0].empirical).abs() <= 1e-9);
    }

    #[test]
    fn clt_preconditions() {
        let grid = [0.0];
        assert!(clt_experiment(pp(2.0), 50, 200, Measure::Cone, &grid, 0).is_err());
        assert!(clt_experiment(pp(2.0), 100, 50, Measure::Cone, &grid, 0).is_err());
        assert!(matches!(
            clt_experiment(pp(0.5), 100, 20_000, Measure::Surface, &grid, 0),
            Err(Error::Unsupported(_))
        ));
        // surface reps floor
        assert!(clt_experiment(pp(2.0), 100, 2000, Measure::Surface, &grid, 0).is_err());
        assert!(clt_experiment(pp(2.0), 100, 10_000, Measure::Surface, &grid, 0).is_ok());
    }

    #[test]
    fn clt_half_probability_moderate_scale() {
        let r = clt_experiment(pp(2.0), 400, 2000, Measure::Cone, &[0.0], 4).unwrap();
        assert!((r.half_prob - 0.5).abs() <= 0.05, "half {}", r.half_prob);
        assert!((r.tails[0].empirical - 0.5).abs() <= 0.05);
        assert!(r.ks_distance <= 0.08, "ks {}", r.ks_distance);
    }

    #[test]
    fn reduced_form_n1_exact_tail() {
        // at n = 1 the reduced statistic is |x| of a uniform ball point,
        // i.e. uniform on (0,1): P(|x| >= c) = 1 - c exactly
        let p = pp(2.0);
        let r = reduced_form_experiment(p, 1, 100_000, &[0.0, 0.5], 17).unwrap();
        let em = crate::ratefn::m_p(p).exp();
        for row in &r.tails {
            let c = em * (1.0 + row.a);
            let exact = (1.0 - c).clamp(0.0, 1.0);
            let se = (exact * (1.0 - exact) / 100_000.0).sqrt();
            assert!(
                (row.empirical - exact).abs() <= 4.0 * se,
                "a={}: {} vs {exact}",
                row.a,
                row.empirical
            );
        }
    }

    #[test]
    fn reduced_form_agrees_with_full_ratio() {
        let p = pp(2.0);
        let grid = [-1.0, 0.0, 1.0];
        let full = clt_experiment(p, 1600, 2000, Measure::Cone, &grid, 5).unwrap();
        let red = reduced_form_experiment(p, 1600, 2000, &grid, 6).unwrap();
        for (f, r) in full.tails.iter().zip(&red.tails) {
            let combined = (f.std_error * f.std_error + r.std_error * r.std_error).sqrt();
            assert!(
                (f.empirical - r.empirical).abs() <= 2.0 * combined + 0.02,
                "a={}: {} vs {}",
                f.a,
                f.empirical,
                r.empirical
            );
        }
    }

    #[test]
    fn ldp_naive_at_the_typical_point() {
        // the event has limit probability 1/2; its median bias at finite n
        // is O(1/n) against a spread of order 1/sqrt(n), so n = 400 keeps
        // the shift near 0.01
        let p = pp(1.0);
        let theta = crate::ratefn::m_p(p).exp();
        let r = ldp_naive(p, theta, 400, 4000, Side::Upper, 2).unwrap();
        let prob = (r.log_prob_per_n * 400.0).exp();
        assert!((prob - 0.5).abs() <= 0.05, "prob {prob}");
        assert!(!r.feasibility_warning);
        assert!(r.j_reference.abs() <= 1e-10);
    }

    #[test]
    fn ldp_naive_zero_hits_flagged() {
        let r = ldp_naive(pp(2.0), 0.99, 500, 1000, Side::Upper, 0).unwrap();
        assert_eq!(r.hits, 0);
        assert_eq!(r.log_prob_per_n, f64::NEG_INFINITY);
        assert_eq!(r.rel_std_error, f64::INFINITY);
        assert!(r.feasibility_warning);
    }

    #[test]
    fn ldp_naive_finite_n_bias_envelope() {
        // -(1/n) ln P lies above J by (ln n)/(2n) + O(1/n); at n = 60 the
        // true probability gives a relative excess near 36%, so assert the
        // envelope rather than convergence that n = 60 cannot deliver
        let r = ldp_naive(pp(2.0), 0.7, 60, 1_000_000, Side::Upper, 11).unwrap();
        let minus = -r.log_prob_per_n;
        let j = r.j_reference;
        assert!(r.hits > 1000, "hits {}", r.hits);
        assert!(minus > j, "finite-n bias must be upward: {minus} vs {j}");
        assert!(minus <= 1.5 * j, "excess too large: {minus} vs {j}");
    }

    #[test]
    fn ldp_naive_and_tilted_are_consistent() {
        // two unbiased estimators of one probability
        let p = pp(2.0);
        let naive = ldp_naive(p, 0.65, 40, 100_000, Side::Upper, 21).unwrap();
        let tilt = ldp_tilted(p, 0.65, 40, 100_000, Side::Upper, 22).unwrap();
        let pn = (naive.log_prob_per_n * 40.0).exp();
        let pt = (tilt.log_prob_per_n * 40.0).exp();
        let combined = ((naive.rel_std_error * pn).powi(2) + (tilt.rel_std_error * pt).powi(2)).sqrt();
        assert!(
            (pn - pt).abs() <= 3.0 * combined,
            "{pn} vs {pt} (3 se = {})",
            3.0 * combined
        );
    }

    #[test]
    fn ldp_tilted_gap_shrinks_with_n() {
        // |(-1/n) ln P - J| decreases in n like (ln n)/(2n)
        let p = pp(2.0);
        let j = crate::ratefn::rate_j(0.7, p);
        let mut prev = f64::INFINITY;
        for (i, n) in [25usize, 50, 100, 200].into_iter().enumerate() {
            let r = ldp_tilted(p, 0.7, n, 20_000, Side::Upper, 30 + i as u64).unwrap();
            let gap = (-r.log_prob_per_n - j).abs();
            let slack = 3.0 * r.rel_std_error / n as f64;
            assert!(gap <= prev + slack, "n={n}: gap {gap} vs previous {prev}");
            prev = gap;
        }
    }

    #[test]
    fn ldp_tilted_side_consistency() {
        let p = pp(2.0);
        let em = crate::ratefn::m_p(p).exp();
        assert!(ldp_tilted(p, 0.4, 100, 1000, Side::Upper, 0).is_err());
        assert!(ldp_tilted(p, 0.7, 100, 1000, Side::Lower, 0).is_err());
        // theta exactly at the constant degenerates to a near-zero tilt and
        // is allowed on both sides
        assert!(ldp_tilted(p, em, 100, 1000, Side::Upper, 0).is_ok());
        assert!(ldp_tilted(p, em, 100, 1000, Side::Lower, 0).is_ok());
        assert!(ldp_tilted(p, 1.2, 100, 1000, Side::Upper, 0).is_err());
        assert!(ldp_naive(p, 0.0, 100, 1000, Side::Upper, 0).is_err());
        assert!(ldp_naive(p, 0.5, 0, 1000, Side::Upper, 0).is_err());
        assert!(ldp_naive(p, 0.5, 100, 50, Side::Upper, 0).is_err());
    }

    #[test]
    fn zero_tilt_reproduces_naive_exactly() {
        let p = pp(2.0);
        let tilt = TiltParams::new(0.0, 0.0);
        let a = ldp_tilted_with(tilt, p, 0.62, 30, 5000, Side::Upper, 77).unwrap();
        let b = ldp_naive(p, 0.62, 30, 5000, Side::Upper, 77).unwrap();
        assert_eq!(a.hits, b.hits);
        assert_eq!(a.log_prob_per_n.to_bits(), b.log_prob_per_n.to_bits());
        assert_eq!(a.rel_std_error.to_bits(), b.rel_std_error.to_bits());
        assert_eq!(a.estimator, Estimator::Tilted);
        assert_eq!(b.estimator, Estimator::Naive);
    }

    #[test]
    fn surface_vs_cone_identical_measures() {
        // constant weights at p = 1 and 2: the weighted estimate collapses
        // onto the unweighted one to rounding accuracy
        for p in [1.0, 2.0] {
            let par = pp(p);
            let em = crate::ratefn::m_p(par).exp();
            let rows =
                surface_vs_cone(par, &[10, 50], 10_000, EventSpec::RatioAtLeast(em), 3).unwrap();
            assert_eq!(rows.len(), 2);
            for row in rows {
                assert!(row.gap <= 1e-9, "p={p} n={}: gap {}", row.n, row.gap);
            }
        }
    }

    #[test]
    fn surface_vs_cone_validation() {
        let em = 0.5;
        assert!(matches!(
            surface_vs_cone(pp(0.5), &[10], 10_000, EventSpec::RatioAtLeast(em), 0),
            Err(Error::Unsupported(_))
        ));
        assert!(surface_vs_cone(pp(4.0), &[10], 2000, EventSpec::RatioAtLeast(em), 0).is_err());
        assert!(surface_vs_cone(pp(4.0), &[], 10_000, EventSpec::RatioAtLeast(em), 0).is_err());
        assert!(surface_vs_cone(pp(4.0), &[0], 10_000, EventSpec::RatioAtLeast(em), 0).is_err());
    }

    #[test]
    fn event_spec_accessors() {
        let up = EventSpec::RatioAtLeast(0.4);
        assert_eq!(up.threshold(), 0.4);
        assert_eq!(up.side(), Side::Upper);
        assert!(up.holds(0.4) && up.holds(0.9) && !up.holds(0.39));
        let lo = EventSpec::RatioAtMost(0.4);
        assert_eq!(lo.side(), Side::Lower);
        assert!(lo.holds(0.1) && !lo.holds(0.5));
    }
}
