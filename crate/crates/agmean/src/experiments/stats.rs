//! Statistical helpers for the experiment drivers: normal CDF, one- and
//! two-sample Kolmogorov-Smirnov distances (with weighted variants for
//! self-normalized importance samples), log-domain summation, and weighted
//! summaries.

/// Complementary error function, accurate to a few ulps.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// CDF of the normal distribution with the given mean and standard
/// deviation.
pub fn normal_cdf(x: f64, mean: f64, sd: f64) -> f64 {
    0.5 * erfc(-(x - mean) / (sd * std::f64::consts::SQRT_2))
}

/// One-sample Kolmogorov-Smirnov distance between sorted samples and a CDF.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max((f - (i + 1) as f64 / n).abs());
    }
    d
}

/// Weighted one-sample KS distance: the empirical CDF steps by
/// `w_i / sum w` at each sorted sample point.
pub fn ks_statistic_weighted(sorted: &[(f64, f64)], cdf: impl Fn(f64) -> f64) -> f64 {
    let total: f64 = sorted.iter().map(|(_, w)| w).sum();
    let mut cum = 0.0;
    let mut d: f64 = 0.0;
    for &(x, w) in sorted {
        let f = cdf(x);
        d = d.max((f - cum / total).abs());
        cum += w;
        d = d.max((f - cum / total).abs());
    }
    d
}

/// Two-sample KS distance between two sorted samples.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> f64 {
    let (n, m) = (a.len(), b.len());
    assert!(n > 0 && m > 0);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = a[i].min(b[j]);
        while i < n && a[i] <= v {
            i += 1;
        }
        while j < m && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    d
}

/// Asymptotic two-sample KS critical value at the 1% level:
/// `sqrt(-ln(0.005)/2) * sqrt((n+m)/(n m))`.
pub fn two_sample_ks_critical_1pct(n: usize, m: usize) -> f64 {
    let c = (-(0.005f64.ln()) / 2.0).sqrt();
    c * (((n + m) as f64) / (n as f64 * m as f64)).sqrt()
}

/// `ln sum exp(x_i)`, stable against overflow; `-inf` for an empty slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Mean and standard deviation of value-weight pairs with unnormalized
/// weights.
pub fn weighted_mean_sd(pairs: &[(f64, f64)]) -> (f64, f64) {
    let total: f64 = pairs.iter().map(|(_, w)| w).sum();
    let mean = pairs.iter().map(|(x, w)| x * w).sum::<f64>() / total;
    let var = pairs
        .iter()
        .map(|(x, w)| w * (x - mean) * (x - mean))
        .sum::<f64>()
        / total;
    (mean, var.max(0.0).sqrt())
}

/// q-quantile of pairs sorted by value: the smallest value whose cumulative
/// weight reaches q of the total.
pub fn weighted_quantile(sorted: &[(f64, f64)], q: f64) -> f64 {
    let total: f64 = sorted.iter().map(|(_, w)| w).sum();
    let target = q * total;
    let mut cum = 0.0;
    for &(x, w) in sorted {
        cum += w;
        if cum >= target {
            return x;
        }
    }
    sorted.last().map(|&(x, _)| x).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erfc_reference_points() {
        let cases = [
            (0.0, 1.0),
            (0.5, 0.479500122186953),
            (1.0, 0.157299207050285),
            (2.0, 0.00467773498104727),
            (-1.0, 1.84270079294971),
            (3.0, 0.0000220904969985854),
        ];
        for (x, want) in cases {
            assert!((erfc(x) - want).abs() <= 1e-12, "erfc({x})");
        }
    }

    #[test]
    fn normal_cdf_basics() {
        assert!((normal_cdf(0.0, 0.0, 1.0) - 0.5).abs() <= 1e-15);
        assert!((normal_cdf(1.96, 0.0, 1.0) - 0.97500210485178).abs() <= 1e-12);
        assert!((normal_cdf(3.0, 1.0, 2.0) - normal_cdf(1.0, 0.0, 1.0)).abs() <= 1e-12);
        // frozen tail values used by the CLT limit rows
        assert!((1.0 - normal_cdf(1.0 / 0.80307787097405842818, 0.0, 1.0) - 0.106527420159386).abs() <= 1e-12);
        assert!((1.0 - normal_cdf(1.0 / 0.85656322016309445748, 0.0, 1.0) - 0.121513103237633).abs() <= 1e-12);
    }

    #[test]
    fn ks_statistic_exact_small_case() {
        // two points at the quartiles of U(0,1): D = 1/4
        let d = ks_statistic(&[0.25, 0.75], |x| x);
        assert!((d - 0.25).abs() <= 1e-12);
        // weighted with equal weights matches unweighted
        let dw = ks_statistic_weighted(&[(0.25, 1.0), (0.75, 1.0)], |x| x);
        assert!((d - dw).abs() <= 1e-12);
        // all the weight on one point: D = max(F(x), 1 - F(x))
        let dw = ks_statistic_weighted(&[(0.3, 5.0)], |x| x);
        assert!((dw - 0.7).abs() <= 1e-12);
    }

    #[test]
    fn two_sample_ks_hand_cases() {
        // disjoint supports: D = 1
        assert!((two_sample_ks(&[1.0, 2.0], &[3.0, 4.0]) - 1.0).abs() <= 1e-12);
        // identical samples: D = 0
        assert!(two_sample_ks(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).abs() <= 1e-12);
        // interleaved: D = 1/2 for (1,3) vs (2,4)
        assert!((two_sample_ks(&[1.0, 3.0], &[2.0, 4.0]) - 0.5).abs() <= 1e-12);
        let crit = two_sample_ks_critical_1pct(100_000, 100_000);
        assert!((crit - 0.0072790).abs() <= 1e-5);
    }

    #[test]
    fn log_sum_exp_cases() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert!((log_sum_exp(&[0.0, 0.0]) - 2.0f64.ln()).abs() <= 1e-15);
        // huge offsets cannot overflow
        let v = log_sum_exp(&[1000.0, 1000.0 + (2.0f64).ln()]);
        assert!((v - (1000.0 + 3.0f64.ln())).abs() <= 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        // ln(k) identity for k zero entries
        assert_eq!(log_sum_exp(&[0.0; 7]), 7.0f64.ln());
    }

    #[test]
    fn weighted_summaries() {
        let pairs = [(1.0, 1.0), (2.0, 1.0), (3.0, 2.0)];
        let (mean, sd) = weighted_mean_sd(&pairs);
        assert!((mean - 2.25).abs() <= 1e-12);
        let var = (1.25f64.powi(2) + 0.25f64.powi(2) + 2.0 * 0.75f64.powi(2)) / 4.0;
        assert!((sd - var.sqrt()).abs() <= 1e-12);
        assert_eq!(weighted_quantile(&pairs, 0.5), 2.0);
        assert_eq!(weighted_quantile(&pairs, 0.9), 3.0);
        assert_eq!(weighted_quantile(&pairs, 0.1), 1.0);
    }
}
