//! Gaussian fluctuations of the mean ratio in high dimension.
//!
//! sqrt(n) (e^(-m_p) R_n - 1) approaches a centered normal with standard
//! deviation clt_sigma(p). The experiment draws cone-measure points,
//! normalizes the ratio statistic, and compares tail probabilities with
//! their Gaussian limits; the KS distance quantifies the whole-curve fit.

use agmean::experiments::{clt_experiment, Measure};
use agmean::ratefn::{clt_sigma, m_p};
use agmean::PParam;

fn main() -> agmean::Result<()> {
    let p = PParam::new(2.0)?;
    let (n, reps) = (2000, 1500);
    let a_grid = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];
    let res = clt_experiment(p, n, reps, Measure::Cone, &a_grid, 2026)?;

    println!("p = 2, n = {n}, reps = {reps}, cone measure");
    println!("normalized statistic: mean = {:+.4}, sd = {:.4} (limit sd {:.4})", res.mean, res.sd, clt_sigma(p)?);
    println!("KS distance to the limit law: {:.4}", res.ks_distance);
    println!("P(R_n <= e^(m_p)) = {:.4} (limit 0.5); e^(m_p) = {:.6}\n", res.half_prob, m_p(p).exp());

    println!("{:>6} {:>12} {:>12} {:>10} {:>10}", "a", "empirical", "limit", "diff", "stderr");
    for t in &res.tails {
        println!(
            "{:>6} {:>12.5} {:>12.5} {:>10.5} {:>10.5}",
            t.a,
            t.empirical,
            t.limit,
            (t.empirical - t.limit).abs(),
            t.std_error
        );
    }
    Ok(())
}
