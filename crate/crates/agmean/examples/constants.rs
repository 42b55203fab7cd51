//! Limit constants of the ratio of geometric to p-generalized mean.
//!
//! For a random point on the l_p sphere the ratio of the geometric mean of
//! its |coordinates| to their p-mean concentrates, as the dimension grows,
//! at e^(m_p) with m_p = (psi(1/p) + ln p)/p. This prints m_p, e^(m_p), and
//! the spread constant of the Gaussian fluctuations around it for a sweep
//! of p, including the p -> infinity limit value 1/e.

use agmean::ratefn::{clt_sigma, m_p};
use agmean::PParam;

fn main() -> agmean::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>12}", "p", "m_p", "exp(m_p)", "clt_sigma");
    for pv in [0.5, 1.0, 1.5, 2.0, 4.0, 10.0, 100.0, 1000.0] {
        let p = PParam::new(pv)?;
        let m = m_p(p);
        println!(
            "{:>8} {:>12.8} {:>12.8} {:>12.8}",
            pv,
            m,
            m.exp(),
            clt_sigma(p)?
        );
    }
    println!();
    println!("limit for p -> inf: exp(-1) = {:.8}", (-1.0f64).exp());
    Ok(())
}
