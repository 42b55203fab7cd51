//! The cumulant generating function behind the rate function and its
//! Legendre transform.
//!
//! For a single p-generalized Gaussian coordinate Z, the function
//! Lambda(s, t) = ln E |Z|^s e^(t |Z|^p) is finite on s > -1, t < 1/p.
//! Its Legendre transform Lambda*(alpha, beta) prices a joint target for
//! the empirical means of ln|Z| and |Z|^p; a target is feasible exactly
//! when beta > exp(p alpha), the arithmetic-geometric mean gap. The rate
//! function of the ratio statistic is the transform along beta = 1.

use agmean::ratefn::{
    cumulant, cumulant_grad, legendre_star, m_p, rate_j, stationary_point, MeanPoint, TiltParams,
};
use agmean::{Error, PParam};

fn main() -> agmean::Result<()> {
    let p = PParam::new(2.0)?;

    println!("cumulant on its domain (p = 2):");
    for (s, t) in [(0.0, 0.0), (1.0, 0.0), (0.0, 0.25), (-0.5, -1.0), (2.0, 0.4)] {
        let tilt = TiltParams::new(s, t);
        let v = cumulant(tilt, p);
        let (ds, dt) = cumulant_grad(tilt, p)?;
        println!("  Lambda({s:>4}, {t:>5}) = {v:>12.8}   grad = ({ds:.6}, {dt:.6})");
    }
    println!("  Lambda(0, 1/p) is infinite: {}", cumulant(TiltParams::new(0.0, 0.5), p));

    // the gradient at the origin is the mean of (ln|Z|, |Z|^p)
    let (alpha0, beta0) = cumulant_grad(TiltParams::new(0.0, 0.0), p)?;
    println!("\nmean point: alpha = m_p = {alpha0:.10} (check {:.10}), beta = {beta0}", m_p(p));

    // inverting the gradient: pick a target, solve, verify
    let target = MeanPoint::new(-0.5, 1.0);
    let tilt = stationary_point(target, p)?;
    let (ds, dt) = cumulant_grad(tilt, p)?;
    println!("\ntarget (alpha, beta) = (-0.5, 1): tilt (s*, t*) = ({:.10}, {:.10})", tilt.s, tilt.t);
    println!("  gradient there = ({ds:.10}, {dt:.10})");
    println!("  Lambda*(target) = {:.10}", legendre_star(target, p));
    println!("  rate at exp(-0.5):  {:.10} (same transform along beta = 1)", rate_j((-0.5f64).exp(), p));

    // infeasible: beta <= exp(p alpha) violates the mean inequality
    let bad = MeanPoint::new(0.5, 1.0);
    println!("\ninfeasible target (0.5, 1): Lambda* = {}", legendre_star(bad, p));
    match stationary_point(bad, p) {
        Err(Error::NoStationaryPoint { beta, bound }) => {
            println!("  no stationary point: beta = {beta} <= bound {bound:.6}")
        }
        other => println!("  unexpected: {other:?}"),
    }
    Ok(())
}
