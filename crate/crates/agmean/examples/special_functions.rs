//! The special-function kernel everything else builds on.
//!
//! log-gamma, digamma, trigamma, the difference h(x) = psi(x) - ln x, and
//! the inverse of h. h is an increasing bijection from (0, inf) onto
//! (-inf, 0), which is what makes both the rate function and the optimal
//! tilt computable by one scalar inversion.

use agmean::specfun::{digamma, h_func, h_inverse, log_gamma, trigamma};

fn main() -> agmean::Result<()> {
    println!("classic values:");
    println!("  log_gamma(0.5) = {:.15}  (ln sqrt(pi) = {:.15})", log_gamma(0.5)?, 0.5 * std::f64::consts::PI.ln());
    println!("  digamma(1)     = {:.15}  (-Euler gamma)", digamma(1.0)?);
    println!("  trigamma(1)    = {:.15}  (pi^2/6 = {:.15})", trigamma(1.0)?, std::f64::consts::PI.powi(2) / 6.0);
    println!("  trigamma(0.5)  = {:.15}  (pi^2/2 = {:.15})", trigamma(0.5)?, std::f64::consts::PI.powi(2) / 2.0);

    println!("\nh(x) = digamma(x) - ln x and its inverse:");
    for x in [0.01, 0.5, 1.0, 10.0, 1e4] {
        let y = h_func(x)?;
        let back = h_inverse(y)?;
        println!("  h({x:>8}) = {y:>16.10e}   h_inverse -> {back:>14.8e}");
    }

    // h_inverse copes with both tails: y -> 0- sends x -> inf, y -> -inf
    // sends x -> 0+
    println!("\nextremes:");
    println!("  h_inverse(-1e-6) = {:.6e}", h_inverse(-1e-6)?);
    println!("  h_inverse(-50)   = {:.6e}", h_inverse(-50.0)?);
    Ok(())
}
