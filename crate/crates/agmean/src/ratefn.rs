//! Analytic layer: the limit constant `m_p` of the log-ratio, the CLT scale,
//! the joint cumulant generating function of `(ln|Z|, |Z|^p)` for a
//! p-generalized Gaussian `Z`, its Legendre transform, and the rate function
//! `J_p` governing large deviations of the geometric-to-p-mean ratio.
//!
//! Closed forms are cross-checked by two independent oracles: a direct
//! quadrature of the moment integral behind the cumulant
//! ([`cumulant_oracle`]) and a brute-force grid maximization of the Legendre
//! transform ([`legendre_star_oracle`]).

use crate::error::{Error, Result};
use crate::specfun::{digamma_raw, h_inverse, h_raw, log_gamma_raw, trigamma_raw};

/// Validated exponent of the l_p norm. `restricted_mode` marks 0 < p < 1,
/// where the cone and ball constructions still work but surface-measure
/// weights are refused.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PParam {
    p: f64,
    restricted_mode: bool,
}

impl PParam {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Domain(format!(
                "exponent p must be a positive finite real, got {p}"
            )));
        }
        Ok(PParam {
            p,
            restricted_mode: p < 1.0,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn restricted_mode(&self) -> bool {
        self.restricted_mode
    }

    /// Surface-measure operations need p >= 1; densities below that are not
    /// available.
    pub fn require_surface(&self) -> Result<()> {
        if self.restricted_mode {
            Err(Error::Unsupported(format!(
                "surface measure requires p >= 1, got p = {}",
                self.p
            )))
        } else {
            Ok(())
        }
    }
}

/// Exponential-tilt parameters `(s, t)`. Any pair is representable; whether
/// it lies in the finiteness domain `s > -1, t < 1/p` of the cumulant is a
/// property of the pair together with p, see [`TiltParams::in_domain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltParams {
    pub s: f64,
    pub t: f64,
}

impl TiltParams {
    pub fn new(s: f64, t: f64) -> Self {
        TiltParams { s, t }
    }

    pub fn in_domain(&self, p: PParam) -> bool {
        self.s > -1.0 && self.t < 1.0 / p.p()
    }
}

/// Target for the bivariate mean `(E ln|Z|, E|Z|^p)` used by the Legendre
/// transform. Strict feasibility means `beta > e^{p alpha}`; infeasible
/// points are representable and map to an infinite transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanPoint {
    pub alpha: f64,
    pub beta: f64,
}

impl MeanPoint {
    pub fn new(alpha: f64, beta: f64) -> Self {
        MeanPoint { alpha, beta }
    }

    /// Lower edge of the feasible beta range at this alpha.
    pub fn feasibility_bound(&self, p: PParam) -> f64 {
        (p.p() * self.alpha).exp()
    }

    pub fn strictly_feasible(&self, p: PParam) -> bool {
        self.beta > 0.0 && self.beta > self.feasibility_bound(p)
    }
}

/// One point of the rate curve: `g_value = G_p(theta)` and the optimal tilt
/// `(s_star, t_star) = (p g - 1, 1/p - g)` that makes `theta` typical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub theta: f64,
    pub j_value: f64,
    pub g_value: f64,
    pub s_star: f64,
    pub t_star: f64,
}

/// Limit of the log of the ratio statistic: `m_p = (psi(1/p) + ln p)/p`,
/// negative for every p > 0. Computed as `h(1/p)/p`, which is the same
/// number but avoids cancellation between `psi(1/p)` and `ln p` when p is
/// small.
pub fn m_p(p: PParam) -> f64 {
    h_raw(1.0 / p.p()) / p.p()
}

/// Standard deviation of the Gaussian limit of `sqrt(n) (e^{-m_p} R_n - 1)`:
/// `sqrt(psi'(1/p) - p)/p`.
pub fn clt_sigma(p: PParam) -> Result<f64> {
    let pp = p.p();
    let v = trigamma_raw(1.0 / pp) - pp;
    if v <= 0.0 {
        // psi'(1/p) > p holds for all p > 0; reaching this means the
        // trigamma evaluation broke down
        return Err(Error::InvariantViolation(format!(
            "trigamma(1/p) - p = {v} <= 0 at p = {pp}"
        )));
    }
    Ok(v.sqrt() / pp)
}

/// Joint cumulant generating function of `(ln|Z|, |Z|^p)`:
///
/// `L(s,t) = -(1/p) ln(1-pt) + (s/p)[ln p - ln(1-pt)]
///           + ln G((s+1)/p) - ln G(1/p)`
///
/// finite exactly on `s > -1, t < 1/p`, `+inf` elsewhere. `L(0,0)` is 0.0
/// exactly (every term vanishes in floating point too; the tilted sampler
/// relies on this for bit-exact degeneration to the untilted draw).
pub fn cumulant(tilt: TiltParams, p: PParam) -> f64 {
    let pp = p.p();
    let u = 1.0 - pp * tilt.t;
    if !(tilt.s > -1.0) || !(u > 0.0) {
        return f64::INFINITY;
    }
    let ln_u = u.ln();
    -ln_u / pp + (tilt.s / pp) * (pp.ln() - ln_u) + log_gamma_raw((tilt.s + 1.0) / pp)
        - log_gamma_raw(1.0 / pp)
}

/// Gradient of [`cumulant`] on its finiteness domain:
/// `dL/ds = (1/p)[psi((s+1)/p) + ln(p/(1-pt))]`, `dL/dt = (s+1)/(1-pt)`.
/// These are also the left-hand sides of the two stationarity conditions
/// solved by [`stationary_point`].
pub fn cumulant_grad(tilt: TiltParams, p: PParam) -> Result<(f64, f64)> {
    if !tilt.in_domain(p) {
        return Err(Error::Domain(format!(
            "tilt (s, t) = ({}, {}) outside s > -1, t < 1/p for p = {}",
            tilt.s,
            tilt.t,
            p.p()
        )));
    }
    let pp = p.p();
    let u = 1.0 - pp * tilt.t;
    let ds = (digamma_raw((tilt.s + 1.0) / pp) + (pp / u).ln()) / pp;
    let dt = (tilt.s + 1.0) / u;
    Ok((ds, dt))
}

fn log_sum_exp_slice(v: &[f64]) -> f64 {
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// log of `int_0^inf x^s e^{-c x^p} dx`, by trapezoid quadrature in
/// `y = ln x` with step halving. The transformed integrand
/// `exp((s+1)y - c e^{py})` is smooth, unimodal, and decays doubly
/// exponentially to the right, so the trapezoid rule converges rapidly.
fn log_moment_integral(s: f64, c: f64, p: f64) -> f64 {
    debug_assert!(s > -1.0 && c > 0.0 && p > 0.0);
    let g = |y: f64| (s + 1.0) * y - c * (p * y).exp();
    let y_star = ((s + 1.0) / (c * p)).ln() / p;
    let g_max = g(y_star);
    let mut a = y_star - 1.0;
    while g(a) > g_max - 80.0 {
        a -= 0.5;
    }
    let mut b = y_star + 1.0;
    while g(b) > g_max - 80.0 {
        b += 0.5;
    }
    let mut m = 256usize;
    let mut prev = f64::NAN;
    loop {
        let step = (b - a) / m as f64;
        let mut vals = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            vals.push(g(a + i as f64 * step) + (w * step).ln());
        }
        let cur = log_sum_exp_slice(&vals);
        if (cur - prev).abs() < 1e-9 || m >= 1 << 20 {
            return cur;
        }
        prev = cur;
        m *= 2;
    }
}

/// Independent check of [`cumulant`]: evaluates the defining moment integral
/// `E e^{s ln|Z| + t|Z|^p}` by quadrature instead of the closed form.
/// Agrees with `cumulant` to 1e-6 absolute on the finiteness domain.
pub fn cumulant_oracle(tilt: TiltParams, p: PParam) -> Result<f64> {
    if !tilt.in_domain(p) {
        return Err(Error::Domain(format!(
            "cumulant_oracle needs s > -1 and t < 1/p, got ({}, {})",
            tilt.s, tilt.t
        )));
    }
    let pp = p.p();
    let c = 1.0 / pp - tilt.t;
    Ok(log_moment_integral(tilt.s, c, pp) - log_moment_integral(0.0, 1.0 / pp, pp))
}

/// Solves the two stationarity conditions `grad L(s*, t*) = (alpha, beta)`:
/// with `v* = h_inverse(p alpha - ln beta)`, the solution is
/// `s* = p v* - 1` and `t* = 1/p - (s* + 1)/(beta p)`. Requires strict
/// feasibility `beta > e^{p alpha}`; the residuals of both conditions at the
/// returned point stay below 1e-9.
pub fn stationary_point(target: MeanPoint, p: PParam) -> Result<TiltParams> {
    let bound = target.feasibility_bound(p);
    if !target.strictly_feasible(p) {
        return Err(Error::NoStationaryPoint {
            beta: target.beta,
            bound,
        });
    }
    let pp = p.p();
    let v = h_inverse(pp * target.alpha - target.beta.ln())?;
    let s = pp * v - 1.0;
    let t = 1.0 / pp - (s + 1.0) / (target.beta * pp);
    Ok(TiltParams { s, t })
}

/// Residuals of the two stationarity conditions at a given tilt, i.e.
/// `grad L(tilt) - (alpha, beta)`. Used to verify [`stationary_point`].
pub fn stationarity_residual(target: MeanPoint, tilt: TiltParams, p: PParam) -> Result<(f64, f64)> {
    let (ds, dt) = cumulant_grad(tilt, p)?;
    Ok((ds - target.alpha, dt - target.beta))
}

/// Legendre transform `L*(alpha, beta) = sup_{s,t} [s alpha + t beta -
/// L(s,t)]`. Equals the inner product minus the cumulant at the stationary
/// tilt when `beta > e^{p alpha}`, and `+inf` on the closed infeasible
/// region (including `beta <= 0`). Total: never errs.
pub fn legendre_star(target: MeanPoint, p: PParam) -> f64 {
    let tilt = match stationary_point(target, p) {
        Ok(t) => t,
        Err(_) => return f64::INFINITY,
    };
    tilt.s * target.alpha + tilt.t * target.beta - cumulant(tilt, p)
}

/// Brute-force counterpart of [`legendre_star`]: maximizes
/// `s alpha + t beta - L(s,t)` on a 200x200 grid over
/// `s in (-1 + 1e-6, 50], t in [-50, 1/p - 1e-6]`, then twice refines a
/// window of +-2 grid spacings around the argmax with 10x finer spacing.
/// Agreement with the closed form is 1e-4.
pub fn legendre_star_oracle(target: MeanPoint, p: PParam) -> Result<f64> {
    if !target.strictly_feasible(p) {
        return Err(Error::Domain(format!(
            "legendre_star_oracle target (alpha, beta) = ({}, {}) infeasible: needs beta > e^(p alpha) = {}",
            target.alpha,
            target.beta,
            target.feasibility_bound(p)
        )));
    }
    let pp = p.p();
    let s_min = -1.0 + 1e-6;
    let t_max = 1.0 / pp - 1e-6;
    let objective = |s: f64, t: f64| {
        let l = cumulant(TiltParams { s, t }, p);
        if l.is_finite() {
            s * target.alpha + t * target.beta - l
        } else {
            f64::NEG_INFINITY
        }
    };
    let (mut s_lo, mut s_hi) = (s_min, 50.0);
    let (mut t_lo, mut t_hi) = (-50.0, t_max);
    let mut points = 200usize;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for round in 0..3 {
        let ds = (s_hi - s_lo) / (points - 1) as f64;
        let dt = (t_hi - t_lo) / (points - 1) as f64;
        for i in 0..points {
            let s = s_lo + i as f64 * ds;
            for j in 0..points {
                let t = t_lo + j as f64 * dt;
                let v = objective(s, t);
                if v > best.0 {
                    best = (v, s, t);
                }
            }
        }
        if round < 2 {
            s_lo = (best.1 - 2.0 * ds).max(s_min);
            s_hi = best.1 + 2.0 * ds;
            t_lo = best.2 - 2.0 * dt;
            t_hi = (best.2 + 2.0 * dt).min(t_max);
            points = 41;
        }
    }
    Ok(best.0)
}

/// `G_p(theta) = h_inverse(p ln theta)`, the typical value of the tilted
/// shape parameter when the ratio is pinned at theta. Strictly increasing on
/// (0, 1), diverging at 1 and vanishing at 0.
pub fn g_p(theta: f64, p: PParam) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!(
            "g_p requires theta in (0, 1), got {theta}"
        )));
    }
    h_inverse(p.p() * theta.ln())
}

/// Rate function of the ratio statistic:
///
/// `J_p(t) = [p G - 1] ln t + G(ln G - 1) - ln Gamma(G) + 1/p + (ln p)/p
///           + ln Gamma(1/p)`, with `G = G_p(t)`,
///
/// on (0, 1); `+inf` outside, including both endpoints. Non-negative with
/// its only zero at `e^{m_p}` (values in (-1e-12, 0) arising from rounding
/// are clamped to 0).
pub fn rate_j(theta: f64, p: PParam) -> f64 {
    if !(theta > 0.0 && theta < 1.0) {
        return f64::INFINITY;
    }
    let pp = p.p();
    let g = h_inverse(pp * theta.ln()).expect("h_inverse converges on (-inf, 0)");
    let raw = (pp * g - 1.0) * theta.ln() + g * (g.ln() - 1.0) - log_gamma_raw(g)
        + 1.0 / pp
        + pp.ln() / pp
        + log_gamma_raw(1.0 / pp);
    debug_assert!(raw > -1e-9, "rate function dipped to {raw} at theta={theta}");
    if raw < 0.0 && raw > -1e-12 {
        0.0
    } else {
        raw
    }
}

/// Evaluates the rate function on a uniform grid of `count >= 2` points over
/// `[theta_min, theta_max]`, attaching `G_p` and the optimal tilt per point.
pub fn rate_curve(p: PParam, theta_min: f64, theta_max: f64, count: usize) -> Result<Vec<RatePoint>> {
    if !(theta_min > 0.0 && theta_min < theta_max && theta_max < 1.0) {
        return Err(Error::Domain(format!(
            "rate_curve needs 0 < theta_min < theta_max < 1, got [{theta_min}, {theta_max}]"
        )));
    }
    if count < 2 {
        return Err(Error::Domain(format!(
            "rate_curve needs at least 2 grid points, got {count}"
        )));
    }
    let pp = p.p();
    let step = (theta_max - theta_min) / (count - 1) as f64;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let theta = if i + 1 == count {
            theta_max
        } else {
            theta_min + i as f64 * step
        };
        let g = g_p(theta, p)?;
        out.push(RatePoint {
            theta,
            j_value: rate_j(theta, p),
            g_value: g,
            s_star: pp * g - 1.0,
            t_star: 1.0 / pp - g,
        });
    }
    Ok(out)
}
