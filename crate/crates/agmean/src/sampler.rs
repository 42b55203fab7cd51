//! Seeded sampling layer: p-generalized Gaussians, points on the l_p sphere
//! under cone measure, points uniform in the l_p ball, surface-measure
//! importance weights, and exponentially tilted magnitudes for rare-event
//! estimation.
//!
//! All draws go through [`RngState`], a counter-based generator keyed by
//! `(seed, stream_id)`. Experiments key each replication to its own stream,
//! which makes every result a pure function of `(seed, reps)` no matter how
//! the replications are scheduled across threads.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::ratefn::{cumulant, PParam, TiltParams};

/// Deterministic counter-based RNG. The 64-bit seed is expanded to a 256-bit
/// ChaCha8 key by splitmix64 (so that nearby seeds give unrelated streams),
/// and `stream_id` selects one of 2^64 independent streams of the keyed
/// generator. Identical `(seed, stream_id, draw index)` produce identical
/// output on every platform and thread count.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed;
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(stream_id);
        RngState {
            seed,
            stream_id,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// Point on the unit l_p sphere distributed per the cone measure.
#[derive(Debug, Clone)]
pub struct SphereSample {
    pub coords: Vec<f64>,
    /// Unnormalized surface importance weight `(sum |x_i|^(2p-2))^(1/2)`.
    /// `None` for p < 1, where the surface density is not available.
    pub weight: Option<f64>,
    /// Recomputed l_p norm of `coords`; within 1e-12 of 1.
    pub norm_check: f64,
}

/// Point uniform in the unit l_p ball.
#[derive(Debug, Clone)]
pub struct BallSample {
    pub coords: Vec<f64>,
}

/// One exponentially tilted draw. The product of
/// `exp(log_weight_increment)` over the n draws of a replication is the
/// exact change-of-measure weight back to the untilted law.
#[derive(Debug, Clone, Copy)]
pub struct TiltedDraw {
    pub value: f64,
    pub log_weight_increment: f64,
}

/// Magnitude of one untilted draw together with its exact p-th power
/// `|Z|^p = p G`, G unit-scale gamma with shape 1/p.
fn pgauss_magnitude(p: PParam, rng: &mut RngState) -> (f64, f64) {
    let pp = p.p();
    let g: f64 = Gamma::new(1.0 / pp, 1.0)
        .expect("shape 1/p is positive")
        .sample(rng);
    let xp = pp * g;
    (xp.powf(1.0 / pp), xp)
}

fn signed(mag: f64, rng: &mut RngState) -> f64 {
    if rng.gen::<bool>() {
        mag
    } else {
        -mag
    }
}

/// One draw of a p-generalized Gaussian: density proportional to
/// `e^(-|x|^p / p)`. Realized as sign * (p G)^(1/p) with G gamma of shape
/// 1/p, sign uniform; the gamma is drawn before the sign.
pub fn sample_pgauss(p: PParam, rng: &mut RngState) -> f64 {
    let (mag, _) = pgauss_magnitude(p, rng);
    signed(mag, rng)
}

/// l_p norm of a coordinate vector.
pub fn lp_norm(coords: &[f64], p: PParam) -> f64 {
    let pp = p.p();
    coords
        .iter()
        .map(|x| x.abs().powf(pp))
        .sum::<f64>()
        .powf(1.0 / pp)
}

/// Cone-measure point on the unit sphere: `Z / ||Z||_p` for n independent
/// p-generalized Gaussians. An all-zero vector (probability 0) is redrawn.
pub fn sample_cone(n: usize, p: PParam, rng: &mut RngState) -> Result<SphereSample> {
    if n == 0 {
        return Err(Error::Domain("sample_cone requires n >= 1".into()));
    }
    let pp = p.p();
    loop {
        let mut coords = Vec::with_capacity(n);
        let mut sum_xp = 0.0;
        for _ in 0..n {
            let (mag, xp) = pgauss_magnitude(p, rng);
            coords.push(signed(mag, rng));
            sum_xp += xp;
        }
        if sum_xp <= 0.0 {
            continue;
        }
        let norm = sum_xp.powf(1.0 / pp);
        for c in &mut coords {
            *c /= norm;
        }
        let weight = if p.restricted_mode() {
            None
        } else {
            Some(
                coords
                    .iter()
                    .map(|x| x.abs().powf(2.0 * pp - 2.0))
                    .sum::<f64>()
                    .sqrt(),
            )
        };
        let norm_check = lp_norm(&coords, p);
        return Ok(SphereSample {
            coords,
            weight,
            norm_check,
        });
    }
}

/// Uniform point in the unit ball: `U^(1/n) Z / ||Z||_p` with U uniform on
/// (0, 1] independent of Z.
pub fn sample_ball(n: usize, p: PParam, rng: &mut RngState) -> Result<BallSample> {
    let sphere = sample_cone(n, p, rng)?;
    let u = loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            break u;
        }
    };
    let r = u.powf(1.0 / n as f64);
    let coords = sphere.coords.iter().map(|x| x * r).collect();
    Ok(BallSample { coords })
}

/// Surface-measure importance weight `(sum |x_i|^(2p-2))^(1/2)` of a unit
/// vector. This is the surface density with respect to the cone measure up
/// to a norming constant that self-normalization cancels. Constant across
/// the sphere exactly when p is 1 (value sqrt(n)) or 2 (value 1), the two
/// cases where the measures coincide.
pub fn surface_weight(coords: &[f64], p: PParam) -> Result<f64> {
    p.require_surface()?;
    let norm = lp_norm(coords, p);
    if !((norm - 1.0).abs() <= 1e-9) {
        return Err(Error::Domain(format!(
            "surface_weight requires a unit vector, got l_p norm {norm}"
        )));
    }
    let pp = p.p();
    Ok(coords
        .iter()
        .map(|x| x.abs().powf(2.0 * pp - 2.0))
        .sum::<f64>()
        .sqrt())
}

/// Exponentially tilted draw: `|value|^p = (p / (1 - p t)) G` with G gamma
/// of shape `(s+1)/p`, uniform sign, and the log change-of-measure increment
/// `-(s ln|value| + t |value|^p) + L(s, t)`.
///
/// At `(s, t) = (0, 0)` this degenerates to [`sample_pgauss`] bit for bit,
/// with increment exactly 0.
pub fn sample_tilted(tilt: TiltParams, p: PParam, rng: &mut RngState) -> Result<TiltedDraw> {
    sample_tilted_with_logc(tilt, p, cumulant(tilt, p), rng)
}

/// Same as [`sample_tilted`] but with the cumulant value precomputed by the
/// caller, so per-draw cost stays free of log-gamma evaluations.
pub(crate) fn sample_tilted_with_logc(
    tilt: TiltParams,
    p: PParam,
    logc: f64,
    rng: &mut RngState,
) -> Result<TiltedDraw> {
    if !tilt.in_domain(p) {
        return Err(Error::Domain(format!(
            "tilt (s, t) = ({}, {}) outside s > -1, t < 1/p for p = {}",
            tilt.s,
            tilt.t,
            p.p()
        )));
    }
    let pp = p.p();
    let shape = (tilt.s + 1.0) / pp;
    let scale = pp / (1.0 - pp * tilt.t);
    let gamma = Gamma::new(shape, 1.0).expect("shape (s+1)/p is positive");
    // magnitude 0 (possible only by underflow at tiny shapes) would make the
    // weight increment NaN or infinite; redraw
    let (mag, xp) = loop {
        let g: f64 = gamma.sample(rng);
        let xp = scale * g;
        let mag = xp.powf(1.0 / pp);
        if mag > 0.0 {
            break (mag, xp);
        }
    };
    let value = signed(mag, rng);
    let log_weight_increment = -(tilt.s * mag.ln() + tilt.t * xp) + logc;
    Ok(TiltedDraw {
        value,
        log_weight_increment,
    })
}
