//! Statistics of the ratio between the geometric mean and the p-generalized
//! mean of the coordinates of random points on l_p spheres and balls.
//!
//! The crate has four layers:
//!
//! * [`specfun`]: log-gamma, digamma, trigamma, and the increasing map
//!   `h(x) = digamma(x) - ln x` with its inverse. Everything else is built on
//!   these.
//! * [`ratefn`]: the limiting constant `m_p` of the log-ratio, the CLT scale,
//!   the joint cumulant generating function of `(ln|Z|, |Z|^p)` for a
//!   p-Gaussian `Z`, its Legendre transform, and the large-deviation rate
//!   function of the ratio.
//! * [`sampler`]: seeded, reproducible draws of p-Gaussian vectors, cone
//!   (normalized) points, ball points, surface-measure importance weights,
//!   and exponentially tilted magnitudes.
//! * [`experiments`]: the Monte Carlo studies tying the two together: CLT
//!   histograms of the normalized ratio, naive and tilted tail-probability
//!   estimators with rate-function comparisons, and cone/ball/surface
//!   measure comparisons.
//!
//! The thin `agmean` binary (see [`cli`]) exposes each experiment as a
//! subcommand; the `examples/` directory shows the same capabilities as
//! library calls.

// Frozen reference values keep every digit their oracle printed, and
// validation guards use the `!(x > 0.0)` form on purpose so NaN fails them.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod ratefn;
pub mod sampler;
pub mod specfun;

pub use error::{Error, Result};
pub use ratefn::PParam;
