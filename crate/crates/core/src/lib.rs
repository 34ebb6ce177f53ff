//! Sensing-communication coexistence bounds for an uplink system in which
//! the communication user splits its message into two streams decoded
//! around the radar return.
//!
//! The crate has five layers:
//!
//! - [`linkbudget`]: scenario description to physical coefficients (noise
//!   power, radar round-trip gain, free-space communication gain, pulse
//!   timing, delay-domain process noise).
//! - [`bounds`]: every closed form - per-stage interference budgets, the
//!   delay CRLB, estimation/data information rates for the rate-splitting,
//!   OMA and NOMA schemes, and the optimal power split.
//! - [`fim`]: sampled-pulse Fisher information along three routes (full
//!   covariance solve, Sherman-Morrison closed form, Cauchy-Schwarz lower
//!   bound) that cross-validate the closed-form CRLB.
//! - [`montecarlo`]: seeded ergodic-rate averaging under Rayleigh fading
//!   and a waveform-level correlation delay estimator checked against the
//!   CRLB.
//! - [`tradeoff`]: sweep engines, upper-right convex hulls of the
//!   (R_est, R_c) trade-off, and the split-versus-range curve.

pub mod bounds;
pub mod consts;
pub mod error;
pub mod fim;
pub mod linkbudget;
pub mod montecarlo;
pub mod tradeoff;

pub use bounds::{AlphaOpt, PowerSplit, RatePoint, Scheme, StreamRates};
pub use error::{Error, Result};
pub use fim::{InterferencePulse, PulseSamples, SignalLevels};
pub use linkbudget::{DerivedParams, Scenario, SystemParams};
pub use montecarlo::{ErgodicPoint, FadingConfig, TrialStats};
pub use tradeoff::{BoundCurve, Frontier};
