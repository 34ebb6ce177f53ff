//! Physical constants shared by every module.

use std::f64::consts::PI;

/// Boltzmann constant in J/K (CODATA exact value).
pub const BOLTZMANN_J_PER_K: f64 = 1.380649e-23;

/// Speed of light in vacuum in m/s (exact).
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Normalized mean-square bandwidth factor of a flat spectral wave,
/// `(2*pi)^2 / 12`. Multiplying by `B^2` gives the RMS bandwidth squared
/// (in angular units) of a spectrum flat over `[-B/2, B/2]`.
pub const GAMMA_SQ_FLAT: f64 = (2.0 * PI) * (2.0 * PI) / 12.0;
