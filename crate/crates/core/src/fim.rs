//! Sampled-pulse Fisher information for the radar delay estimate.
//!
//! Validates the closed-form CRLB along three routes that must agree:
//!
//! - [`fim_exact`]: quadratic form against the full covariance
//!   `sigma_n^2 I + P_int h h^H`, evaluated by an explicit linear solve;
//! - [`fim_sherman_morrison`]: the same quantity through the rank-one
//!   inverse update;
//! - [`fim_pessimistic`]: the Cauchy-Schwarz lower bound, which collapses
//!   to the closed-form CRLB once the flat-spectrum pulse energy is
//!   inserted.
//!
//! Sampling convention: pulses are synthesized on `TB * oversample`
//! samples at rate `oversample * B`. Inner products carry a
//! `1 / oversample` weight so that norms count Nyquist-equivalent samples:
//! a unit-power pulse has `||r||^2 = TB` and the flat-spectrum pulse has
//! `||r'||^2 = gamma^2 B^2 TB`, which is what the closed form expects.
//! The complex-observation Fisher information carries the standard factor
//! 2 throughout, making the sampled forms and the closed-form CRLB
//! directly comparable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{require, Error, Result};

/// A sampled complex baseband pulse with its exact spectral-domain
/// derivative.
///
/// `samples` has unit average power. The occupied DFT bins are retained so
/// delayed copies can be synthesized with exact sub-sample shifts.
#[derive(Debug, Clone)]
pub struct PulseSamples {
    /// Complex baseband samples, unit average power.
    pub samples: Vec<Complex64>,
    /// Time derivative of `samples` (per-second units), computed in the
    /// spectral domain.
    pub derivative: Vec<Complex64>,
    /// Sampling rate in Hz, `oversample * bandwidth`.
    pub sample_rate_hz: f64,
    oversample: u32,
    /// Occupied-bin coefficients; bin k sits at frequency `k * B / TB`.
    coeffs: Vec<Complex64>,
    first_bin: i64,
}

impl PulseSamples {
    /// Number of samples.
    pub fn n(&self) -> usize {
        self.samples.len()
    }

    /// Oversampling factor relative to Nyquist sampling of the bandwidth.
    pub fn oversample(&self) -> u32 {
        self.oversample
    }

    /// Duration of the observation window in s.
    pub fn window_s(&self) -> f64 {
        self.n() as f64 / self.sample_rate_hz
    }

    /// Weight turning raw sample sums into Nyquist-equivalent sums.
    pub(crate) fn nyquist_weight(&self) -> f64 {
        1.0 / self.oversample as f64
    }

    /// Occupied-bin physical frequencies in Hz.
    pub(crate) fn bin_freqs(&self) -> Vec<f64> {
        let df = self.sample_rate_hz / self.n() as f64;
        (0..self.coeffs.len())
            .map(|j| (self.first_bin + j as i64) as f64 * df)
            .collect()
    }

    /// Occupied-bin coefficients.
    pub(crate) fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Synthesize the pulse delayed by `delay_s` (exact spectral shift;
    /// the window is treated as one period, so the shift is cyclic).
    pub fn delayed(&self, delay_s: f64) -> Vec<Complex64> {
        let shifted: Vec<Complex64> = self
            .coeffs
            .iter()
            .zip(self.bin_freqs())
            .map(|(c, f)| {
                c * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * f * delay_s)
            })
            .collect();
        synthesize(&shifted, self.first_bin, self.n())
    }
}

/// A sampled interference pulse with its Nyquist-normalized energy.
#[derive(Debug, Clone)]
pub struct InterferencePulse {
    /// Complex baseband samples.
    pub h: Vec<Complex64>,
    /// Nyquist-normalized energy `(1/oversample) * sum |h_k|^2`.
    pub energy: f64,
    oversample: u32,
}

impl InterferencePulse {
    /// Wrap raw samples, computing the declared energy.
    pub fn from_samples(h: Vec<Complex64>, oversample: u32) -> Self {
        let energy = h.iter().map(|v| v.norm_sqr()).sum::<f64>() / oversample as f64;
        InterferencePulse {
            h,
            energy,
            oversample,
        }
    }

    /// Rescale to unit energy. The covariance model assumes a unit-energy
    /// interference shape; the pessimistic bound only lower-bounds the
    /// other Fisher-information forms under that normalization.
    pub fn normalized(mut self) -> Self {
        let scale = 1.0 / self.energy.sqrt();
        for v in &mut self.h {
            *v *= scale;
        }
        self.energy = 1.0;
        self
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }
}

/// Gains and powers entering the delay-estimation stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalLevels {
    /// Received echo power `|a_r|^2 P_r` in W.
    pub echo_power_w: f64,
    /// Received interference power `|b_c|^2 P_c2` in W.
    pub interference_power_w: f64,
    /// Thermal noise power `sigma_n^2` in W.
    pub noise_power_w: f64,
}

impl SignalLevels {
    pub fn validate(&self) -> Result<()> {
        require(self.echo_power_w >= 0.0, "echo_power_w", self.echo_power_w, ">= 0")?;
        require(
            self.interference_power_w >= 0.0,
            "interference_power_w",
            self.interference_power_w,
            ">= 0",
        )?;
        require(self.noise_power_w > 0.0, "noise_power_w", self.noise_power_w, "> 0")?;
        Ok(())
    }
}

/// Inverse DFT of occupied-bin coefficients onto `n` time samples.
fn synthesize(coeffs: &[Complex64], first_bin: i64, n: usize) -> Vec<Complex64> {
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
    for (j, c) in coeffs.iter().enumerate() {
        let k = first_bin + j as i64;
        let idx = k.rem_euclid(n as i64) as usize;
        spectrum[idx] += c;
    }
    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(n);
    ifft.process(&mut spectrum);
    // rustfft leaves the inverse unnormalized as sum_k S_k e^{+j2pi kt/N},
    // which is exactly the multitone synthesis we want
    spectrum
}

/// Build a pulse from occupied-bin coefficients starting at `first_bin`.
///
/// Bin `k` sits at physical frequency `k * bandwidth / n_bins` and the
/// output has `n_bins * oversample` samples at rate
/// `oversample * bandwidth`. The derivative is the exact spectral-domain
/// derivative. Coefficients are used as given; callers wanting unit
/// average power must normalize (`make_flat_pulse` does).
pub fn pulse_from_spectrum(
    coeffs: Vec<Complex64>,
    first_bin: i64,
    oversample: usize,
    bandwidth_hz: f64,
) -> Result<PulseSamples> {
    if coeffs.len() < 2 {
        return Err(Error::invalid(
            "n_bins",
            coeffs.len() as f64,
            ">= 2 occupied bins",
        ));
    }
    require(oversample >= 1, "oversample", oversample as f64, ">= 1")?;
    require(bandwidth_hz > 0.0, "bandwidth_hz", bandwidth_hz, "> 0")?;
    let n_bins = coeffs.len();
    let n = n_bins * oversample;
    let df = bandwidth_hz / n_bins as f64;
    let samples = synthesize(&coeffs, first_bin, n);
    let deriv_coeffs: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let f = (first_bin + j as i64) as f64 * df;
            c * Complex64::new(0.0, 2.0 * std::f64::consts::PI * f)
        })
        .collect();
    let derivative = synthesize(&deriv_coeffs, first_bin, n);
    Ok(PulseSamples {
        samples,
        derivative,
        sample_rate_hz: oversample as f64 * bandwidth_hz,
        oversample: oversample as u32,
        coeffs,
        first_bin,
    })
}

/// Deterministic multitone phase profile with a low crest factor.
fn schroeder_phases(n_bins: usize, sign: f64) -> Vec<f64> {
    (0..n_bins)
        .map(|j| sign * std::f64::consts::PI * (j * j) as f64 / n_bins as f64)
        .collect()
}

/// Flat-spectrum pulse of time-bandwidth product `tb`: equal-magnitude
/// occupied bins spanning `[-B/2, B/2)` with Schroeder phases, unit
/// average power, duration `tb / bandwidth`.
pub fn make_flat_pulse(tb: usize, oversample: usize, bandwidth_hz: f64) -> Result<PulseSamples> {
    require(tb >= 2, "tb", tb as f64, ">= 2")?;
    let amp = 1.0 / (tb as f64).sqrt();
    let coeffs: Vec<Complex64> = schroeder_phases(tb, 1.0)
        .into_iter()
        .map(|phi| Complex64::from_polar(amp, phi))
        .collect();
    let first_bin = -(tb as i64) / 2;
    pulse_from_spectrum(coeffs, first_bin, oversample, bandwidth_hz)
}

/// Default interference shape: a unit-energy flat-spectrum pulse with a
/// reversed phase profile, independent of the radar pulse.
///
/// Unit energy means `(1/oversample) * sum |h_k|^2 = 1`: the covariance
/// term `P_int h h^H` then carries exactly one block symbol's worth of
/// received interference energy, unlike the radar pulse, which is
/// unit-power (energy `TB`).
pub fn flat_interference(
    tb: usize,
    oversample: usize,
    bandwidth_hz: f64,
) -> Result<InterferencePulse> {
    require(tb >= 2, "tb", tb as f64, ">= 2")?;
    // per-bin amplitude 1/tb gives weighted sample energy tb^2 * (1/tb)^2 = 1
    let amp = 1.0 / tb as f64;
    let coeffs: Vec<Complex64> = schroeder_phases(tb, -1.0)
        .into_iter()
        .map(|phi| Complex64::from_polar(amp, phi))
        .collect();
    let pulse = pulse_from_spectrum(coeffs, -(tb as i64) / 2, oversample, bandwidth_hz)?;
    Ok(InterferencePulse::from_samples(
        pulse.samples,
        oversample as u32,
    ))
}

/// Worst-case interference: unit-energy pulse parallel to the delay
/// derivative, where the Cauchy-Schwarz bound is tight.
pub fn aligned_interference(pulse: &PulseSamples) -> InterferencePulse {
    let w = pulse.nyquist_weight();
    let norm = (w * pulse.derivative.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt();
    let h: Vec<Complex64> = pulse.derivative.iter().map(|v| v / norm).collect();
    InterferencePulse::from_samples(h, pulse.oversample)
}

fn check_pair(pulse: &PulseSamples, interference: &InterferencePulse) -> Result<()> {
    if pulse.n() != interference.n() {
        return Err(Error::LengthMismatch {
            pulse: pulse.n(),
            interference: interference.n(),
        });
    }
    if pulse.oversample != interference.oversample {
        return Err(Error::invalid(
            "oversample",
            interference.oversample as f64,
            "must match the pulse oversample (shared Nyquist weighting)",
        ));
    }
    Ok(())
}

/// Nyquist-weighted inner product `(1/oversample) * a^H b`.
fn weighted_dot(a: &[Complex64], b: &[Complex64], weight: f64) -> Complex64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        * weight
}

/// Fisher information by explicit solve against the full covariance
/// `sigma_n^2 I + P_int h h^H`, times the complex-observation factor 2.
pub fn fim_exact(
    pulse: &PulseSamples,
    interference: &InterferencePulse,
    levels: &SignalLevels,
) -> Result<f64> {
    levels.validate()?;
    check_pair(pulse, interference)?;
    let n = pulse.n();
    let sw = pulse.nyquist_weight().sqrt();
    // scale both vectors by sqrt(weight) so standard inner products carry
    // the Nyquist normalization
    let rp = DVector::from_iterator(n, pulse.derivative.iter().map(|v| v * sw));
    let hv = DVector::from_iterator(n, interference.h.iter().map(|v| v * sw));
    let mut sigma = DMatrix::from_diagonal_element(
        n,
        n,
        Complex64::new(levels.noise_power_w, 0.0),
    );
    let p_int = Complex64::new(levels.interference_power_w, 0.0);
    for i in 0..n {
        for j in 0..n {
            sigma[(i, j)] += p_int * hv[i] * hv[j].conj();
        }
    }
    let solved = sigma
        .lu()
        .solve(&rp)
        .expect("covariance is positive definite for positive noise power");
    let quad = rp.dotc(&solved).re;
    Ok(2.0 * levels.echo_power_w * quad)
}

/// Fisher information through the Sherman-Morrison rank-one update:
/// `(2 |a_r|^2 P_r / sigma_n^2) (||r'||^2 - rho |h^H r'|^2 /
/// (1 + rho ||h||^2))` with `rho = P_int / sigma_n^2`.
pub fn fim_sherman_morrison(
    pulse: &PulseSamples,
    interference: &InterferencePulse,
    levels: &SignalLevels,
) -> Result<f64> {
    levels.validate()?;
    check_pair(pulse, interference)?;
    let w = pulse.nyquist_weight();
    let norm_rp = weighted_dot(&pulse.derivative, &pulse.derivative, w).re;
    let norm_h = weighted_dot(&interference.h, &interference.h, w).re;
    let cross = weighted_dot(&interference.h, &pulse.derivative, w);
    let rho = levels.interference_power_w / levels.noise_power_w;
    Ok(2.0 * levels.echo_power_w / levels.noise_power_w
        * (norm_rp - rho * cross.norm_sqr() / (1.0 + rho * norm_h)))
}

/// Cauchy-Schwarz lower bound on the Fisher information:
/// `2 |a_r|^2 P_r ||r'||^2 / (sigma_n^2 + P_int)`. Tight when the
/// interference is absent or parallel to the derivative with unit energy.
pub fn fim_pessimistic(pulse: &PulseSamples, levels: &SignalLevels) -> Result<f64> {
    levels.validate()?;
    let w = pulse.nyquist_weight();
    let norm_rp = weighted_dot(&pulse.derivative, &pulse.derivative, w).re;
    Ok(2.0 * levels.echo_power_w * norm_rp
        / (levels.noise_power_w + levels.interference_power_w))
}

/// CRLB as the reciprocal of a (positive) Fisher information, in s^2.
pub fn crlb_from_fim(fim_value: f64) -> Result<f64> {
    if fim_value > 0.0 && fim_value.is_finite() {
        Ok(1.0 / fim_value)
    } else {
        Err(Error::NonPositiveInformation(fim_value))
    }
}
