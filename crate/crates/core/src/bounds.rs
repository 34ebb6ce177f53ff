//! Closed-form performance expressions: per-stage interference budgets,
//! the closed-form delay CRLB, estimation/data information rate bounds for
//! the rate-splitting, OMA and NOMA schemes, and the optimal power split.
//!
//! Decoding order for rate splitting: stream 1 is decoded against the
//! predicted radar return, the radar delay is then estimated with stream 1
//! removed, and stream 2 is decoded against the estimated radar return.
//! The estimation variance entering the stream-2 budget is taken to be the
//! CRLB itself, i.e. the lower bound is used as the operating value; every
//! rate here is therefore an inner (achievable-side) bound.

use crate::error::{require, Error, Result};
use crate::linkbudget::DerivedParams;

/// Multiple-access-inspired scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Rate splitting with SIC around the sensing signal; knob is alpha.
    Rs,
    /// Spectral isolation into two sub-bands; knob is mu.
    Oma,
    /// Full spectral sharing, communication decoded first; knob is the
    /// fraction of total communication power actually used.
    Noma,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Rs => "rs",
            Scheme::Oma => "oma",
            Scheme::Noma => "noma",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rs" => Ok(Scheme::Rs),
            "oma" => Ok(Scheme::Oma),
            "noma" => Ok(Scheme::Noma),
            other => Err(format!("unknown scheme `{other}` (expected rs, oma or noma)")),
        }
    }
}

/// Power split of the communication message across the two streams:
/// `P_c1 = (1 - alpha) P_c`, `P_c2 = alpha P_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    pub alpha: f64,
    pub p_c1_w: f64,
    pub p_c2_w: f64,
}

impl PowerSplit {
    pub fn new(alpha: f64, total_comm_power_w: f64) -> Result<Self> {
        require((0.0..=1.0).contains(&alpha), "alpha", alpha, "in [0, 1]")?;
        require(
            total_comm_power_w >= 0.0,
            "total_comm_power_w",
            total_comm_power_w,
            ">= 0",
        )?;
        Ok(PowerSplit {
            alpha,
            p_c1_w: (1.0 - alpha) * total_comm_power_w,
            p_c2_w: alpha * total_comm_power_w,
        })
    }
}

/// One operating point: estimation rate, communication rate, producing
/// scheme and the knob value that generated it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub r_est_bps: f64,
    pub r_c_bps: f64,
    pub scheme: Scheme,
    pub knob: f64,
}

/// Per-stream data rates for rate splitting; their sum is the DIR bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamRates {
    pub r_c1_bps: f64,
    pub r_c2_bps: f64,
}

impl StreamRates {
    pub fn sum_bps(&self) -> f64 {
        self.r_c1_bps + self.r_c2_bps
    }
}

/// Result of the optimal-split computation: the raw real root of the
/// stationarity quadratic, the root clamped to [0, 1] (the recommended
/// split), and the quadratic residual at the raw root, both absolute and
/// relative to the largest term magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOpt {
    pub raw: f64,
    pub clamped: f64,
    pub residual: f64,
    pub residual_rel: f64,
}

/// Residual radar interference power seen through the predicted return:
/// `P_r |a_r|^2 gamma^2 B^2 sigma_tau_proc^2`.
fn radar_residual_proc(d: &DerivedParams, radar_power_w: f64) -> f64 {
    radar_power_w
        * d.radar_power_gain
        * d.gamma_sq
        * d.bandwidth_hz
        * d.bandwidth_hz
        * d.sigma_tau_proc_s
        * d.sigma_tau_proc_s
}

/// Interference plus noise power seen by the first communication stream:
/// `|b_c|^2 P_c2 + P_r |a_r|^2 gamma^2 B^2 sigma_tau_proc^2 + sigma_n^2`.
pub fn int_noise_stream1(d: &DerivedParams, split: &PowerSplit, radar_power_w: f64) -> f64 {
    d.comm_power_gain * split.p_c2_w + radar_residual_proc(d, radar_power_w) + d.noise_power_w
}

/// Closed-form (pessimistic) CRLB on the radar delay estimate:
/// `(sigma_n^2 + |b_c|^2 P_c2) / (2 gamma^2 B^2 TB |a_r|^2 P_r)` in s^2.
pub fn crlb_delay(d: &DerivedParams, p_c2_w: f64, radar_power_w: f64) -> Result<f64> {
    require(p_c2_w >= 0.0, "p_c2_w", p_c2_w, ">= 0")?;
    if radar_power_w <= 0.0 || !radar_power_w.is_finite() {
        return Err(Error::NoEcho("radar power must be positive"));
    }
    if d.radar_power_gain <= 0.0 {
        return Err(Error::NoEcho("radar power gain must be positive"));
    }
    let denom = 2.0
        * d.gamma_sq
        * d.bandwidth_hz
        * d.bandwidth_hz
        * d.time_bandwidth_product
        * d.radar_power_gain
        * radar_power_w;
    Ok((d.noise_power_w + d.comm_power_gain * p_c2_w) / denom)
}

/// Interference plus noise power seen by the second communication stream,
/// with the estimated radar return suppressed:
/// `P_r |a_r|^2 gamma^2 B^2 sigma_tau_est^2 + sigma_n^2`, where the
/// estimation variance is the supplied CRLB used as operating value.
pub fn int_noise_stream2(d: &DerivedParams, crlb_s2: f64, radar_power_w: f64) -> f64 {
    radar_power_w
        * d.radar_power_gain
        * d.gamma_sq
        * d.bandwidth_hz
        * d.bandwidth_hz
        * crlb_s2
        + d.noise_power_w
}

/// Estimation rate from a delay error variance: `(delta / 2T) * log2(1 +
/// sigma_tau_proc^2 / sigma_tau_est^2)` in bit/s.
pub fn reir_from_crlb(d: &DerivedParams, crlb_s2: f64) -> f64 {
    let prefactor = d.duty_factor / (2.0 * d.pulse_duration_s);
    prefactor * (1.0 + d.sigma_tau_proc_s * d.sigma_tau_proc_s / crlb_s2).log2()
}

/// Radar estimation information rate bound for rate splitting, in bit/s:
/// `(delta / 2T) * log2(1 + 2 sigma_proc^2 gamma^2 B^2 TB |a_r|^2 P_r /
/// (sigma_n^2 + |b_c|^2 P_c2))`.
pub fn reir_rs(d: &DerivedParams, split: &PowerSplit, radar_power_w: f64) -> f64 {
    let prefactor = d.duty_factor / (2.0 * d.pulse_duration_s);
    let num = 2.0
        * d.sigma_tau_proc_s
        * d.sigma_tau_proc_s
        * d.gamma_sq
        * d.bandwidth_hz
        * d.bandwidth_hz
        * d.time_bandwidth_product
        * d.radar_power_gain
        * radar_power_w;
    let den = d.noise_power_w + d.comm_power_gain * split.p_c2_w;
    prefactor * (1.0 + num / den).log2()
}

/// Data information rates of the two communication streams, in bit/s.
///
/// Stream 1 is decoded against the predicted radar return plus stream 2;
/// stream 2 against the estimated radar return, whose variance is the
/// closed-form CRLB.
pub fn dir_rs(d: &DerivedParams, split: &PowerSplit, radar_power_w: f64) -> Result<StreamRates> {
    let den1 = int_noise_stream1(d, split, radar_power_w);
    let r_c1_bps = d.bandwidth_hz * (1.0 + d.comm_power_gain * split.p_c1_w / den1).log2();
    let crlb = crlb_delay(d, split.p_c2_w, radar_power_w)?;
    let den2 = int_noise_stream2(d, crlb, radar_power_w);
    let r_c2_bps = d.bandwidth_hz * (1.0 + d.comm_power_gain * split.p_c2_w / den2).log2();
    Ok(StreamRates { r_c1_bps, r_c2_bps })
}

/// Closed-form optimal power split maximizing `R_c1 + R_c2`.
///
/// The stationarity condition is the quadratic `P_bc^3 a^2 +
/// 2 P_bc^2 sigma_n^2 a + sigma_n^4 P_bc = 2 sigma_n^2 P_bc P_r |a_r|^2
/// gamma^2 B^2 sigma_proc^2 TB` with `P_bc = |b_c|^2 P_c`, whose positive
/// root is `a* = (-sigma_n^2 + |a_r| gamma B sigma_proc
/// sqrt(2 P_r TB sigma_n^2)) / P_bc`. The raw root may fall outside
/// [0, 1]; the clamped value then puts all power on one stream.
pub fn alpha_opt(d: &DerivedParams, comm_power_w: f64, radar_power_w: f64) -> AlphaOpt {
    let p_bc = d.comm_power_gain * comm_power_w;
    // with no communication link every term of the quadratic vanishes and
    // any split is stationary; keep all power on stream 1
    if p_bc <= 0.0 {
        return AlphaOpt {
            raw: 0.0,
            clamped: 0.0,
            residual: 0.0,
            residual_rel: 0.0,
        };
    }
    let sn2 = d.noise_power_w;
    let gamma_b = d.gamma_sq.sqrt() * d.bandwidth_hz;
    let raw = (-sn2
        + d.radar_power_gain.sqrt()
            * gamma_b
            * d.sigma_tau_proc_s
            * (2.0 * radar_power_w * d.time_bandwidth_product * sn2).sqrt())
        / p_bc;

    // residual of the quadratic at the raw root, relative to its largest term
    let t1 = p_bc * p_bc * p_bc * raw * raw;
    let t2 = 2.0 * p_bc * p_bc * sn2 * raw;
    let t3 = sn2 * sn2 * p_bc;
    let t4 = -2.0
        * sn2
        * p_bc
        * radar_power_w
        * d.radar_power_gain
        * d.gamma_sq
        * d.bandwidth_hz
        * d.bandwidth_hz
        * d.sigma_tau_proc_s
        * d.sigma_tau_proc_s
        * d.time_bandwidth_product;
    let residual = t1 + t2 + t3 + t4;
    let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(t4.abs());
    let residual_rel = if scale > 0.0 { residual.abs() / scale } else { 0.0 };

    AlphaOpt {
        raw,
        clamped: raw.clamp(0.0, 1.0),
        residual,
        residual_rel,
    }
}

/// OMA-inspired operating point for a bandwidth split `mu` in [0, 1]:
/// radar keeps `(1 - mu) B`, communication gets `mu B`. The `mu = 0`
/// communication rate is the continuity limit 0.
pub fn oma_bounds(
    d: &DerivedParams,
    mu: f64,
    comm_power_w: f64,
    radar_power_w: f64,
) -> Result<RatePoint> {
    require((0.0..=1.0).contains(&mu), "mu", mu, "in [0, 1]")?;
    let prefactor = d.duty_factor / (2.0 * d.pulse_duration_s);
    let one_minus = 1.0 - mu;
    let num = 2.0
        * d.sigma_tau_proc_s
        * d.sigma_tau_proc_s
        * d.gamma_sq
        * one_minus
        * one_minus
        * d.bandwidth_hz
        * d.bandwidth_hz
        * d.time_bandwidth_product
        * d.radar_power_gain
        * radar_power_w;
    let r_est_bps = prefactor * (1.0 + num / d.noise_power_w).log2();
    // mu * log2(1 + C/mu) -> 0 as mu -> 0; avoid the 0 * inf evaluation
    let r_c_bps = if mu == 0.0 {
        0.0
    } else {
        mu * d.bandwidth_hz
            * (1.0 + d.comm_power_gain * comm_power_w / (mu * d.noise_power_w)).log2()
    };
    Ok(RatePoint {
        r_est_bps,
        r_c_bps,
        scheme: Scheme::Oma,
        knob: mu,
    })
}

/// NOMA-inspired operating point: communication decoded first and removed
/// by SIC, so the estimation rate is interference-free and independent of
/// the power actually used; the communication rate sees the predicted
/// radar residual as interference.
pub fn noma_bounds(
    d: &DerivedParams,
    p_used_w: f64,
    comm_power_w: f64,
    radar_power_w: f64,
) -> Result<RatePoint> {
    require(
        p_used_w >= 0.0 && p_used_w <= comm_power_w,
        "p_used_w",
        p_used_w,
        "in [0, P_c]",
    )?;
    // same arithmetic path as RS at alpha = 0, so the degeneration identity
    // holds bit-for-bit
    let zero_split = PowerSplit::new(0.0, comm_power_w)?;
    let r_est_bps = reir_rs(d, &zero_split, radar_power_w);
    let den = int_noise_stream1(d, &zero_split, radar_power_w);
    let r_c_bps = d.bandwidth_hz * (1.0 + d.comm_power_gain * p_used_w / den).log2();
    Ok(RatePoint {
        r_est_bps,
        r_c_bps,
        scheme: Scheme::Noma,
        knob: if comm_power_w > 0.0 { p_used_w / comm_power_w } else { 0.0 },
    })
}

/// RS operating point at a given split: REIR plus summed stream rates.
pub fn rs_point(d: &DerivedParams, split: &PowerSplit, radar_power_w: f64) -> Result<RatePoint> {
    let rates = dir_rs(d, split, radar_power_w)?;
    Ok(RatePoint {
        r_est_bps: reir_rs(d, split, radar_power_w),
        r_c_bps: rates.sum_bps(),
        scheme: Scheme::Rs,
        knob: split.alpha,
    })
}
