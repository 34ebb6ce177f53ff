//! Link budget: turns the scenario description into the physical
//! coefficients every bound formula consumes.
//!
//! Converts antenna gains, ranges, powers and the thermal environment into
//! noise power, the monostatic radar round-trip power gain `|a_r|^2`, the
//! one-way communication power gain `|b_c|^2`, the pulse duration, and the
//! delay-domain process noise. Gains are carried as linear power ratios
//! throughout; decibels exist only at the CLI boundary.

use crate::consts::{BOLTZMANN_J_PER_K, GAMMA_SQ_FLAT, SPEED_OF_LIGHT_M_PER_S};
use crate::error::{require, Result};

/// Full scenario description in SI units.
///
/// Defaults reproduce the reference simulation scenario: 5 MHz bandwidth at
/// 3 GHz, a 100 W communication user at 10 km received through a 10 dBi
/// sidelobe, and a 100 kW monostatic radar tracking a 10 m^2 target at
/// 100 km with a 100 m process standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// System bandwidth B in Hz.
    pub bandwidth_hz: f64,
    /// Carrier frequency f in Hz.
    pub carrier_freq_hz: f64,
    /// Effective noise temperature in K.
    pub effective_temp_k: f64,
    /// Communication user range in m.
    pub comm_range_m: f64,
    /// Total uplink transmit power P_c in W.
    pub comm_power_w: f64,
    /// Communication transmit antenna gain (linear).
    pub comm_tx_gain: f64,
    /// Base-station sidelobe gain toward the user (linear).
    pub comm_rx_sidelobe_gain: f64,
    /// Radar target range in m.
    pub radar_range_m: f64,
    /// Radar antenna gain (linear).
    pub radar_gain: f64,
    /// Radar transmit power P_r in W.
    pub radar_power_w: f64,
    /// Target radar cross section in m^2.
    pub target_rcs_m2: f64,
    /// Target process standard deviation in m.
    pub target_process_std_m: f64,
    /// Time-bandwidth product TB of the radar pulse.
    pub time_bandwidth_product: f64,
    /// Radar duty factor delta, fraction of the PRI occupied by the pulse.
    pub duty_factor: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            bandwidth_hz: 5e6,
            carrier_freq_hz: 3e9,
            effective_temp_k: 1000.0,
            comm_range_m: 1e4,
            comm_power_w: 100.0,
            comm_tx_gain: 1.0,
            comm_rx_sidelobe_gain: 10.0,
            radar_range_m: 1e5,
            radar_gain: 1000.0,
            radar_power_w: 1e5,
            target_rcs_m2: 10.0,
            target_process_std_m: 100.0,
            time_bandwidth_product: 100.0,
            duty_factor: 0.01,
        }
    }
}

impl SystemParams {
    /// Check every invariant: strictly positive fields, nonnegative gains,
    /// duty factor in (0, 1], TB >= 1.
    pub fn validate(&self) -> Result<()> {
        require(self.bandwidth_hz > 0.0, "bandwidth_hz", self.bandwidth_hz, "> 0")?;
        require(
            self.carrier_freq_hz > 0.0,
            "carrier_freq_hz",
            self.carrier_freq_hz,
            "> 0",
        )?;
        require(
            self.effective_temp_k > 0.0,
            "effective_temp_k",
            self.effective_temp_k,
            "> 0",
        )?;
        require(self.comm_range_m > 0.0, "comm_range_m", self.comm_range_m, "> 0")?;
        require(self.comm_power_w > 0.0, "comm_power_w", self.comm_power_w, "> 0")?;
        require(self.comm_tx_gain >= 0.0, "comm_tx_gain", self.comm_tx_gain, ">= 0")?;
        require(
            self.comm_rx_sidelobe_gain >= 0.0,
            "comm_rx_sidelobe_gain",
            self.comm_rx_sidelobe_gain,
            ">= 0",
        )?;
        require(self.radar_range_m > 0.0, "radar_range_m", self.radar_range_m, "> 0")?;
        require(self.radar_gain >= 0.0, "radar_gain", self.radar_gain, ">= 0")?;
        require(self.radar_power_w > 0.0, "radar_power_w", self.radar_power_w, "> 0")?;
        require(self.target_rcs_m2 > 0.0, "target_rcs_m2", self.target_rcs_m2, "> 0")?;
        require(
            self.target_process_std_m > 0.0,
            "target_process_std_m",
            self.target_process_std_m,
            "> 0",
        )?;
        require(
            self.time_bandwidth_product >= 1.0,
            "time_bandwidth_product",
            self.time_bandwidth_product,
            ">= 1",
        )?;
        require(
            self.duty_factor > 0.0 && self.duty_factor <= 1.0,
            "duty_factor",
            self.duty_factor,
            "in (0, 1]",
        )?;
        Ok(())
    }

    /// Carrier wavelength in m.
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT_M_PER_S / self.carrier_freq_hz
    }
}

/// Physical quantities derived from [`SystemParams`], consumed by every
/// bound formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// System bandwidth B in Hz (copied through for the rate formulas).
    pub bandwidth_hz: f64,
    /// Time-bandwidth product TB (copied through).
    pub time_bandwidth_product: f64,
    /// Radar duty factor delta (copied through).
    pub duty_factor: f64,
    /// Thermal noise power sigma_n^2 = k_B * T_temp * B in W.
    pub noise_power_w: f64,
    /// Monostatic round-trip power gain |a_r|^2 (dimensionless).
    pub radar_power_gain: f64,
    /// One-way communication power gain |b_c|^2 (dimensionless).
    pub comm_power_gain: f64,
    /// Pulse duration T = TB / B in s.
    pub pulse_duration_s: f64,
    /// Delay-domain process noise standard deviation in s.
    pub sigma_tau_proc_s: f64,
    /// Normalized mean-square bandwidth factor, (2*pi)^2 / 12.
    pub gamma_sq: f64,
    /// Pulse repetition interval T_pri = T / delta in s.
    pub pri_s: f64,
}

impl DerivedParams {
    /// Copy with both channel power gains scaled by small-scale fading
    /// power factors. Everything else is unchanged.
    pub fn faded(&self, comm_factor: f64, radar_factor: f64) -> DerivedParams {
        DerivedParams {
            comm_power_gain: self.comm_power_gain * comm_factor,
            radar_power_gain: self.radar_power_gain * radar_factor,
            ..*self
        }
    }
}

/// Thermal noise power `k_B * T_temp * B` in W.
pub fn noise_power(effective_temp_k: f64, bandwidth_hz: f64) -> Result<f64> {
    require(effective_temp_k >= 0.0, "effective_temp_k", effective_temp_k, ">= 0")?;
    require(bandwidth_hz > 0.0, "bandwidth_hz", bandwidth_hz, "> 0")?;
    Ok(BOLTZMANN_J_PER_K * effective_temp_k * bandwidth_hz)
}

/// Monostatic radar round-trip power gain `|a_r|^2`.
///
/// Standard radar range equation: `G^2 lambda^2 sigma_rcs / ((4 pi)^3 R^4)`
/// with lambda the carrier wavelength. Transmit power is not part of the
/// gain; power and gain stay separate factors everywhere downstream.
pub fn radar_power_gain(params: &SystemParams) -> Result<f64> {
    require(params.radar_range_m > 0.0, "radar_range_m", params.radar_range_m, "> 0")?;
    require(params.carrier_freq_hz > 0.0, "carrier_freq_hz", params.carrier_freq_hz, "> 0")?;
    require(params.radar_gain >= 0.0, "radar_gain", params.radar_gain, ">= 0")?;
    require(params.target_rcs_m2 >= 0.0, "target_rcs_m2", params.target_rcs_m2, ">= 0")?;
    let lambda = params.wavelength_m();
    let four_pi = 4.0 * std::f64::consts::PI;
    let r = params.radar_range_m;
    Ok(params.radar_gain * params.radar_gain * lambda * lambda * params.target_rcs_m2
        / (four_pi * four_pi * four_pi * r * r * r * r))
}

/// One-way free-space communication power gain `|b_c|^2`.
///
/// Friis transmission: `(lambda / (4 pi R))^2 * G_tx * G_rx`, with the
/// receive gain being the base-station sidelobe toward the user.
pub fn comm_power_gain(params: &SystemParams) -> Result<f64> {
    require(params.comm_range_m > 0.0, "comm_range_m", params.comm_range_m, "> 0")?;
    require(params.carrier_freq_hz > 0.0, "carrier_freq_hz", params.carrier_freq_hz, "> 0")?;
    require(params.comm_tx_gain >= 0.0, "comm_tx_gain", params.comm_tx_gain, ">= 0")?;
    require(
        params.comm_rx_sidelobe_gain >= 0.0,
        "comm_rx_sidelobe_gain",
        params.comm_rx_sidelobe_gain,
        ">= 0",
    )?;
    let lambda = params.wavelength_m();
    let spread = lambda / (4.0 * std::f64::consts::PI * params.comm_range_m);
    Ok(spread * spread * params.comm_tx_gain * params.comm_rx_sidelobe_gain)
}

/// Populate every derived quantity from a validated scenario.
///
/// Pure: identical inputs yield bit-identical outputs.
pub fn derive(params: &SystemParams) -> Result<DerivedParams> {
    params.validate()?;
    let pulse_duration_s = params.time_bandwidth_product / params.bandwidth_hz;
    Ok(DerivedParams {
        bandwidth_hz: params.bandwidth_hz,
        time_bandwidth_product: params.time_bandwidth_product,
        duty_factor: params.duty_factor,
        noise_power_w: noise_power(params.effective_temp_k, params.bandwidth_hz)?,
        radar_power_gain: radar_power_gain(params)?,
        comm_power_gain: comm_power_gain(params)?,
        pulse_duration_s,
        sigma_tau_proc_s: params.target_process_std_m / SPEED_OF_LIGHT_M_PER_S,
        gamma_sq: GAMMA_SQ_FLAT,
        pri_s: pulse_duration_s / params.duty_factor,
    })
}

/// A validated scenario bundled with its derived coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub params: SystemParams,
    pub derived: DerivedParams,
}

impl Scenario {
    pub fn new(params: SystemParams) -> Result<Self> {
        let derived = derive(&params)?;
        Ok(Scenario { params, derived })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn rel_eq(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() <= tol * b.abs().max(a.abs()),
            "expected {b}, got {a} (rel tol {tol})"
        );
    }

    #[test]
    fn noise_power_reference_values() {
        // direct products with the exact Boltzmann constant
        rel_eq(noise_power(1000.0, 5e6).unwrap(), 6.903245e-14, 1e-12);
        rel_eq(noise_power(290.0, 1.0).unwrap(), 4.0038821e-21, 1e-12);
        assert_eq!(noise_power(0.0, 5e6).unwrap(), 0.0);
    }

    #[test]
    fn noise_power_rejects_bad_inputs() {
        assert!(matches!(
            noise_power(-1.0, 5e6),
            Err(Error::InvalidParameter { name: "effective_temp_k", .. })
        ));
        assert!(noise_power(f64::NAN, 5e6).is_err());
        assert!(noise_power(290.0, 0.0).is_err());
    }

    #[test]
    fn radar_gain_reference_value() {
        // Hand evaluation of G^2 lambda^2 sigma / ((4 pi)^3 R^4) with
        // G = 1e3, lambda = 0.1 m (f chosen so c/f = 0.1), sigma = 10 m^2,
        // R = 1e5 m: 1e5 / (1984.4017... * 1e20) = 5.0393e-19.
        let p = SystemParams {
            carrier_freq_hz: SPEED_OF_LIGHT_M_PER_S / 0.1,
            ..SystemParams::default()
        };
        rel_eq(radar_power_gain(&p).unwrap(), 5.039302255187421e-19, 1e-12);
        // and with the default 3 GHz carrier (lambda = 0.0999308 m)
        rel_eq(
            radar_power_gain(&SystemParams::default()).unwrap(),
            5.032332221188687e-19,
            1e-12,
        );
    }

    #[test]
    fn radar_gain_r4_law() {
        let p = SystemParams::default();
        let g1 = radar_power_gain(&p).unwrap();
        let g2 = radar_power_gain(&SystemParams {
            radar_range_m: 2.0 * p.radar_range_m,
            ..p
        })
        .unwrap();
        rel_eq(g1 / g2, 16.0, 1e-12);
    }

    #[test]
    fn radar_gain_zero_rcs_means_no_echo() {
        let p = SystemParams {
            target_rcs_m2: 0.0,
            ..SystemParams::default()
        };
        assert_eq!(radar_power_gain(&p).unwrap(), 0.0);
    }

    #[test]
    fn radar_gain_rejects_zero_range() {
        let p = SystemParams {
            radar_range_m: 0.0,
            ..SystemParams::default()
        };
        assert!(radar_power_gain(&p).is_err());
    }

    #[test]
    fn comm_gain_reference_value() {
        // Friis with lambda = 0.1 m, R = 1e4 m, G_tx = 1, G_rx = 10
        let p = SystemParams {
            carrier_freq_hz: SPEED_OF_LIGHT_M_PER_S / 0.1,
            ..SystemParams::default()
        };
        rel_eq(comm_power_gain(&p).unwrap(), 6.332573977646112e-12, 1e-12);
        rel_eq(
            comm_power_gain(&SystemParams::default()).unwrap(),
            6.3238151746038355e-12,
            1e-12,
        );
    }

    #[test]
    fn comm_gain_r2_law_and_nulled_sidelobe() {
        let p = SystemParams::default();
        let g1 = comm_power_gain(&p).unwrap();
        let g2 = comm_power_gain(&SystemParams {
            comm_range_m: 2.0 * p.comm_range_m,
            ..p
        })
        .unwrap();
        rel_eq(g1 / g2, 4.0, 1e-12);
        let nulled = SystemParams {
            comm_rx_sidelobe_gain: 0.0,
            ..p
        };
        assert_eq!(comm_power_gain(&nulled).unwrap(), 0.0);
        assert!(comm_power_gain(&SystemParams {
            comm_range_m: 0.0,
            ..p
        })
        .is_err());
    }

    #[test]
    fn derive_reference_scenario() {
        let d = derive(&SystemParams::default()).unwrap();
        rel_eq(d.sigma_tau_proc_s, 3.3356409519815204e-7, 1e-12);
        assert_eq!(d.pulse_duration_s, 2e-5);
        assert_eq!(d.pri_s, 2e-3);
        rel_eq(d.gamma_sq, GAMMA_SQ_FLAT, 0.0);
        rel_eq(d.noise_power_w, 6.903245e-14, 1e-12);
    }

    #[test]
    fn derive_is_pure() {
        let p = SystemParams::default();
        let a = derive(&p).unwrap();
        let b = derive(&p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gains_ignore_transmit_power() {
        let p = SystemParams::default();
        let scaled = SystemParams {
            radar_power_w: 123.0 * p.radar_power_w,
            comm_power_w: 7.0 * p.comm_power_w,
            ..p
        };
        assert_eq!(
            radar_power_gain(&p).unwrap(),
            radar_power_gain(&scaled).unwrap()
        );
        assert_eq!(
            comm_power_gain(&p).unwrap(),
            comm_power_gain(&scaled).unwrap()
        );
    }

    #[test]
    fn validate_rejects_out_of_range_duty() {
        let p = SystemParams {
            duty_factor: 1.5,
            ..SystemParams::default()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { name: "duty_factor", .. })
        ));
    }

    #[test]
    fn faded_scales_only_gains() {
        let d = derive(&SystemParams::default()).unwrap();
        let f = d.faded(2.0, 0.5);
        assert_eq!(f.comm_power_gain, 2.0 * d.comm_power_gain);
        assert_eq!(f.radar_power_gain, 0.5 * d.radar_power_gain);
        assert_eq!(f.noise_power_w, d.noise_power_w);
        assert_eq!(f.pulse_duration_s, d.pulse_duration_s);
    }
}
