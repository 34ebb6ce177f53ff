//! Flat key=value configuration: one key per line, `#` comments, decibel
//! aliases for the antenna gains, defaults matching the reference scenario.

use std::collections::HashMap;

use coex_core::linkbudget::SystemParams;

/// Sweep grid sizes and the range sweep window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrids {
    pub alpha_points: usize,
    pub mu_points: usize,
    pub noma_points: usize,
    pub range_min_m: f64,
    pub range_max_m: f64,
    pub range_points: usize,
}

impl Default for SweepGrids {
    fn default() -> Self {
        SweepGrids {
            alpha_points: 2001,
            mu_points: 2001,
            noma_points: 201,
            range_min_m: 1e3,
            range_max_m: 5e4,
            range_points: 50,
        }
    }
}

/// Monte Carlo defaults; both can be overridden by CLI flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            trials: 100_000,
            seed: 1,
        }
    }
}

/// Fully parsed run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunConfig {
    pub scenario: SystemParams,
    pub grids: SweepGrids,
    pub mc: McConfig,
}

/// How a key's value is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyKind {
    Float,
    /// Decibel alias converted to a linear ratio on the way in.
    FloatDb,
    Count,
}

/// One documented configuration key.
pub struct KeySpec {
    pub name: &'static str,
    pub unit: &'static str,
    pub kind: KeyKind,
    pub description: &'static str,
}

/// Every accepted configuration key with its unit; the `--help` footer and
/// the parser both come from this table.
pub const KEY_SPECS: &[KeySpec] = &[
    KeySpec { name: "bandwidth_hz", unit: "Hz", kind: KeyKind::Float, description: "system bandwidth B" },
    KeySpec { name: "carrier_freq_hz", unit: "Hz", kind: KeyKind::Float, description: "carrier frequency f" },
    KeySpec { name: "effective_temp_k", unit: "K", kind: KeyKind::Float, description: "effective noise temperature" },
    KeySpec { name: "comm_range_m", unit: "m", kind: KeyKind::Float, description: "communication user range" },
    KeySpec { name: "comm_power_w", unit: "W", kind: KeyKind::Float, description: "total uplink transmit power P_c" },
    KeySpec { name: "comm_tx_gain", unit: "linear", kind: KeyKind::Float, description: "communication transmit antenna gain" },
    KeySpec { name: "comm_tx_gain_db", unit: "dBi", kind: KeyKind::FloatDb, description: "decibel alias for comm_tx_gain" },
    KeySpec { name: "comm_rx_sidelobe_gain", unit: "linear", kind: KeyKind::Float, description: "base-station sidelobe gain toward the user" },
    KeySpec { name: "comm_rx_sidelobe_gain_db", unit: "dBi", kind: KeyKind::FloatDb, description: "decibel alias for comm_rx_sidelobe_gain" },
    KeySpec { name: "radar_range_m", unit: "m", kind: KeyKind::Float, description: "radar target range" },
    KeySpec { name: "radar_gain", unit: "linear", kind: KeyKind::Float, description: "radar antenna gain" },
    KeySpec { name: "radar_gain_db", unit: "dBi", kind: KeyKind::FloatDb, description: "decibel alias for radar_gain" },
    KeySpec { name: "radar_power_w", unit: "W", kind: KeyKind::Float, description: "radar transmit power P_r" },
    KeySpec { name: "target_rcs_m2", unit: "m^2", kind: KeyKind::Float, description: "target radar cross section" },
    KeySpec { name: "target_process_std_m", unit: "m", kind: KeyKind::Float, description: "target process standard deviation" },
    KeySpec { name: "time_bandwidth_product", unit: "dimensionless", kind: KeyKind::Float, description: "radar pulse time-bandwidth product TB" },
    KeySpec { name: "duty_factor", unit: "dimensionless", kind: KeyKind::Float, description: "radar duty factor, pulse fraction of the PRI" },
    KeySpec { name: "alpha_grid_points", unit: "count", kind: KeyKind::Count, description: "points on the rate-splitting alpha sweep" },
    KeySpec { name: "mu_grid_points", unit: "count", kind: KeyKind::Count, description: "points on the OMA bandwidth-split sweep" },
    KeySpec { name: "noma_grid_points", unit: "count", kind: KeyKind::Count, description: "points on the NOMA power sweep" },
    KeySpec { name: "range_min_m", unit: "m", kind: KeyKind::Float, description: "smallest communication range in the range sweep" },
    KeySpec { name: "range_max_m", unit: "m", kind: KeyKind::Float, description: "largest communication range in the range sweep" },
    KeySpec { name: "range_grid_points", unit: "count", kind: KeyKind::Count, description: "points on the range sweep" },
    KeySpec { name: "trials", unit: "count", kind: KeyKind::Count, description: "Monte Carlo trials" },
    KeySpec { name: "seed", unit: "integer", kind: KeyKind::Count, description: "Monte Carlo seed" },
];

/// `--help` footer enumerating every configuration key with its unit.
pub fn key_help() -> String {
    let mut out = String::from(
        "Configuration file: flat `key = value` lines, `#` comments, all keys\n\
         optional (defaults reproduce the reference scenario). Keys:\n",
    );
    for spec in KEY_SPECS {
        out.push_str(&format!(
            "  {:<26} ({}): {}\n",
            spec.name, spec.unit, spec.description
        ));
    }
    out
}

/// A configuration problem, with the offending line when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line),
        message: message.into(),
    }
}

/// Logical key a spec maps onto (decibel aliases share their base key).
fn logical_name(name: &str) -> &str {
    name.strip_suffix("_db").unwrap_or(name)
}

struct Assignment {
    line: usize,
    value: f64,
}

/// Parse a configuration text into a [`RunConfig`] plus unknown-key
/// warnings. In strict mode unknown keys are errors instead.
pub fn parse_config(text: &str, strict: bool) -> Result<(RunConfig, Vec<String>), ConfigError> {
    let mut assignments: HashMap<&'static str, Assignment> = HashMap::new();
    let mut warnings = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let spec = match KEY_SPECS.iter().find(|s| s.name == key) {
            Some(spec) => spec,
            None => {
                let message = format!("unknown key `{key}`");
                if strict {
                    return Err(err(line_no, message));
                }
                warnings.push(format!("line {line_no}: {message} (ignored)"));
                continue;
            }
        };
        let parsed: f64 = value.parse().map_err(|_| {
            err(line_no, format!("value `{value}` for `{key}` is not a number"))
        })?;
        if !parsed.is_finite() {
            return Err(err(line_no, format!("value for `{key}` must be finite")));
        }
        let stored = match spec.kind {
            KeyKind::Float => parsed,
            KeyKind::FloatDb => 10f64.powf(parsed / 10.0),
            KeyKind::Count => {
                if parsed < 0.0 || parsed.fract() != 0.0 {
                    return Err(err(
                        line_no,
                        format!("value for `{key}` must be a nonnegative integer"),
                    ));
                }
                parsed
            }
        };
        let logical = logical_name(spec.name);
        let canonical = KEY_SPECS
            .iter()
            .find(|s| s.name == logical)
            .expect("every alias has a base key")
            .name;
        if let Some(previous) = assignments.get(canonical) {
            return Err(err(
                line_no,
                format!(
                    "`{key}` already assigned on line {} (decibel aliases count)",
                    previous.line
                ),
            ));
        }
        assignments.insert(
            canonical,
            Assignment {
                line: line_no,
                value: stored,
            },
        );
    }

    let mut config = RunConfig::default();
    let mut line_of: HashMap<&'static str, usize> = HashMap::new();
    for (name, assignment) in &assignments {
        line_of.insert(name, assignment.line);
        let v = assignment.value;
        match *name {
            "bandwidth_hz" => config.scenario.bandwidth_hz = v,
            "carrier_freq_hz" => config.scenario.carrier_freq_hz = v,
            "effective_temp_k" => config.scenario.effective_temp_k = v,
            "comm_range_m" => config.scenario.comm_range_m = v,
            "comm_power_w" => config.scenario.comm_power_w = v,
            "comm_tx_gain" => config.scenario.comm_tx_gain = v,
            "comm_rx_sidelobe_gain" => config.scenario.comm_rx_sidelobe_gain = v,
            "radar_range_m" => config.scenario.radar_range_m = v,
            "radar_gain" => config.scenario.radar_gain = v,
            "radar_power_w" => config.scenario.radar_power_w = v,
            "target_rcs_m2" => config.scenario.target_rcs_m2 = v,
            "target_process_std_m" => config.scenario.target_process_std_m = v,
            "time_bandwidth_product" => config.scenario.time_bandwidth_product = v,
            "duty_factor" => config.scenario.duty_factor = v,
            "alpha_grid_points" => config.grids.alpha_points = v as usize,
            "mu_grid_points" => config.grids.mu_points = v as usize,
            "noma_grid_points" => config.grids.noma_points = v as usize,
            "range_min_m" => config.grids.range_min_m = v,
            "range_max_m" => config.grids.range_max_m = v,
            "range_grid_points" => config.grids.range_points = v as usize,
            "trials" => config.mc.trials = v as u64,
            "seed" => config.mc.seed = v as u64,
            other => unreachable!("unhandled key {other}"),
        }
    }

    validate(&config, &line_of)?;
    Ok((config, warnings))
}

/// Field-level validation, pointing at the assigning line when available.
fn validate(config: &RunConfig, line_of: &HashMap<&'static str, usize>) -> Result<(), ConfigError> {
    if let Err(e) = config.scenario.validate() {
        let field = match &e {
            coex_core::Error::InvalidParameter { name, .. } => *name,
            _ => "",
        };
        return Err(ConfigError {
            line: line_of.get(field).copied(),
            message: e.to_string(),
        });
    }
    let grid_checks = [
        ("alpha_grid_points", config.grids.alpha_points),
        ("mu_grid_points", config.grids.mu_points),
        ("noma_grid_points", config.grids.noma_points),
    ];
    for (name, points) in grid_checks {
        if points < 2 {
            return Err(ConfigError {
                line: line_of.get(name).copied(),
                message: format!("`{name}` must be at least 2, got {points}"),
            });
        }
    }
    if config.grids.range_points < 1 {
        return Err(ConfigError {
            line: line_of.get("range_grid_points").copied(),
            message: "`range_grid_points` must be at least 1".into(),
        });
    }
    if config.grids.range_min_m <= 0.0 {
        return Err(ConfigError {
            line: line_of.get("range_min_m").copied(),
            message: "`range_min_m` must be positive".into(),
        });
    }
    if config.grids.range_points > 1 && config.grids.range_max_m <= config.grids.range_min_m {
        return Err(ConfigError {
            line: line_of.get("range_max_m").copied(),
            message: "`range_max_m` must exceed `range_min_m`".into(),
        });
    }
    if config.mc.trials < 1 {
        return Err(ConfigError {
            line: line_of.get("trials").copied(),
            message: "`trials` must be at least 1".into(),
        });
    }
    Ok(())
}

/// Serialize a configuration to the flat key=value format. Parsing the
/// output reproduces the input bit-for-bit (shortest-roundtrip decimals).
pub fn serialize_config(config: &RunConfig) -> String {
    let s = &config.scenario;
    let g = &config.grids;
    let m = &config.mc;
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    push("bandwidth_hz", format!("{}", s.bandwidth_hz));
    push("carrier_freq_hz", format!("{}", s.carrier_freq_hz));
    push("effective_temp_k", format!("{}", s.effective_temp_k));
    push("comm_range_m", format!("{}", s.comm_range_m));
    push("comm_power_w", format!("{}", s.comm_power_w));
    push("comm_tx_gain", format!("{}", s.comm_tx_gain));
    push("comm_rx_sidelobe_gain", format!("{}", s.comm_rx_sidelobe_gain));
    push("radar_range_m", format!("{}", s.radar_range_m));
    push("radar_gain", format!("{}", s.radar_gain));
    push("radar_power_w", format!("{}", s.radar_power_w));
    push("target_rcs_m2", format!("{}", s.target_rcs_m2));
    push("target_process_std_m", format!("{}", s.target_process_std_m));
    push("time_bandwidth_product", format!("{}", s.time_bandwidth_product));
    push("duty_factor", format!("{}", s.duty_factor));
    push("alpha_grid_points", format!("{}", g.alpha_points));
    push("mu_grid_points", format!("{}", g.mu_points));
    push("noma_grid_points", format!("{}", g.noma_points));
    push("range_min_m", format!("{}", g.range_min_m));
    push("range_max_m", format!("{}", g.range_max_m));
    push("range_grid_points", format!("{}", g.range_points));
    push("trials", format!("{}", m.trials));
    push("seed", format!("{}", m.seed));
    out
}
