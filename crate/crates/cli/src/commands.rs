//! Subcommand implementations. Each produces a [`Table`]; the caller
//! handles formatting and file output.

use coex_core::bounds::{self, PowerSplit, Scheme};
use coex_core::fim;
use coex_core::linkbudget::Scenario;
use coex_core::montecarlo::{self, FadingConfig};
use coex_core::tradeoff::{self, uniform_grid};

use crate::config::RunConfig;
use crate::output::{Cell, Table};
use crate::CliError;

fn scenario(config: &RunConfig) -> Result<Scenario, CliError> {
    Scenario::new(config.scenario).map_err(CliError::numeric)
}

fn rate_row(point: &bounds::RatePoint) -> Vec<Cell> {
    vec![
        point.scheme.as_str().into(),
        point.knob.into(),
        point.r_est_bps.into(),
        point.r_c_bps.into(),
    ]
}

/// Closed-form operating points at canonical knobs for every scheme.
pub fn bounds_table(config: &RunConfig) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let p_c = s.params.comm_power_w;
    let p_r = s.params.radar_power_w;
    let opt = bounds::alpha_opt(&s.derived, p_c, p_r);
    let mut table = Table::new(&["scheme", "knob", "r_est_bps", "r_c_bps"]);
    for alpha in [0.0, opt.clamped, 1.0] {
        let split = PowerSplit::new(alpha, p_c).map_err(CliError::numeric)?;
        let point = bounds::rs_point(&s.derived, &split, p_r).map_err(CliError::numeric)?;
        table.push(rate_row(&point));
    }
    for mu in [0.0, 0.5, 1.0] {
        let point = bounds::oma_bounds(&s.derived, mu, p_c, p_r).map_err(CliError::numeric)?;
        table.push(rate_row(&point));
    }
    for fraction in [0.0, 1.0] {
        let point = bounds::noma_bounds(&s.derived, fraction * p_c, p_c, p_r)
            .map_err(CliError::numeric)?;
        table.push(rate_row(&point));
    }
    Ok(table)
}

/// Which schemes a sweep-style subcommand covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeSelection {
    One(Scheme),
    All,
}

impl SchemeSelection {
    fn schemes(&self) -> Vec<Scheme> {
        match self {
            SchemeSelection::One(s) => vec![*s],
            SchemeSelection::All => vec![Scheme::Rs, Scheme::Oma, Scheme::Noma],
        }
    }
}

fn sweep_curve(
    s: &Scenario,
    scheme: Scheme,
    config: &RunConfig,
    grid_override: Option<usize>,
) -> Result<tradeoff::BoundCurve, CliError> {
    let points = |default: usize| grid_override.unwrap_or(default).max(2);
    let curve = match scheme {
        Scheme::Rs => tradeoff::sweep_rs(s, &uniform_grid(0.0, 1.0, points(config.grids.alpha_points))),
        Scheme::Oma => tradeoff::sweep_oma(s, &uniform_grid(0.0, 1.0, points(config.grids.mu_points))),
        Scheme::Noma => {
            tradeoff::sweep_noma(s, &uniform_grid(0.0, 1.0, points(config.grids.noma_points)))
        }
    };
    curve.map_err(CliError::numeric)
}

/// Inner-bound curves: one row per grid point.
pub fn sweep_table(
    config: &RunConfig,
    selection: SchemeSelection,
    grid_override: Option<usize>,
) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let mut table = Table::new(&["scheme", "knob", "r_est_bps", "r_c_bps"]);
    for scheme in selection.schemes() {
        let curve = sweep_curve(&s, scheme, config, grid_override)?;
        for point in &curve.points {
            table.push(rate_row(point));
        }
    }
    Ok(table)
}

/// Sweep rows annotated with hull membership. Per-scheme by default;
/// `combined` pools every selected scheme's points into one hull.
pub fn hull_table(
    config: &RunConfig,
    selection: SchemeSelection,
    combined: bool,
    grid_override: Option<usize>,
) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let mut table = Table::new(&["scheme", "knob", "r_est_bps", "r_c_bps", "on_hull"]);
    let curves: Vec<tradeoff::BoundCurve> = selection
        .schemes()
        .into_iter()
        .map(|scheme| sweep_curve(&s, scheme, config, grid_override))
        .collect::<Result<_, _>>()?;

    let mut emit = |points: &[bounds::RatePoint]| -> Result<(), CliError> {
        let frontier = tradeoff::upper_convex_hull(points).map_err(CliError::numeric)?;
        let mut on_hull = vec![false; points.len()];
        for &idx in &frontier.vertex_indices {
            on_hull[idx] = true;
        }
        for (point, flag) in points.iter().zip(on_hull) {
            let mut row = rate_row(point);
            row.push(flag.into());
            table.push(row);
        }
        Ok(())
    };

    if combined {
        let all: Vec<bounds::RatePoint> = curves.iter().flat_map(|c| c.points.clone()).collect();
        emit(&all)?;
    } else {
        for curve in &curves {
            emit(&curve.points)?;
        }
    }
    Ok(table)
}

/// Closed-form optimal split with its embedded grid-search oracle.
pub fn alpha_opt_table(config: &RunConfig) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let p_c = s.params.comm_power_w;
    let p_r = s.params.radar_power_w;
    let opt = bounds::alpha_opt(&s.derived, p_c, p_r);

    let step = 1e-5;
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut k = 0u64;
    let mut alpha = 0.0;
    while alpha <= 1.0 {
        let split = PowerSplit::new(alpha, p_c).map_err(CliError::numeric)?;
        let sum = bounds::dir_rs(&s.derived, &split, p_r)
            .map_err(CliError::numeric)?
            .sum_bps();
        if sum > best.0 {
            best = (sum, alpha);
        }
        k += 1;
        alpha = k as f64 * step;
    }

    let split = PowerSplit::new(opt.clamped, p_c).map_err(CliError::numeric)?;
    let rates = bounds::dir_rs(&s.derived, &split, p_r).map_err(CliError::numeric)?;
    let mut table = Table::new(&[
        "alpha_raw",
        "alpha_clamped",
        "alpha_grid_argmax",
        "quadratic_residual",
        "quadratic_residual_rel",
        "r_c1_bps",
        "r_c2_bps",
        "r_sum_bps",
    ]);
    table.push(vec![
        opt.raw.into(),
        opt.clamped.into(),
        best.1.into(),
        opt.residual.into(),
        opt.residual_rel.into(),
        rates.r_c1_bps.into(),
        rates.r_c2_bps.into(),
        rates.sum_bps().into(),
    ]);
    Ok(table)
}

/// Ergodic Monte Carlo means with standard errors at the given knobs.
pub fn montecarlo_table(
    config: &RunConfig,
    scheme: Scheme,
    knobs: &[f64],
    trials: u64,
    seed: u64,
    fading: FadingConfig,
) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let default_knobs = match scheme {
        Scheme::Rs => {
            let opt = bounds::alpha_opt(&s.derived, s.params.comm_power_w, s.params.radar_power_w);
            vec![0.0, opt.clamped, 1.0]
        }
        Scheme::Oma | Scheme::Noma => vec![0.0, 0.5, 1.0],
    };
    let knobs = if knobs.is_empty() { &default_knobs } else { knobs };
    let mut table = Table::new(&[
        "scheme",
        "knob",
        "r_est_mean_bps",
        "r_est_std_error_bps",
        "r_c_mean_bps",
        "r_c_std_error_bps",
        "n_trials",
        "seed",
    ]);
    for &knob in knobs {
        let point = montecarlo::ergodic_rates(&s, scheme, knob, trials, seed, fading)
            .map_err(CliError::numeric)?;
        table.push(vec![
            scheme.as_str().into(),
            knob.into(),
            point.r_est.mean.into(),
            point.r_est.std_error.into(),
            point.r_c.mean.into(),
            point.r_c.std_error.into(),
            point.r_est.n_trials.into(),
            point.r_est.seed.into(),
        ]);
    }
    Ok(table)
}

/// Sampled-pulse Fisher information along all three routes against the
/// closed-form CRLB.
pub fn validate_crlb_table(
    config: &RunConfig,
    alpha: Option<f64>,
    oversample: usize,
    aligned: bool,
) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let p_c = s.params.comm_power_w;
    let p_r = s.params.radar_power_w;
    let alpha = alpha.unwrap_or_else(|| bounds::alpha_opt(&s.derived, p_c, p_r).clamped);
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CliError::Numeric(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let tb = s.params.time_bandwidth_product;
    if tb.fract() != 0.0 || tb < 2.0 {
        return Err(CliError::Numeric(format!(
            "sampled-pulse validation needs an integer time_bandwidth_product >= 2, got {tb}"
        )));
    }
    let p_c2 = alpha * p_c;
    let closed = bounds::crlb_delay(&s.derived, p_c2, p_r).map_err(CliError::numeric)?;
    let pulse = fim::make_flat_pulse(tb as usize, oversample, s.params.bandwidth_hz)
        .map_err(CliError::numeric)?;
    let interference = if aligned {
        fim::aligned_interference(&pulse)
    } else {
        fim::flat_interference(tb as usize, oversample, s.params.bandwidth_hz)
            .map_err(CliError::numeric)?
    };
    let levels = fim::SignalLevels {
        echo_power_w: s.derived.radar_power_gain * p_r,
        interference_power_w: s.derived.comm_power_gain * p_c2,
        noise_power_w: s.derived.noise_power_w,
    };

    let forms: [(&str, f64); 3] = [
        (
            "exact",
            fim::fim_exact(&pulse, &interference, &levels).map_err(CliError::numeric)?,
        ),
        (
            "sherman_morrison",
            fim::fim_sherman_morrison(&pulse, &interference, &levels)
                .map_err(CliError::numeric)?,
        ),
        (
            "pessimistic",
            fim::fim_pessimistic(&pulse, &levels).map_err(CliError::numeric)?,
        ),
    ];
    let mut table = Table::new(&["form", "fim", "crlb_s2", "closed_form_crlb_s2", "rel_err"]);
    for (name, value) in forms {
        let crlb = fim::crlb_from_fim(value).map_err(CliError::numeric)?;
        table.push(vec![
            name.into(),
            value.into(),
            crlb.into(),
            closed.into(),
            ((crlb - closed).abs() / closed).into(),
        ]);
    }
    Ok(table)
}

/// Optimal split across communication ranges.
pub fn alpha_vs_range_table(config: &RunConfig) -> Result<Table, CliError> {
    let s = scenario(config)?;
    let g = &config.grids;
    let ranges = uniform_grid(g.range_min_m, g.range_max_m, g.range_points);
    let rows = tradeoff::sweep_alpha_vs_range(&s, &ranges).map_err(CliError::numeric)?;
    let mut table = Table::new(&["comm_range_m", "alpha_raw", "alpha_clamped"]);
    for row in rows {
        table.push(vec![
            row.range_m.into(),
            row.alpha_raw.into(),
            row.alpha_clamped.into(),
        ]);
    }
    Ok(table)
}
