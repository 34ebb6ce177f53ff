//! Sweep engines and frontier construction for the (R_est, R_c) plane:
//! inner-bound curves for the three schemes, upper-right convex hulls with
//! time-sharing interpretation, and the optimal-split-versus-range curve.

use crate::bounds::{self, PowerSplit, RatePoint, Scheme};
use crate::error::{require, Error, Result};
use crate::linkbudget::{derive, Scenario};

/// One swept inner-bound curve: one rate point per knob value.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub scheme: Scheme,
    pub knob_grid: Vec<f64>,
    pub points: Vec<RatePoint>,
}

/// Upper-right convex hull of a point set.
///
/// `points` is ordered by decreasing `r_est_bps` and increasing `r_c_bps`;
/// hull vertices are always a subset of the input points, identified by
/// `vertex_indices` into the input slice. Points that are inputs but not
/// vertices sit on or below a hull segment and are reachable by
/// time-sharing the adjacent vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Frontier {
    pub points: Vec<RatePoint>,
    pub vertex_indices: Vec<usize>,
}

/// `n` uniformly spaced values covering `[lo, hi]` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn validate_grid(grid: &[f64], name: &'static str, lo: f64, hi: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid(name));
    }
    for w in grid.windows(2) {
        // partial_cmp keeps NaN grids out as well
        if w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less) {
            return Err(Error::GridNotIncreasing(name));
        }
    }
    for &v in grid {
        require(v >= lo && v <= hi, name, v, "within the knob range")?;
    }
    Ok(())
}

/// Sweep the rate-splitting power split over `alpha_grid`.
pub fn sweep_rs(scenario: &Scenario, alpha_grid: &[f64]) -> Result<BoundCurve> {
    validate_grid(alpha_grid, "alpha", 0.0, 1.0)?;
    let points = alpha_grid
        .iter()
        .map(|&alpha| {
            let split = PowerSplit::new(alpha, scenario.params.comm_power_w)?;
            bounds::rs_point(&scenario.derived, &split, scenario.params.radar_power_w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve {
        scheme: Scheme::Rs,
        knob_grid: alpha_grid.to_vec(),
        points,
    })
}

/// Sweep the OMA bandwidth split over `mu_grid`.
pub fn sweep_oma(scenario: &Scenario, mu_grid: &[f64]) -> Result<BoundCurve> {
    validate_grid(mu_grid, "mu", 0.0, 1.0)?;
    let points = mu_grid
        .iter()
        .map(|&mu| {
            bounds::oma_bounds(
                &scenario.derived,
                mu,
                scenario.params.comm_power_w,
                scenario.params.radar_power_w,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve {
        scheme: Scheme::Oma,
        knob_grid: mu_grid.to_vec(),
        points,
    })
}

/// Sweep the NOMA used-power fraction over `fraction_grid`.
pub fn sweep_noma(scenario: &Scenario, fraction_grid: &[f64]) -> Result<BoundCurve> {
    validate_grid(fraction_grid, "power fraction", 0.0, 1.0)?;
    let p_c = scenario.params.comm_power_w;
    let points = fraction_grid
        .iter()
        .map(|&frac| {
            bounds::noma_bounds(
                &scenario.derived,
                frac * p_c,
                p_c,
                scenario.params.radar_power_w,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve {
        scheme: Scheme::Noma,
        knob_grid: fraction_grid.to_vec(),
        points,
    })
}

/// Cross product of (a - o) and (b - o) in the (r_est, r_c) plane.
fn cross(o: &RatePoint, a: &RatePoint, b: &RatePoint) -> f64 {
    (a.r_est_bps - o.r_est_bps) * (b.r_c_bps - o.r_c_bps)
        - (a.r_c_bps - o.r_c_bps) * (b.r_est_bps - o.r_est_bps)
}

/// Upper-right convex hull in the (R_est, R_c) plane.
///
/// Builds the upper convex chain over R_est and keeps its Pareto-efficient
/// part, from the rightmost maximum-R_c vertex to the maximum-R_est vertex.
/// Collinear middle points are dropped from the vertex set; ties in one
/// coordinate keep the point with the larger other coordinate.
pub fn upper_convex_hull(points: &[RatePoint]) -> Result<Frontier> {
    if points.is_empty() {
        return Err(Error::EmptyGrid("hull input"));
    }
    for p in points {
        require(p.r_est_bps >= 0.0, "r_est_bps", p.r_est_bps, "finite and >= 0")?;
        require(p.r_c_bps >= 0.0, "r_c_bps", p.r_c_bps, "finite and >= 0")?;
    }
    // sort by r_est ascending, r_c ascending; for equal r_est only the
    // largest r_c can be a hull vertex
    let mut sorted: Vec<usize> = (0..points.len()).collect();
    sorted.sort_by(|&a, &b| {
        points[a]
            .r_est_bps
            .total_cmp(&points[b].r_est_bps)
            .then(points[a].r_c_bps.total_cmp(&points[b].r_c_bps))
    });
    let mut order: Vec<usize> = Vec::with_capacity(sorted.len());
    for idx in sorted {
        match order.last() {
            Some(&last) if points[last].r_est_bps == points[idx].r_est_bps => {
                // same r_est: the ascending sort makes this the larger r_c
                *order.last_mut().expect("nonempty") = idx;
            }
            _ => order.push(idx),
        }
    }

    // monotone upper chain; popping on cross >= 0 removes collinear middles
    let mut chain: Vec<usize> = Vec::with_capacity(order.len());
    for &idx in &order {
        while chain.len() >= 2 {
            let o = &points[chain[chain.len() - 2]];
            let a = &points[chain[chain.len() - 1]];
            if cross(o, a, &points[idx]) >= 0.0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(idx);
    }

    // Pareto part: from the rightmost max-r_c vertex to the r_est maximum
    let top = chain
        .iter()
        .enumerate()
        .max_by(|a, b| {
            points[*a.1]
                .r_c_bps
                .total_cmp(&points[*b.1].r_c_bps)
                .then(points[*a.1].r_est_bps.total_cmp(&points[*b.1].r_est_bps))
        })
        .map(|(i, _)| i)
        .expect("chain is nonempty");
    let ne_chain = &chain[top..];

    // frontier order: decreasing r_est, increasing r_c
    let vertex_indices: Vec<usize> = ne_chain.iter().rev().copied().collect();
    let points = vertex_indices.iter().map(|&i| points[i]).collect();
    Ok(Frontier {
        points,
        vertex_indices,
    })
}

/// Area of the operating region enclosed by the frontier, by trapezoid
/// integration of R_c over R_est.
///
/// The region is the free-disposal closure of the hull: it extends left of
/// the maximum-R_c vertex at constant R_c down to R_est = 0 (operating at
/// that vertex while ignoring surplus estimation rate), so a single-point
/// frontier encloses the rectangle R_est x R_c.
pub fn frontier_area(frontier: &Frontier) -> f64 {
    // points are ordered by decreasing r_est; walk them right-to-left
    let first = match frontier.points.last() {
        Some(p) => p,
        None => return 0.0,
    };
    // plateau from R_est = 0 to the max-R_c vertex
    let mut area = first.r_c_bps * first.r_est_bps;
    for w in frontier.points.windows(2) {
        let (right, left) = (&w[0], &w[1]);
        area += (right.r_est_bps - left.r_est_bps) * (right.r_c_bps + left.r_c_bps) / 2.0;
    }
    area
}

/// Largest amount by which any input point rises above the frontier,
/// relative to the local frontier height. Zero (up to rounding) certifies
/// that the frontier dominates its inputs.
pub fn max_violation_above(frontier: &Frontier, points: &[RatePoint]) -> f64 {
    let mut worst: f64 = 0.0;
    for p in points {
        let bound = frontier_height_at(frontier, p.r_est_bps);
        if p.r_c_bps > bound {
            let scale = bound.abs().max(p.r_c_bps.abs()).max(f64::MIN_POSITIVE);
            worst = worst.max((p.r_c_bps - bound) / scale);
        }
    }
    worst
}

/// Frontier height (maximum achievable R_c) at a given R_est.
fn frontier_height_at(frontier: &Frontier, r_est: f64) -> f64 {
    let pts = &frontier.points;
    let top = pts[pts.len() - 1];
    if r_est <= top.r_est_bps {
        return top.r_c_bps;
    }
    // segments run from pts[i+1] (left) to pts[i] (right)
    for w in pts.windows(2) {
        let (right, left) = (&w[0], &w[1]);
        if r_est <= right.r_est_bps && r_est >= left.r_est_bps {
            let span = right.r_est_bps - left.r_est_bps;
            if span == 0.0 {
                return left.r_c_bps.max(right.r_c_bps);
            }
            let t = (r_est - left.r_est_bps) / span;
            return left.r_c_bps + t * (right.r_c_bps - left.r_c_bps);
        }
    }
    // beyond the maximum R_est nothing is achievable
    0.0
}

/// Optimal split recomputed across communication ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeAlpha {
    pub range_m: f64,
    pub alpha_raw: f64,
    pub alpha_clamped: f64,
}

/// Recompute `|b_c|^2` and the optimal split for each communication range.
pub fn sweep_alpha_vs_range(scenario: &Scenario, range_grid_m: &[f64]) -> Result<Vec<RangeAlpha>> {
    if range_grid_m.is_empty() {
        return Err(Error::EmptyGrid("range"));
    }
    range_grid_m
        .iter()
        .map(|&range_m| {
            require(range_m > 0.0, "comm_range_m", range_m, "> 0")?;
            let params = crate::linkbudget::SystemParams {
                comm_range_m: range_m,
                ..scenario.params
            };
            let derived = derive(&params)?;
            let opt = bounds::alpha_opt(&derived, params.comm_power_w, params.radar_power_w);
            Ok(RangeAlpha {
                range_m,
                alpha_raw: opt.raw,
                alpha_clamped: opt.clamped,
            })
        })
        .collect()
}
