//! Benchmarks for the hot paths: closed-form sweeps, hull construction,
//! Fisher-information evaluation and Monte Carlo trial loops.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use coex_core::bounds::{self, Scheme};
use coex_core::fim;
use coex_core::linkbudget::{Scenario, SystemParams};
use coex_core::montecarlo::{self, FadingConfig};
use coex_core::tradeoff::{self, uniform_grid};

fn scenario() -> Scenario {
    Scenario::new(SystemParams::default()).unwrap()
}

fn bench_sweeps(c: &mut Criterion) {
    let s = scenario();
    let grid = uniform_grid(0.0, 1.0, 2001);
    c.bench_function("sweep_rs_2001", |b| {
        b.iter(|| tradeoff::sweep_rs(black_box(&s), black_box(&grid)).unwrap())
    });
    let curve = tradeoff::sweep_rs(&s, &grid).unwrap();
    c.bench_function("upper_convex_hull_2001", |b| {
        b.iter(|| tradeoff::upper_convex_hull(black_box(&curve.points)).unwrap())
    });
    c.bench_function("alpha_opt_closed_form", |b| {
        b.iter(|| {
            bounds::alpha_opt(
                black_box(&s.derived),
                s.params.comm_power_w,
                s.params.radar_power_w,
            )
        })
    });
}

fn bench_fim(c: &mut Criterion) {
    let s = scenario();
    let pulse = fim::make_flat_pulse(100, 4, s.params.bandwidth_hz).unwrap();
    let h = fim::flat_interference(100, 4, s.params.bandwidth_hz).unwrap();
    let levels = fim::SignalLevels {
        echo_power_w: s.derived.radar_power_gain * s.params.radar_power_w,
        interference_power_w: s.derived.comm_power_gain * 0.4,
        noise_power_w: s.derived.noise_power_w,
    };
    c.bench_function("fim_sherman_morrison_tb100_os4", |b| {
        b.iter(|| fim::fim_sherman_morrison(black_box(&pulse), black_box(&h), black_box(&levels)))
    });
    let small = fim::make_flat_pulse(50, 2, s.params.bandwidth_hz).unwrap();
    let small_h = fim::flat_interference(50, 2, s.params.bandwidth_hz).unwrap();
    c.bench_function("fim_exact_solve_tb50_os2", |b| {
        b.iter(|| fim::fim_exact(black_box(&small), black_box(&small_h), black_box(&levels)))
    });
}

fn bench_montecarlo(c: &mut Criterion) {
    let s = scenario();
    c.bench_function("ergodic_rates_rs_10k_trials", |b| {
        b.iter(|| {
            montecarlo::ergodic_rates(
                black_box(&s),
                Scheme::Rs,
                0.01,
                10_000,
                7,
                FadingConfig::default(),
            )
            .unwrap()
        })
    });
    let pulse = fim::make_flat_pulse(100, 4, s.params.bandwidth_hz).unwrap();
    let levels = fim::SignalLevels {
        echo_power_w: s.derived.radar_power_gain * s.params.radar_power_w * 1e3,
        interference_power_w: 0.0,
        noise_power_w: s.derived.noise_power_w,
    };
    let dt = 1.0 / pulse.sample_rate_hz;
    c.bench_function("delay_estimation_50_trials", |b| {
        b.iter(|| {
            montecarlo::simulate_delay_estimation(
                black_box(&pulse),
                black_box(&levels),
                None,
                2.0 * dt,
                50,
                9,
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, bench_sweeps, bench_fim, bench_montecarlo);
criterion_main!(benches);
