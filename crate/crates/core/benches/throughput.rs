//! Monte Carlo and GF(2) throughput.
//!
//! Compare data-parallel and sequential execution with
//! `cargo bench -p eaqc` and `cargo bench -p eaqc --no-default-features`;
//! benchmark ids carry the execution mode. Parallel builds also time a
//! one-thread pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use eaqc::channel::ChannelParams;
use eaqc::decoder::DecoderKind;
use eaqc::eacode::{build_theorem5, build_theorem8};
use eaqc::exec;
use eaqc::girth::girth_bfs;
use eaqc::harness::{run_trials, SimConfig};

fn mode() -> &'static str {
    if exec::is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

fn trials(c: &mut Criterion) {
    let code = build_theorem5(7, 3, 3).unwrap();
    let mut group = c.benchmark_group("trials-49");
    group.sample_size(10);
    let n = 400;
    group.throughput(Throughput::Elements(n));
    for kind in [DecoderKind::Binary, DecoderKind::Quaternary] {
        let cfg = SimConfig {
            channel: ChannelParams::new(0.03, 0.0).unwrap(),
            decoder: kind,
            lmax: 100,
            trials: n,
            seed: 1,
        };
        group.bench_with_input(BenchmarkId::new(mode(), kind), &cfg, |b, cfg| {
            b.iter(|| run_trials(&code, cfg).unwrap())
        });
        if exec::is_parallel() {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            group.bench_with_input(BenchmarkId::new("one-thread", kind), &cfg, |b, cfg| {
                b.iter(|| pool.install(|| run_trials(&code, cfg).unwrap()))
            });
        }
    }
    group.finish();
}

fn gf2(c: &mut Criterion) {
    let code = build_theorem8(6, 2).unwrap();
    let mut group = c.benchmark_group("gf2");
    group.bench_function("rank-hx-390", |b| b.iter(|| code.hx.rank()));
    group.bench_function("hx-hzT-product", |b| b.iter(|| code.hx.mul_transpose(&code.hz).unwrap()));
    group.bench_function(BenchmarkId::new("girth-bfs-390", mode()), |b| {
        b.iter(|| girth_bfs(&code.hx, 6))
    });
    group.finish();
}

criterion_group!(benches, trials, gf2);
criterion_main!(benches);
