use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secgain::code::linear::weight_counts;
use secgain::code::Word;
use secgain::convcode::{scan_convolutional, ScanRanking};
use secgain::secrecy::{secrecy_curve, strong_secrecy_gain, GainOptions};
use secgain::wiretap::{load_scheme, simulate_wiretap, SimOptions};
use std::hint::black_box;
use std::path::PathBuf;

const MODES: [(&str, bool); 2] = [("sequential", false), ("parallel", true)];

fn corpus(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn enumerator(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 44;
    // systematic [44,22]: identity on the low half, random bits on the high half
    let rows: Vec<Word> = (0..22).map(|i| (1u128 << i) | ((rng.random::<u32>() as u128 & 0x3f_ffff) << 22)).collect();
    let mut g = c.benchmark_group("weight_enumerator_k22");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| b.iter(|| weight_counts(black_box(&rows), n, par)));
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan_m2_L9");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| scan_convolutional(2, 9, ScanRanking::Gain, par).unwrap())
        });
    }
    g.finish();
}

fn secrecy(c: &mut Criterion) {
    let code = secgain::code::io::load_code(corpus("codes/c20.json"), Default::default()).unwrap();
    let w = code.weight_enumerator().unwrap().clone();
    let mut g = c.benchmark_group("secrecy_c20");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_with_input(BenchmarkId::new("curve_401", name), &par, |b, &par| {
            b.iter(|| secrecy_curve(&w, -10.0, 10.0, 401, par).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("strong_gain", name), &par, |b, &par| {
            b.iter(|| strong_secrecy_gain(&w, &GainOptions { parallel: par, ..GainOptions::default() }).unwrap())
        });
    }
    g.finish();
}

fn simulation(c: &mut Criterion) {
    let scheme = load_scheme(corpus("schemes/star4_full.json")).unwrap();
    let mut g = c.benchmark_group("simulate_1e5");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| simulate_wiretap(&scheme, 0.5, 100_000, 42, SimOptions { parallel: par }).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumerator, scan, secrecy, simulation);
criterion_main!(benches);
