//! Throughput of the data-parallel entry points against explicit sequential
//! baselines.
//!
//! With default features the library paths fan out over rayon; building the
//! bench with `--no-default-features` pins them to the sequential fallback,
//! so comparing the two runs isolates the parallel speedup.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use segment_spectra::measure::{rho_hat, rho_hat_batch, FrequencyPoint};
use segment_spectra::scalar::Scalar;
use segment_spectra::spectra::{diagonal_half_integer_set, verify_orthogonal, SpectrumCandidate};
use segment_spectra::tiling::{tiling_identity_check, Lambda1};
use segment_spectra::zeroset::{line_roots_batch, LineWindow};
use segment_spectra::SymmetricAdditiveMeasure;

fn sam() -> SymmetricAdditiveMeasure {
    SymmetricAdditiveMeasure::new(Scalar::from_ratio(-1, 4))
}

fn grid(n: usize) -> Vec<FrequencyPoint> {
    (0..n)
        .map(|i| {
            let s = i as f64 / n as f64;
            FrequencyPoint::new(-40.0 + 80.0 * s, 40.0 - 79.0 * s)
        })
        .collect()
}

fn bench_transform_batch(c: &mut Criterion) {
    let m = sam();
    let points = grid(200_000);
    let mut group = c.benchmark_group("transform_batch");
    group.bench_function(BenchmarkId::new("library", points.len()), |b| {
        b.iter(|| rho_hat_batch(&m, &points))
    });
    group.bench_function(BenchmarkId::new("sequential", points.len()), |b| {
        b.iter(|| points.iter().map(|p| rho_hat(&m, p)).collect::<Vec<_>>())
    });
    group.finish();
}

fn bench_orthogonality(c: &mut Criterion) {
    let m = SymmetricAdditiveMeasure::new(Scalar::zero());
    let candidate = SpectrumCandidate::PeriodicLine(diagonal_half_integer_set());
    let points = candidate.enumerate(120.0);
    let mut group = c.benchmark_group("orthogonality");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new("library", points.len()), |b| {
        b.iter(|| verify_orthogonal(&m, &candidate, 120.0, 1e-10).unwrap())
    });
    group.bench_function(BenchmarkId::new("sequential", points.len()), |b| {
        b.iter(|| {
            let mut violations = 0usize;
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let d = points[i].sub(&points[j]);
                    if !d.is_origin() && rho_hat(&m, &d).norm() > 1e-10 {
                        violations += 1;
                    }
                }
            }
            violations
        })
    });
    group.finish();
}

fn bench_identity_grid(c: &mut Criterion) {
    let lam = Lambda1::Periodic {
        period: 0.5,
        offsets: vec![0.0],
    };
    let xs: Vec<f64> = (0..=500).map(|i| i as f64 / 500.0).collect();
    let mut group = c.benchmark_group("identity_grid");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new("library", xs.len()), |b| {
        b.iter(|| tiling_identity_check(&lam, 2.0, &xs, 400.0).unwrap())
    });
    group.bench_function(BenchmarkId::new("sequential", xs.len()), |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| {
                    let lo = ((x - 400.0) * 2.0).ceil() as i64;
                    let hi = ((x + 400.0) * 2.0).floor() as i64;
                    (lo..=hi)
                        .map(|n| {
                            let s = segment_spectra::sinc(x - n as f64 / 2.0);
                            s * s
                        })
                        .sum::<f64>()
                })
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn bench_line_scan(c: &mut Criterion) {
    let m = sam();
    let windows: Vec<LineWindow> = (-24i64..=24)
        .map(|k| LineWindow::new(k, -12.0, 12.0).unwrap())
        .collect();
    let mut group = c.benchmark_group("line_root_scan");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new("library", windows.len()), |b| {
        b.iter(|| line_roots_batch(&m, &windows, 0.05).unwrap())
    });
    group.bench_function(BenchmarkId::new("sequential", windows.len()), |b| {
        b.iter(|| {
            windows
                .iter()
                .flat_map(|w| segment_spectra::line_roots(&m, w, 0.05).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_transform_batch,
    bench_orthogonality,
    bench_identity_grid,
    bench_line_scan
);
criterion_main!(benches);
