use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use momentcone_bench::{dense_matrix, hexagon, square, square_product, standard};
use momentcone_core::{arrangement, check_good, compute_pi1, minor_gcd, snf, witness_for_face, Cone, ConeSpec};

fn bench_snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf");
    for size in [3, 6, 10] {
        let m = dense_matrix(size, size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| b.iter(|| snf(m)));
    }
    group.finish();

    let m = dense_matrix(6, 6);
    c.bench_function("minor_gcd/6x6", |b| b.iter(|| minor_gcd(&m, 6).unwrap()));
}

fn bench_pipeline(c: &mut Criterion) {
    let fixtures: Vec<(&str, ConeSpec)> = vec![
        ("standard6", standard(6)),
        ("square", square()),
        ("hexagon", hexagon()),
        ("square-product", square_product()),
    ];
    let mut group = c.benchmark_group("pipeline");
    for (name, spec) in &fixtures {
        group.bench_with_input(BenchmarkId::new("validate", name), spec, |b, s| {
            b.iter(|| Cone::new(s).unwrap())
        });
        let cone = Cone::new(spec).unwrap();
        group.bench_with_input(BenchmarkId::new("invariants", name), &cone, |b, cone| {
            b.iter(|| {
                if check_good(cone).good() {
                    compute_pi1(cone).unwrap();
                    arrangement(cone).unwrap();
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("witnesses", name), &cone, |b, cone| {
            b.iter(|| {
                for face in cone.lattice().faces().iter().filter(|f| !f.is_zero()) {
                    witness_for_face(cone, face).unwrap();
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_snf, bench_pipeline);
criterion_main!(benches);
