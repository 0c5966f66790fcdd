use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dihom_core::exactlin::{smith_normal_form_with, PivotStrategy};
use dihom_core::homology::boundary_matrix;
use dihom_core::scat::{build_from_poset, Poset};
use dihom_core::{CoefficientRing, Matrix};

/// Boundary matrices `d_1` and `d_2` of grid posets at truncation 2.
fn inputs() -> Vec<(String, Matrix)> {
    let mut out = Vec::new();
    for (r, c) in [(2, 2), (2, 3), (3, 3)] {
        let cat = build_from_poset(&Poset::grid(r, c), 2).expect("grid poset");
        for n in 1..=2 {
            let m = boundary_matrix(&cat, n, CoefficientRing::Integers).expect("boundary");
            out.push((format!("grid{r}x{c}/d{n}"), m));
        }
    }
    out
}

fn bench_snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for (name, m) in inputs() {
        for (label, strategy) in [
            ("min-abs", PivotStrategy::MinAbs),
            ("first-nonzero", PivotStrategy::FirstNonzero),
        ] {
            group.bench_with_input(BenchmarkId::new(label, &name), &m, |b, m| {
                b.iter(|| smith_normal_form_with(m, strategy).expect("snf"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_snf);
criterion_main!(benches);
