use criterion::{criterion_group, criterion_main, Criterion};
use dihom_core::corpus;
use dihom_core::homology::{chain_complex, homology, relative_complex};
use dihom_core::CoefficientRing;

const Z: CoefficientRing = CoefficientRing::Integers;

fn bench_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    for entry in corpus::standard().into_iter().filter(|e| {
        ["square/D3", "chain-4/D3", "parallel-pair-homotopy/D3"].contains(&e.name.as_str())
    }) {
        group.bench_function(&entry.name, |b| {
            b.iter(|| {
                let cx = chain_complex(&entry.category, Z).expect("complex");
                (0..cx.top())
                    .map(|n| homology(&cx, n).expect("homology").free_rank())
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn bench_relative(c: &mut Criterion) {
    let mut group = c.benchmark_group("relative");
    group.sample_size(20);
    for pair in corpus::relative_pairs(2).into_iter().take(2) {
        group.bench_function(&pair.name, |b| {
            b.iter(|| {
                let rel = relative_complex(&pair.category, &pair.sub_refs(), Z)
                    .expect("relative complex");
                let les = rel.les(rel.top() - 1).expect("les");
                (
                    les.exact,
                    rel.transfer_kernel(0).expect("transfer").injective,
                )
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_homology, bench_relative);
criterion_main!(benches);
