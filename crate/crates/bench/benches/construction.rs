use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use treescape::{construct_graph, MoveKind, Rootedness};
use treescape_bench::{random_corpus, walk_corpus};

fn by_n(c: &mut Criterion) {
    let m = 100;
    for (name, kind, rootedness) in [
        ("rspr", MoveKind::Spr, Rootedness::Rooted),
        ("uspr", MoveKind::Spr, Rootedness::Unrooted),
        ("nni", MoveKind::Nni, Rootedness::Unrooted),
        ("tbr", MoveKind::Tbr, Rootedness::Unrooted),
    ] {
        let mut group = c.benchmark_group(format!("construct/{name}"));
        group.sample_size(10);
        group.throughput(Throughput::Elements(m as u64));
        for n in [32, 64, 128] {
            let trees = random_corpus(n, m, rootedness, 1);
            group.bench_with_input(BenchmarkId::new("n", n), &trees, |b, trees| {
                b.iter(|| construct_graph(trees, kind).unwrap())
            });
        }
        group.finish();
    }
}

fn by_m(c: &mut Criterion) {
    let n = 32;
    let mut group = c.benchmark_group("construct/rspr_walk");
    group.sample_size(10);
    for m in [50, 100, 200] {
        let trees = walk_corpus(n, m, Rootedness::Rooted, 2);
        group.throughput(Throughput::Elements(m as u64));
        group.bench_with_input(BenchmarkId::new("m", m), &trees, |b, trees| {
            b.iter(|| construct_graph(trees, MoveKind::Spr).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, by_n, by_m);
criterion_main!(benches);
