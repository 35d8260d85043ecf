use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use treescape::{decode_tree, rspr_forest_keys, Encoder, Rootedness, Strictness};
use treescape_bench::random_corpus;

fn encode(c: &mut Criterion) {
    let mut group = c.benchmark_group("sdlnewick");
    for n in [64, 256, 1024] {
        let tree = random_corpus(n, 1, Rootedness::Unrooted, 3).pop().unwrap();
        let mut encoder = Encoder::new();
        let mut buf = Vec::new();
        group.bench_with_input(BenchmarkId::new("encode", n), &tree, |b, tree| {
            b.iter(|| {
                buf.clear();
                encoder.tree(tree, &mut buf);
                buf.len()
            })
        });
        buf.clear();
        encoder.tree(&tree, &mut buf);
        group.bench_with_input(BenchmarkId::new("decode", n), &buf, |b, text| {
            b.iter(|| decode_tree(text, Strictness::Strict).unwrap())
        });
    }
    group.finish();
}

fn forest_keys(c: &mut Criterion) {
    let mut group = c.benchmark_group("rspr_keys");
    group.sample_size(20);
    for n in [64, 128, 256] {
        let tree = random_corpus(n, 1, Rootedness::Rooted, 4).pop().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &tree, |b, tree| {
            b.iter(|| rspr_forest_keys(tree).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, encode, forest_keys);
criterion_main!(benches);
