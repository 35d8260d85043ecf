//! Seeded tree corpora shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treescape::oracle::{random_neighbor, random_tree};
use treescape::{OracleMove, Rootedness, Tree};

/// `m` independent random trees on `n` leaves.
pub fn random_corpus(n: usize, m: usize, rootedness: Rootedness, seed: u64) -> Vec<Tree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| random_tree(n, rootedness, &mut rng))
        .collect()
}

/// A random walk of `m` trees, each one SPR move from the previous, so
/// the graph is dense enough for edge handling to show up.
pub fn walk_corpus(n: usize, m: usize, rootedness: Rootedness, seed: u64) -> Vec<Tree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trees = vec![random_tree(n, rootedness, &mut rng)];
    while trees.len() < m {
        let next = random_neighbor(trees.last().unwrap(), OracleMove::spr(rootedness), &mut rng);
        trees.push(next);
    }
    trees
}
