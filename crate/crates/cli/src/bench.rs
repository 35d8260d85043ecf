//! Construction timing over random trees.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treescape::oracle::random_tree;
use treescape::{construct_graph, MoveKind, Rootedness, Tree};

use crate::error::Result;

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub n_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub kind: MoveKind,
    pub rootedness: Rootedness,
    pub seed: u64,
    /// Timed repetitions per cell; the fastest is kept.
    pub reps: usize,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub elapsed: Duration,
    pub edges: usize,
}

impl BenchRow {
    pub fn per_tree(&self) -> Duration {
        self.elapsed / self.m.max(1) as u32
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub kind: MoveKind,
    pub rootedness: Rootedness,
    pub rows: Vec<BenchRow>,
    /// Slope of log per-tree time against log n, at the largest m.
    pub n_exponent: Option<f64>,
    /// Slope of log total time against log m, at the largest n.
    pub m_exponent: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`. `None` with fewer than two
/// distinct x values.
pub fn fit_exponent(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (logs.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

fn time_build(trees: &[Tree], kind: MoveKind, reps: usize) -> Result<(Duration, usize)> {
    let mut best = Duration::MAX;
    let mut edges = 0;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let build = construct_graph(trees, kind)?;
        best = best.min(start.elapsed());
        edges = build.graph.edge_count();
    }
    Ok((best, edges))
}

pub fn run_bench(opts: &BenchOptions) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for &n in &opts.n_values {
        for &m in &opts.m_values {
            // Same trees for a given (seed, n, m) whatever else is measured.
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((n as u64) << 32) ^ m as u64);
            let trees: Vec<Tree> = (0..m)
                .map(|_| random_tree(n, opts.rootedness, &mut rng))
                .collect();
            let (elapsed, edges) = time_build(&trees, opts.kind, opts.reps)?;
            rows.push(BenchRow {
                n,
                m,
                elapsed,
                edges,
            });
        }
    }
    let max_m = opts.m_values.iter().copied().max().unwrap_or(0);
    let max_n = opts.n_values.iter().copied().max().unwrap_or(0);
    let by_n: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.m == max_m)
        .map(|r| (r.n as f64, r.per_tree().as_secs_f64()))
        .collect();
    let by_m: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n == max_n)
        .map(|r| (r.m as f64, r.elapsed.as_secs_f64()))
        .collect();
    Ok(BenchReport {
        kind: opts.kind,
        rootedness: opts.rootedness,
        rows,
        n_exponent: fit_exponent(&by_n),
        m_exponent: fit_exponent(&by_m),
    })
}

impl BenchReport {
    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(
            out,
            "# treescape bench {} {}",
            self.kind.as_str(),
            self.rootedness
        )?;
        writeln!(out, "n\tm\ttotal_ms\tper_tree_us\tedges")?;
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{:.3}\t{:.2}\t{}",
                r.n,
                r.m,
                r.elapsed.as_secs_f64() * 1e3,
                r.per_tree().as_secs_f64() * 1e6,
                r.edges
            )?;
        }
        if let Some(e) = self.n_exponent {
            writeln!(out, "n exponent\t{e:.3}")?;
        }
        if let Some(e) = self.m_exponent {
            writeln!(out, "m exponent\t{e:.3}")?;
        }
        Ok(())
    }
}
