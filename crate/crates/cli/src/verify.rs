//! Fast graph against the pairwise oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};
use std::path::PathBuf;

use treescape::oracle::{enumerate_neighbors, pairwise_graph};
use treescape::{
    construct_graph, AfContainer, ContainerMode, MoveKind, OracleMove, Rootedness, Tree, TreeId,
};

use crate::error::{CliError, Result};
use crate::input::{read_trees, ReadOptions};

pub const DEFAULT_MAX_M: usize = 200;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub input: PathBuf,
    pub kind: MoveKind,
    pub read: ReadOptions,
    pub max_m: usize,
    /// Corrupt the fast graph before comparing. Test fixture only.
    pub inject_fault: bool,
}

/// Raw neighbor-query hits, gathered over every distinct input tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DuplicateStats {
    pub queries: usize,
    pub raw_hits: usize,
    /// Ids returned more than once, summed over queries.
    pub repeated_ids: usize,
    /// Stored NNI neighbors, summed over queries.
    pub nni_adjacent: usize,
    pub max_multiplicity: usize,
    /// Queries where the repeated ids differ from the NNI neighbors.
    pub violations: Vec<String>,
}

impl DuplicateStats {
    pub fn merge(&mut self, other: &DuplicateStats) {
        self.queries += other.queries;
        self.raw_hits += other.raw_hits;
        self.repeated_ids += other.repeated_ids;
        self.nni_adjacent += other.nni_adjacent;
        self.max_multiplicity = self.max_multiplicity.max(other.max_multiplicity);
        self.violations.extend(other.violations.iter().cloned());
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub kind: Option<MoveKind>,
    pub rootedness: Option<Rootedness>,
    pub vertices: usize,
    pub fast_edges: usize,
    pub oracle_edges: usize,
    pub only_fast: Vec<(usize, usize)>,
    pub only_oracle: Vec<(usize, usize)>,
    pub labeling_agrees: bool,
    pub duplicates: DuplicateStats,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.only_fast.is_empty()
            && self.only_oracle.is_empty()
            && self.labeling_agrees
            && self.duplicates.violations.is_empty()
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        if let (Some(kind), Some(r)) = (self.kind, self.rootedness) {
            writeln!(
                out,
                "# treescape verify {} {} m={}",
                kind.as_str(),
                r,
                self.vertices
            )?;
        }
        writeln!(
            out,
            "edges\t{} fast\t{} oracle",
            self.fast_edges, self.oracle_edges
        )?;
        let d = &self.duplicates;
        writeln!(
            out,
            "repeats\t{} repeated ids\t{} nni neighbors\t{} max hits",
            d.repeated_ids, d.nni_adjacent, d.max_multiplicity
        )?;
        for (u, v) in &self.only_fast {
            writeln!(out, "+ {u}\t{v}")?;
        }
        for (u, v) in &self.only_oracle {
            writeln!(out, "- {u}\t{v}")?;
        }
        if !self.labeling_agrees {
            writeln!(out, "vertex labelings differ")?;
        }
        for v in &d.violations {
            writeln!(out, "repeat rule: {v}")?;
        }
        writeln!(out, "{}", if self.passed() { "ok" } else { "mismatch" })
    }
}

pub fn oracle_move(kind: MoveKind, rootedness: Rootedness) -> OracleMove {
    match kind {
        MoveKind::Spr => OracleMove::spr(rootedness),
        MoveKind::Nni => OracleMove::Nni,
        MoveKind::Tbr => OracleMove::Tbr,
    }
}

/// For each distinct tree, the ids a raw container query returns more than
/// once must be exactly the stored NNI neighbors.
pub fn duplicate_stats(container: &AfContainer, trees: &[&Tree]) -> Result<DuplicateStats> {
    let mut stats = DuplicateStats::default();
    for tree in trees {
        let raw = match container.mode() {
            ContainerMode::Tbr => container.tbr_neighbors(tree)?,
            _ => container.spr_neighbors(tree)?,
        };
        let mut counts: BTreeMap<TreeId, usize> = BTreeMap::new();
        for &id in &raw {
            *counts.entry(id).or_default() += 1;
        }
        let repeated: BTreeSet<TreeId> = counts
            .iter()
            .filter(|&(_, &c)| c > 1)
            .map(|(&id, _)| id)
            .collect();
        let nni: BTreeSet<TreeId> = enumerate_neighbors(tree, OracleMove::Nni)?
            .iter()
            .filter_map(|s| container.id_of_str(s.as_str()))
            .collect();
        stats.queries += 1;
        stats.raw_hits += raw.len();
        stats.repeated_ids += repeated.len();
        stats.nni_adjacent += nni.len();
        stats.max_multiplicity = stats
            .max_multiplicity
            .max(counts.values().copied().max().unwrap_or(0));
        if repeated != nni {
            let id = container.id(tree).map_or(-1, |id| id.index() as i64);
            stats
                .violations
                .push(format!("vertex {id}: repeated {repeated:?}, nni {nni:?}"));
        }
    }
    Ok(stats)
}

/// Compare the fast and oracle graphs over `trees`.
pub fn verify_trees(trees: &[Tree], kind: MoveKind, inject_fault: bool) -> Result<VerifyReport> {
    let rootedness = trees.first().map_or(Rootedness::Unrooted, Tree::rootedness);
    let build = construct_graph(trees, kind)?;
    let (slow, labeling) = pairwise_graph(trees, oracle_move(kind, rootedness))?;
    let mut fast: BTreeSet<(usize, usize)> = build.graph.edges().collect();
    if inject_fault {
        let first = fast.first().copied();
        match first {
            Some(e) => {
                fast.remove(&e);
            }
            None if build.graph.vertex_count() >= 2 => {
                fast.insert((0, 1));
            }
            None => {}
        }
    }
    let slow: BTreeSet<(usize, usize)> = slow.edges().collect();
    let distinct: Vec<&Tree> = build
        .labeling
        .first_input
        .iter()
        .map(|&i| &trees[i])
        .collect();
    Ok(VerifyReport {
        kind: Some(kind),
        rootedness: Some(rootedness),
        vertices: build.graph.vertex_count(),
        fast_edges: fast.len(),
        oracle_edges: slow.len(),
        only_fast: fast.difference(&slow).copied().collect(),
        only_oracle: slow.difference(&fast).copied().collect(),
        labeling_agrees: labeling == build.labeling,
        duplicates: duplicate_stats(&build.container, &distinct)?,
    })
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let input = read_trees(&opts.input, &opts.read)?;
    if input.len() > opts.max_m {
        return Err(CliError::TooLarge {
            m: input.len(),
            max_m: opts.max_m,
        });
    }
    let mut report = verify_trees(&input.trees, opts.kind, opts.inject_fault)?;
    report.rootedness = Some(opts.read.rootedness);
    Ok(report)
}
