//! Brute-force ground truth. Neighborhoods are found by applying every legal
//! move and canonicalizing the results; graphs by testing every pair.
//!
//! Only the `tree` and `canonical` modules are used here, so the oracle is
//! independent of the forest keys and the container.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::canonical::{sdlnewick_tree, CanonicalString};
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, VertexLabeling};
use crate::tree::{Edge, Label, Rootedness, Taxon, Tree};

/// Move types the oracle can enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMove {
    RootedSpr,
    UnrootedSpr,
    Nni,
    Tbr,
}

impl OracleMove {
    /// The SPR variant for `rootedness`.
    pub fn spr(rootedness: Rootedness) -> Self {
        match rootedness {
            Rootedness::Rooted => OracleMove::RootedSpr,
            Rootedness::Unrooted => OracleMove::UnrootedSpr,
        }
    }
}

/// Prune edges: rooted trees prune below each edge, unrooted trees on
/// either side.
fn prune_edges(tree: &Tree) -> Vec<Edge> {
    let edges = tree.edges();
    if tree.is_rooted() {
        edges
    } else {
        edges.iter().flat_map(|&e| [e, e.reversed()]).collect()
    }
}

/// Every tree one SPR move from `tree`, with repeats.
pub fn all_spr_results(tree: &Tree) -> Vec<Tree> {
    let edges = tree.edges();
    let mut out = Vec::new();
    for prune in prune_edges(tree) {
        for &regraft in &edges {
            if let Ok(t) = tree.apply_spr(prune, regraft) {
                out.push(t);
            }
        }
    }
    out
}

/// SPR moves where the detached subtree lands on an edge touching a
/// neighbor of the old attachment point, so the two attachment points
/// share a neighbor.
pub fn all_nni_results(tree: &Tree) -> Vec<Tree> {
    let edges = tree.edges();
    let mut out = Vec::new();
    for prune in prune_edges(tree) {
        let v = prune.v;
        if tree.label(v).is_some() {
            continue;
        }
        let others: Vec<_> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&x| x != prune.u)
            .collect();
        for &regraft in &edges {
            if regraft.touches(v) || !others.iter().any(|&a| regraft.touches(a)) {
                continue;
            }
            if let Ok(t) = tree.apply_spr(prune, regraft) {
                out.push(t);
            }
        }
    }
    out
}

/// Every tree one TBR move from an unrooted `tree`, with repeats.
pub fn all_tbr_results(tree: &Tree) -> Vec<Tree> {
    let edges = tree.edges();
    let mut out = Vec::new();
    for &cut in &edges {
        let u_side = tree.side_of(cut, cut.u);
        let side = |want: bool| -> Vec<Option<Edge>> {
            let mut v: Vec<Option<Edge>> = vec![None];
            v.extend(
                edges
                    .iter()
                    .filter(|e| !e.same_as(cut) && u_side[e.u.index()] == want)
                    .map(|&e| Some(e)),
            );
            v
        };
        for ru in side(true) {
            for rv in side(false) {
                if let Ok(t) = tree.apply_tbr(cut, ru, rv) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Canonical strings of all trees one `kind` move from `tree`, excluding
/// `tree` itself.
pub fn enumerate_neighbors(tree: &Tree, kind: OracleMove) -> Result<BTreeSet<CanonicalString>> {
    let expected = match kind {
        OracleMove::RootedSpr => Some(Rootedness::Rooted),
        OracleMove::UnrootedSpr | OracleMove::Tbr => Some(Rootedness::Unrooted),
        OracleMove::Nni => None,
    };
    if let Some(r) = expected {
        if tree.rootedness() != r {
            return Err(Error::ModeMismatch {
                expected: r.as_str(),
                found: tree.rootedness().as_str(),
            });
        }
    }
    let results = match kind {
        OracleMove::RootedSpr | OracleMove::UnrootedSpr => all_spr_results(tree),
        OracleMove::Nni => all_nni_results(tree),
        OracleMove::Tbr => all_tbr_results(tree),
    };
    let own = sdlnewick_tree(tree);
    Ok(results
        .iter()
        .map(sdlnewick_tree)
        .filter(|s| *s != own)
        .collect())
}

/// The graph on the distinct trees of `trees` (in order of first
/// appearance), testing every pair.
pub fn pairwise_graph(
    trees: &[Tree],
    kind: OracleMove,
) -> Result<(AdjacencyGraph, VertexLabeling)> {
    let mut index: HashMap<CanonicalString, usize> = HashMap::new();
    let mut distinct: Vec<(&Tree, CanonicalString)> = Vec::new();
    let mut labeling = VertexLabeling::default();
    for (k, t) in trees.iter().enumerate() {
        let s = sdlnewick_tree(t);
        let v = *index.entry(s.clone()).or_insert_with(|| {
            distinct.push((t, s));
            labeling.first_input.push(k);
            distinct.len() - 1
        });
        labeling.vertex_of.push(v);
    }
    let mut graph = AdjacencyGraph::new(distinct.len());
    for (i, (t, _)) in distinct.iter().enumerate() {
        let near = enumerate_neighbors(t, kind)?;
        for (j, (_, s)) in distinct[..i].iter().enumerate() {
            if near.contains(s) {
                graph.append_edge(j, i)?;
            }
        }
    }
    Ok((graph, labeling))
}

fn smallest(rootedness: Rootedness) -> (usize, &'static str) {
    match rootedness {
        Rootedness::Rooted => (2, "(1,2);"),
        Rootedness::Unrooted => (3, "(1,2,3);"),
    }
}

/// All binary trees on taxa `1..=n`, by inserting each next leaf on every
/// edge of every smaller tree.
pub fn enumerate_all_trees(n: usize, rootedness: Rootedness) -> Vec<Tree> {
    let (start, text) = smallest(rootedness);
    if n < start {
        return Vec::new();
    }
    let mut trees = vec![Tree::from_newick(text, rootedness).expect("seed tree")];
    for k in start..n {
        let taxon = Taxon::new(k as u64 + 1).unwrap();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &trees {
            for e in t.edges() {
                let grown = t
                    .insert_leaf(e, taxon)
                    .expect("fresh taxon on an existing edge");
                if seen.insert(sdlnewick_tree(&grown)) {
                    next.push(grown);
                }
            }
        }
        // Each k-leaf tree has 2k - 1 edges rooted (counting the edge to ρ)
        // and 2k - 3 unrooted, and every insertion gives a different tree.
        let edges = match rootedness {
            Rootedness::Rooted => 2 * k - 1,
            Rootedness::Unrooted => 2 * k - 3,
        };
        assert_eq!(
            next.len(),
            trees.len() * edges,
            "tree count recurrence failed at {} leaves",
            k + 1
        );
        trees = next;
    }
    trees
}

/// A random tree on taxa `1..=n`, built by inserting the taxa in random
/// order onto uniformly chosen edges.
pub fn random_tree(n: usize, rootedness: Rootedness, rng: &mut impl Rng) -> Tree {
    let (start, _) = smallest(rootedness);
    assert!(
        n >= start,
        "a {rootedness} tree needs at least {start} leaves"
    );
    let mut taxa: Vec<u64> = (1..=n as u64).collect();
    taxa.shuffle(rng);
    let seed = match rootedness {
        Rootedness::Rooted => format!("({},{});", taxa[0], taxa[1]),
        Rootedness::Unrooted => format!("({},{},{});", taxa[0], taxa[1], taxa[2]),
    };
    let mut tree = Tree::from_newick(&seed, rootedness).expect("seed tree");
    for &x in &taxa[start..] {
        let edges = tree.edges();
        let e = edges[rng.random_range(0..edges.len())];
        tree = tree
            .insert_leaf(e, Taxon::new(x).unwrap())
            .expect("fresh taxon");
    }
    tree
}

/// A random tree one `kind` move from `tree`, or `tree` itself if it has
/// no such neighbor.
pub fn random_neighbor(tree: &Tree, kind: OracleMove, rng: &mut impl Rng) -> Tree {
    let mut options = match kind {
        OracleMove::RootedSpr | OracleMove::UnrootedSpr => all_spr_results(tree),
        OracleMove::Nni => all_nni_results(tree),
        OracleMove::Tbr => all_tbr_results(tree),
    };
    let own = sdlnewick_tree(tree);
    options.retain(|t| sdlnewick_tree(t) != own);
    if options.is_empty() {
        return tree.clone();
    }
    let k = rng.random_range(0..options.len());
    options.swap_remove(k)
}

/// Standard Newick for `tree` with children in random order and, for
/// unrooted trees, a random internal node as the outer group.
pub fn random_newick(tree: &Tree, rng: &mut impl Rng) -> String {
    let internal: Vec<_> = tree
        .node_ids()
        .filter(|&x| tree.label(x).is_none())
        .collect();
    let (start, from) = match tree.rho() {
        Some(rho) => (tree.neighbors(rho)[0], Some(rho)),
        None => (internal[rng.random_range(0..internal.len())], None),
    };
    enum Step {
        Visit(crate::tree::NodeId, crate::tree::NodeId),
        Text(&'static str),
    }
    let mut out = String::new();
    let mut stack = Vec::new();
    let push_group = |stack: &mut Vec<Step>, x, from: Option<_>, rng: &mut _| {
        let mut kids: Vec<_> = tree
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&c| Some(c) != from)
            .collect();
        kids.shuffle(rng);
        stack.push(Step::Text(")"));
        for (i, &c) in kids.iter().enumerate().rev() {
            stack.push(Step::Visit(c, x));
            if i > 0 {
                stack.push(Step::Text(","));
            }
        }
        stack.push(Step::Text("("));
    };
    push_group(&mut stack, start, from, rng);
    while let Some(step) = stack.pop() {
        match step {
            Step::Text(t) => out.push_str(t),
            Step::Visit(x, parent) => match tree.label(x) {
                Some(Label::Taxon(t)) => out.push_str(&t.to_string()),
                Some(Label::Rho) => unreachable!("ρ is never below the root"),
                None => push_group(&mut stack, x, Some(parent), rng),
            },
        }
    }
    out.push(';');
    out
}
