//! Graph construction over a list of trees.
//!
//! Trees are inserted one at a time. When tree `i` is new, every neighbor
//! `j` reported by the container was inserted earlier, so `i` is appended
//! to the end of `adj[j]`. Lists therefore stay sorted without sorting, and
//! a repeated report of the same pair is caught by comparing with the tail.

use crate::afcontainer::{AfContainer, ContainerMode, TreeId};
use crate::error::{Error, Result};
use crate::tree::{Rootedness, Tree};

/// Undirected graph on vertices `0..m`. Each edge `{j, i}` with `j < i` is
/// stored once, as `i` in `adj[j]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adj: Vec<Vec<u32>>,
}

impl AdjacencyGraph {
    pub fn new(vertex_count: usize) -> Self {
        AdjacencyGraph {
            adj: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Record the edge `{j, i}`. `i` must be larger than `j` and than every
    /// value already in `adj[j]`, except that repeating the tail is a no-op.
    pub fn append_edge(&mut self, j: usize, i: usize) -> Result<()> {
        if i <= j || i >= self.adj.len() {
            return Err(Error::EdgeOrder { j, i });
        }
        let list = &mut self.adj[j];
        let value = i as u32;
        match list.last() {
            Some(&tail) if tail == value => {}
            Some(&tail) if tail > value => {
                return Err(Error::UnsortedAppend {
                    list: j,
                    tail: tail as usize,
                    value: i,
                })
            }
            _ => list.push(value),
        }
        Ok(())
    }

    /// Neighbors of `j` larger than `j`, ascending.
    pub fn later_neighbors(&self, j: usize) -> &[u32] {
        &self.adj[j]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (j, i) = if a < b { (a, b) } else { (b, a) };
        j < self.adj.len() && self.adj[j].binary_search(&(i as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(j, list)| list.iter().map(move |&i| (j, i as usize)))
    }

    /// Full neighbor lists, each ascending.
    pub fn neighbor_lists(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.adj.len()];
        for (j, i) in self.edges() {
            out[i].push(j as u32);
        }
        for (j, list) in self.adj.iter().enumerate() {
            out[j].extend_from_slice(list);
        }
        out
    }

    /// Check that every list is strictly increasing and above its owner.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for (j, list) in self.adj.iter().enumerate() {
            if list.first().is_some_and(|&i| i as usize <= j) {
                return Err(format!("adj[{j}] holds a value not above {j}"));
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adj[{j}] is not strictly increasing"));
            }
            if list.last().is_some_and(|&i| i as usize >= self.adj.len()) {
                return Err(format!("adj[{j}] points past the last vertex"));
            }
        }
        Ok(())
    }
}

/// Which input trees became which vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexLabeling {
    /// Vertex of each input tree.
    pub vertex_of: Vec<usize>,
    /// Index of the first input tree mapped to each vertex.
    pub first_input: Vec<usize>,
}

impl VertexLabeling {
    /// `(input index, vertex)` for every input that repeats an earlier tree.
    pub fn duplicates(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertex_of
            .iter()
            .enumerate()
            .filter(|&(k, &v)| self.first_input[v] != k)
            .map(|(k, &v)| (k, v))
    }
}

/// A built graph with its labeling and the container used to build it.
pub struct GraphBuild {
    pub graph: AdjacencyGraph,
    pub labeling: VertexLabeling,
    pub container: AfContainer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Spr,
    Nni,
    Tbr,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Spr => "spr",
            MoveKind::Nni => "nni",
            MoveKind::Tbr => "tbr",
        }
    }
}

/// Every tree must share the rootedness and the label set of the first.
pub fn check_inputs(trees: &[Tree]) -> Result<()> {
    let Some(first) = trees.first() else {
        return Ok(());
    };
    let taxa = first.taxa();
    for (index, t) in trees.iter().enumerate().skip(1) {
        if t.rootedness() != first.rootedness() {
            return Err(Error::MixedRootedness {
                index,
                expected: first.rootedness().as_str(),
                found: t.rootedness().as_str(),
            });
        }
        if t.leaf_count() != taxa.len() || t.taxa() != taxa {
            return Err(Error::LabelSetMismatch { index });
        }
    }
    Ok(())
}

/// Build the graph for `kind` over `trees`.
pub fn construct_graph(trees: &[Tree], kind: MoveKind) -> Result<GraphBuild> {
    check_inputs(trees)?;
    let rootedness = trees.first().map_or(Rootedness::Unrooted, Tree::rootedness);
    let mode = match kind {
        MoveKind::Spr | MoveKind::Nni => ContainerMode::spr(rootedness),
        MoveKind::Tbr => ContainerMode::Tbr,
    };
    let mut container = AfContainer::new(mode);
    let mut graph = AdjacencyGraph::default();
    let mut labeling = VertexLabeling::default();
    for (k, tree) in trees.iter().enumerate() {
        let before = container.len();
        let id = container.insert(tree)?;
        labeling.vertex_of.push(id.index());
        if container.len() == before {
            continue;
        }
        labeling.first_input.push(k);
        let i = graph.add_vertex();
        debug_assert_eq!(i, id.index());
        let neighbors: Vec<TreeId> = match kind {
            MoveKind::Spr => container.spr_neighbors(tree)?,
            MoveKind::Nni => container.nni_neighbors(tree),
            MoveKind::Tbr => container.tbr_neighbors(tree)?,
        };
        for j in neighbors {
            graph.append_edge(j.index(), i)?;
        }
    }
    Ok(GraphBuild {
        graph,
        labeling,
        container,
    })
}

/// SPR graph; rooted or unrooted SPR according to the trees.
pub fn construct_spr_graph(trees: &[Tree]) -> Result<GraphBuild> {
    construct_graph(trees, MoveKind::Spr)
}

pub fn construct_nni_graph(trees: &[Tree]) -> Result<GraphBuild> {
    construct_graph(trees, MoveKind::Nni)
}

/// TBR graph over unrooted trees.
pub fn construct_tbr_graph(trees: &[Tree]) -> Result<GraphBuild> {
    construct_graph(trees, MoveKind::Tbr)
}
