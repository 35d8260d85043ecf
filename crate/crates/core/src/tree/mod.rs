//! Binary phylogenetic trees over integer leaf labels.
//!
//! A tree is stored as an arena of nodes with explicit neighbor lists. A
//! rooted tree carries one extra leaf labeled [`Label::Rho`] whose only
//! neighbor is the root, so every rooted tree on `n` leaves is structurally
//! an unrooted binary tree on `n + 1` leaves. Parent/child orientation is
//! computed on demand by walking away from that leaf.

mod forest;
mod moves;
mod newick;

use std::collections::VecDeque;
use std::fmt;
use std::num::NonZeroU64;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};

pub use forest::{Component, Forest, RootMarker};
pub(crate) use newick::parse_label;
pub use newick::{parse_newick, Strictness};

/// Index of a node inside one tree or forest component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub(crate) fn new(index: usize) -> Self {
        NodeId(u32::try_from(index).expect("node index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An integer leaf label in `1..=u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Taxon(NonZeroU64);

impl Taxon {
    pub fn new(value: u64) -> Option<Self> {
        NonZeroU64::new(value).map(Taxon)
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }
}

impl fmt::Display for Taxon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Label carried by a leaf. `Rho` marks the original root and orders before
/// every taxon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Rho,
    Taxon(Taxon),
}

impl Label {
    pub fn taxon(self) -> Option<Taxon> {
        match self {
            Label::Rho => None,
            Label::Taxon(t) => Some(t),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rootedness {
    Rooted,
    Unrooted,
}

impl Rootedness {
    pub fn as_str(self) -> &'static str {
        match self {
            Rootedness::Rooted => "rooted",
            Rootedness::Unrooted => "unrooted",
        }
    }
}

impl fmt::Display for Rootedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A node: labeled nodes are leaves, unlabeled nodes are internal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub(crate) label: Option<Label>,
    pub(crate) nbrs: ArrayVec<NodeId, 3>,
}

impl Node {
    pub(crate) fn leaf(label: Label) -> Self {
        Node {
            label: Some(label),
            nbrs: ArrayVec::new(),
        }
    }

    pub(crate) fn internal() -> Self {
        Node {
            label: None,
            nbrs: ArrayVec::new(),
        }
    }

    pub fn label(&self) -> Option<Label> {
        self.label
    }

    pub fn neighbors(&self) -> &[NodeId] {
        &self.nbrs
    }

    pub fn degree(&self) -> usize {
        self.nbrs.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.label.is_some()
    }

    pub(crate) fn replace_neighbor(&mut self, old: NodeId, new: NodeId) {
        let slot = self
            .nbrs
            .iter_mut()
            .find(|n| **n == old)
            .expect("replace_neighbor: not adjacent");
        *slot = new;
    }

    pub(crate) fn remove_neighbor(&mut self, old: NodeId) {
        let at = self
            .nbrs
            .iter()
            .position(|n| *n == old)
            .expect("remove_neighbor: not adjacent");
        self.nbrs.remove(at);
    }
}

/// An edge between two adjacent nodes. In a rooted tree `v` is the parent of
/// `u`; the edge above the root has `v` equal to the ρ leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
}

impl Edge {
    pub fn new(u: NodeId, v: NodeId) -> Self {
        Edge { u, v }
    }

    pub fn reversed(self) -> Self {
        Edge {
            u: self.v,
            v: self.u,
        }
    }

    pub fn touches(self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    pub(crate) fn same_as(self, other: Edge) -> bool {
        self == other || self == other.reversed()
    }
}

/// A binary phylogenetic tree.
///
/// Every node has one or three neighbors. Trees are immutable once built;
/// moves return new trees.
#[derive(Clone, Debug)]
pub struct Tree {
    nodes: Vec<Node>,
    rootedness: Rootedness,
    leaf_count: usize,
}

impl Tree {
    pub(crate) fn from_nodes(nodes: Vec<Node>, rootedness: Rootedness) -> Self {
        let leaf_count = nodes
            .iter()
            .filter(|n| matches!(n.label, Some(Label::Taxon(_))))
            .count();
        let tree = Tree {
            nodes,
            rootedness,
            leaf_count,
        };
        debug_assert_eq!(tree.validate(), Ok(()));
        tree
    }

    pub(crate) fn try_from_nodes(
        nodes: Vec<Node>,
        rootedness: Rootedness,
    ) -> std::result::Result<Self, String> {
        let leaf_count = nodes
            .iter()
            .filter(|n| matches!(n.label, Some(Label::Taxon(_))))
            .count();
        let tree = Tree {
            nodes,
            rootedness,
            leaf_count,
        };
        tree.validate()?;
        Ok(tree)
    }

    pub fn from_newick(text: &str, rootedness: Rootedness) -> Result<Self> {
        Ok(parse_newick(
            text.as_bytes(),
            rootedness,
            Strictness::Strict,
        )?)
    }

    pub fn rootedness(&self) -> Rootedness {
        self.rootedness
    }

    pub fn is_rooted(&self) -> bool {
        self.rootedness == Rootedness::Rooted
    }

    /// Number of taxon leaves, not counting ρ.
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId::new)
    }

    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.index()].nbrs
    }

    pub fn label(&self, id: NodeId) -> Option<Label> {
        self.nodes[id.index()].label
    }

    pub fn has_edge(&self, edge: Edge) -> bool {
        edge.u.index() < self.nodes.len()
            && edge.v.index() < self.nodes.len()
            && self.neighbors(edge.u).contains(&edge.v)
    }

    /// The ρ leaf of a rooted tree.
    pub fn rho(&self) -> Option<NodeId> {
        if !self.is_rooted() {
            return None;
        }
        self.node_ids()
            .find(|&id| self.label(id) == Some(Label::Rho))
    }

    /// The internal node adjacent to ρ.
    pub fn root(&self) -> Option<NodeId> {
        self.rho().map(|rho| self.neighbors(rho)[0])
    }

    pub fn find_leaf(&self, taxon: Taxon) -> Option<NodeId> {
        self.node_ids()
            .find(|&id| self.label(id) == Some(Label::Taxon(taxon)))
    }

    /// Sorted taxon labels.
    pub fn taxa(&self) -> Vec<Taxon> {
        let mut taxa: Vec<Taxon> = self
            .nodes
            .iter()
            .filter_map(|n| n.label.and_then(Label::taxon))
            .collect();
        taxa.sort_unstable();
        taxa
    }

    /// The leaf every traversal starts from: ρ when rooted, otherwise the
    /// leaf with the smallest label.
    pub fn top_leaf(&self) -> NodeId {
        let mut best: Option<(Label, NodeId)> = None;
        for id in self.node_ids() {
            if let Some(label) = self.label(id) {
                if best.is_none_or(|(b, _)| label < b) {
                    best = Some((label, id));
                }
            }
        }
        best.expect("tree without leaves").1
    }

    /// Parent of every node when the tree hangs from [`Tree::top_leaf`], plus
    /// the breadth-first visiting order.
    pub fn orientation(&self) -> (Vec<Option<NodeId>>, Vec<NodeId>) {
        let top = self.top_leaf();
        let mut parent = vec![None; self.nodes.len()];
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([top]);
        seen[top.index()] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in self.neighbors(x) {
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    parent[y.index()] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        (parent, order)
    }

    /// Every edge once, oriented child-to-parent relative to the top leaf.
    /// For rooted trees this is the "v is the parent of u" orientation and
    /// includes the edge above the root.
    pub fn edges(&self) -> Vec<Edge> {
        let (parent, order) = self.orientation();
        order
            .into_iter()
            .filter_map(|x| parent[x.index()].map(|p| Edge::new(x, p)))
            .collect()
    }

    /// Nodes reachable from `start` without crossing `cut`.
    pub(crate) fn side_of(&self, cut: Edge, start: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start.index()] = true;
        while let Some(x) = stack.pop() {
            for &y in self.neighbors(x) {
                if Edge::new(x, y).same_as(cut) || seen[y.index()] {
                    continue;
                }
                seen[y.index()] = true;
                stack.push(y);
            }
        }
        seen
    }

    /// Subdivide `edge` with a new internal node and hang a new leaf from it.
    pub fn insert_leaf(&self, edge: Edge, taxon: Taxon) -> Result<Tree> {
        if !self.has_edge(edge) {
            return Err(Error::NoSuchEdge(edge.u, edge.v));
        }
        if self.find_leaf(taxon).is_some() {
            return Err(Error::InvalidMove("taxon already present"));
        }
        let mut nodes = self.nodes.clone();
        let mid = NodeId::new(nodes.len());
        let leaf = NodeId::new(nodes.len() + 1);
        nodes[edge.u.index()].replace_neighbor(edge.v, mid);
        nodes[edge.v.index()].replace_neighbor(edge.u, mid);
        let mut m = Node::internal();
        m.nbrs.extend([edge.u, edge.v, leaf]);
        let mut l = Node::leaf(Label::Taxon(taxon));
        l.nbrs.push(mid);
        nodes.push(m);
        nodes.push(l);
        Ok(Tree::from_nodes(nodes, self.rootedness))
    }

    /// Check the structural invariants: degrees 1 or 3, connected, acyclic,
    /// distinct labels, and a single ρ exactly when rooted.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.nodes.len();
        if n == 0 {
            return Err("empty tree".into());
        }
        let mut rho = 0;
        let mut taxa = Vec::new();
        let mut degree_sum = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            degree_sum += node.degree();
            match node.label {
                Some(label) => {
                    if node.degree() != 1 {
                        return Err(format!("leaf {i} has degree {}", node.degree()));
                    }
                    match label {
                        Label::Rho => rho += 1,
                        Label::Taxon(t) => taxa.push(t),
                    }
                }
                None => {
                    if node.degree() != 3 {
                        return Err(format!("internal node {i} has degree {}", node.degree()));
                    }
                }
            }
            for &nb in &node.nbrs {
                if nb.index() >= n || !self.nodes[nb.index()].nbrs.contains(&NodeId::new(i)) {
                    return Err(format!("asymmetric adjacency at node {i}"));
                }
            }
        }
        if degree_sum != 2 * (n - 1) {
            return Err("edge count is not node count minus one".into());
        }
        let seen = self.side_of(Edge::new(NodeId(u32::MAX), NodeId(u32::MAX)), NodeId(0));
        if seen.iter().any(|s| !s) {
            return Err("tree is disconnected".into());
        }
        taxa.sort_unstable();
        if taxa.windows(2).any(|w| w[0] == w[1]) {
            return Err("duplicate taxon".into());
        }
        let expected_rho = usize::from(self.is_rooted());
        if rho != expected_rho {
            return Err(format!("{} tree has {rho} root markers", self.rootedness));
        }
        if self.leaf_count != taxa.len() {
            return Err("stale leaf count".into());
        }
        Ok(())
    }

    /// Standard Newick in arena order. Rooted trees are written with a
    /// two-child root and without ρ; unrooted trees with a three-child root.
    pub fn to_newick(&self) -> String {
        let top = self.top_leaf();
        let start = self.neighbors(top)[0];
        let mut out = String::new();
        enum Step {
            Visit(NodeId, NodeId),
            Text(&'static str),
        }
        let mut stack = Vec::new();
        let push_children = |stack: &mut Vec<Step>, x: NodeId, from: Option<NodeId>| {
            let kids: Vec<NodeId> = self
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&c| Some(c) != from)
                .collect();
            stack.push(Step::Text(")"));
            for (i, &c) in kids.iter().enumerate().rev() {
                stack.push(Step::Visit(c, x));
                if i > 0 {
                    stack.push(Step::Text(","));
                }
            }
            stack.push(Step::Text("("));
        };
        match self.label(start) {
            Some(label) => out.push_str(&label_text(label)),
            None => {
                let from = if self.is_rooted() { Some(top) } else { None };
                push_children(&mut stack, start, from);
            }
        }
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(t) => out.push_str(t),
                Step::Visit(x, from) => match self.label(x) {
                    Some(label) => out.push_str(&label_text(label)),
                    None => push_children(&mut stack, x, Some(from)),
                },
            }
        }
        out.push(';');
        out
    }
}

fn label_text(label: Label) -> String {
    match label {
        Label::Rho => "r".to_string(),
        Label::Taxon(t) => t.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unrooted(s: &str) -> Tree {
        Tree::from_newick(s, Rootedness::Unrooted).unwrap()
    }

    #[test]
    fn edge_counts() {
        let t = unrooted("(1,2,(3,4));");
        assert_eq!(t.leaf_count(), 4);
        assert_eq!(t.edges().len(), 5);
        let r = Tree::from_newick("((1,2),(3,4));", Rootedness::Rooted).unwrap();
        assert_eq!(r.leaf_count(), 4);
        // 2n - 1 edges including the one above the root
        assert_eq!(r.edges().len(), 7);
        let rho = r.rho().unwrap();
        assert!(r.edges().contains(&Edge::new(r.root().unwrap(), rho)));
    }

    #[test]
    fn rooted_edges_point_to_parent() {
        let r = Tree::from_newick("((1,2),3);", Rootedness::Rooted).unwrap();
        let (parent, _) = r.orientation();
        for e in r.edges() {
            assert_eq!(parent[e.u.index()], Some(e.v));
        }
    }

    #[test]
    fn insert_leaf_grows_tree() {
        let t = unrooted("(1,2,3);");
        let e = t.edges()[0];
        let t4 = t.insert_leaf(e, Taxon::new(4).unwrap()).unwrap();
        assert_eq!(t4.leaf_count(), 4);
        assert_eq!(t4.validate(), Ok(()));
        assert!(t4
            .insert_leaf(t4.edges()[0], Taxon::new(2).unwrap())
            .is_err());
    }

    #[test]
    fn newick_round_trip_keeps_shape() {
        for s in ["(1,2,(3,4));", "((5,1),(2,(3,4)),6);"] {
            let t = unrooted(s);
            let again = unrooted(&t.to_newick());
            assert_eq!(again.taxa(), t.taxa());
            assert_eq!(crate::sdlnewick_tree(&again), crate::sdlnewick_tree(&t));
        }
        let r = Tree::from_newick("((2,1),3);", Rootedness::Rooted).unwrap();
        assert_eq!(r.to_newick().matches('(').count(), 2);
        let again = Tree::from_newick(&r.to_newick(), Rootedness::Rooted).unwrap();
        assert_eq!(crate::sdlnewick_tree(&again), crate::sdlnewick_tree(&r));
    }
}
