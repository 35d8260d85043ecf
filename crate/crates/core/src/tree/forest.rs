//! Forests and the yield operation.

use std::collections::VecDeque;

use super::{Edge, Label, Node, NodeId, Taxon, Tree};
use crate::error::{Error, Result};

/// How a forest component is rooted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootMarker {
    /// The component holding the original ρ leaf.
    OriginalRoot,
    /// A component cut away from the rest, rooted at its attachment point.
    ComponentRoot,
}

/// One tree of a forest. Node ids are local to the component.
///
/// A component is either unrooted, holds a ρ leaf, or has a marked `root`
/// node. A marked root is an unlabeled node with two neighbors, or the only
/// node of a single-leaf component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub(crate) nodes: Vec<Node>,
    pub(crate) root: Option<NodeId>,
}

impl Component {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// The component root, if this component carries [`RootMarker::ComponentRoot`].
    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn marker(&self) -> Option<RootMarker> {
        if self.root.is_some() {
            Some(RootMarker::ComponentRoot)
        } else if self.nodes.iter().any(|n| n.label == Some(Label::Rho)) {
            Some(RootMarker::OriginalRoot)
        } else {
            None
        }
    }

    /// Sorted taxa of this component.
    pub fn taxa(&self) -> Vec<Taxon> {
        let mut taxa: Vec<Taxon> = self
            .nodes
            .iter()
            .filter_map(|n| n.label.and_then(Label::taxon))
            .collect();
        taxa.sort_unstable();
        taxa
    }

    /// Check degrees, adjacency symmetry and connectivity.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.nodes.len();
        if n == 0 {
            return Err("empty component".into());
        }
        let mut degree_sum = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            let id = NodeId::new(i);
            degree_sum += node.degree();
            let ok = match node.label {
                Some(_) => node.degree() <= 1 && (node.degree() == 1 || n == 1),
                None if self.root == Some(id) => node.degree() == 2,
                None => node.degree() == 3,
            };
            if !ok {
                return Err(format!("node {i} has degree {}", node.degree()));
            }
            for &nb in &node.nbrs {
                if nb.index() >= n || !self.nodes[nb.index()].nbrs.contains(&id) {
                    return Err(format!("asymmetric adjacency at node {i}"));
                }
            }
        }
        if degree_sum != 2 * (n - 1) {
            return Err("component is not a tree".into());
        }
        let mut seen = vec![false; n];
        let mut stack = vec![NodeId::new(0)];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.nodes[x.index()].nbrs {
                if !std::mem::replace(&mut seen[y.index()], true) {
                    stack.push(y);
                }
            }
        }
        if seen.contains(&false) {
            return Err("component is disconnected".into());
        }
        if let Some(r) = self.root {
            if self.nodes.iter().any(|n| n.label == Some(Label::Rho)) {
                return Err(format!("component root {r:?} in the ρ component"));
            }
        }
        Ok(())
    }
}

/// An agreement-forest candidate: components with disjoint label sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    pub(crate) components: Vec<Component>,
}

impl Forest {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl Tree {
    /// The forest `T ÷ cuts`.
    ///
    /// In a rooted tree the endpoint of each cut edge away from ρ becomes a
    /// component root and is kept; in an unrooted tree every unlabeled node
    /// left with fewer than three neighbors is suppressed.
    pub fn yield_forest(&self, cuts: &[Edge]) -> Result<Forest> {
        let mut roots = Vec::new();
        if self.is_rooted() {
            let (parent, _) = self.orientation();
            for &e in cuts {
                if !self.has_edge(e) {
                    return Err(Error::NoSuchEdge(e.u, e.v));
                }
                roots.push(if parent[e.u.index()] == Some(e.v) {
                    e.u
                } else {
                    e.v
                });
            }
        }
        self.yield_forest_marked(cuts, &roots)
    }

    /// The forest `T ÷ cuts` with an explicit set of component roots, each of
    /// which must be an endpoint of a cut edge.
    pub fn yield_forest_marked(&self, cuts: &[Edge], roots: &[NodeId]) -> Result<Forest> {
        let mut nodes = self.nodes.clone();
        let mut marked = vec![false; nodes.len()];
        let mut work = Vec::with_capacity(2 * cuts.len());
        for &e in cuts {
            if !self.has_edge(e) || !nodes[e.u.index()].nbrs.contains(&e.v) {
                return Err(Error::NoSuchEdge(e.u, e.v));
            }
            nodes[e.u.index()].remove_neighbor(e.v);
            nodes[e.v.index()].remove_neighbor(e.u);
            work.extend([e.u, e.v]);
        }
        for &r in roots {
            if !cuts.iter().any(|e| e.touches(r)) {
                return Err(Error::InvalidMove("component root is not a cut endpoint"));
            }
            if self.label(r) == Some(Label::Rho) {
                return Err(Error::InvalidMove("ρ cannot be a component root"));
            }
            marked[r.index()] = true;
        }

        let mut deleted = vec![false; nodes.len()];
        while let Some(x) = work.pop() {
            let xi = x.index();
            if deleted[xi] || nodes[xi].label.is_some() {
                continue;
            }
            match (nodes[xi].degree(), marked[xi]) {
                (0, _) => deleted[xi] = true,
                (1, m) => {
                    let y = nodes[xi].nbrs[0];
                    nodes[y.index()].remove_neighbor(x);
                    nodes[xi].nbrs.clear();
                    deleted[xi] = true;
                    if m {
                        marked[y.index()] = true;
                    }
                    work.push(y);
                }
                (2, false) => {
                    let (p, q) = (nodes[xi].nbrs[0], nodes[xi].nbrs[1]);
                    nodes[p.index()].replace_neighbor(x, q);
                    nodes[q.index()].replace_neighbor(x, p);
                    nodes[xi].nbrs.clear();
                    deleted[xi] = true;
                }
                _ => {}
            }
        }

        let forest = compact(&nodes, &marked, &deleted);
        debug_assert!(
            self.partitions(&forest),
            "yield does not partition the taxa"
        );
        Ok(forest)
    }

    fn partitions(&self, forest: &Forest) -> bool {
        let mut all: Vec<Taxon> = forest.components.iter().flat_map(|c| c.taxa()).collect();
        all.sort_unstable();
        all == self.taxa() && forest.components.iter().all(|c| c.validate().is_ok())
    }
}

/// Split surviving nodes into components with local ids, dropping any
/// component without labels.
fn compact(nodes: &[Node], marked: &[bool], deleted: &[bool]) -> Forest {
    let mut local = vec![u32::MAX; nodes.len()];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..nodes.len() {
        if deleted[start] || local[start] != u32::MAX {
            continue;
        }
        let mut members = Vec::new();
        local[start] = 0;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for &y in &nodes[x].nbrs {
                if local[y.index()] == u32::MAX {
                    local[y.index()] = members.len() as u32 + queue.len() as u32;
                    queue.push_back(y.index());
                }
            }
        }
        if members.iter().all(|&x| nodes[x].label.is_none()) {
            continue;
        }
        let mut root = None;
        let comp_nodes = members
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if marked[x] {
                    root = Some(NodeId::new(i));
                }
                Node {
                    label: nodes[x].label,
                    nbrs: nodes[x]
                        .nbrs
                        .iter()
                        .map(|y| NodeId(local[y.index()]))
                        .collect(),
                }
            })
            .collect();
        components.push(Component {
            nodes: comp_nodes,
            root,
        });
    }
    Forest { components }
}
