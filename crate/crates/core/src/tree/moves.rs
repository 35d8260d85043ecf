//! SPR and TBR moves.

use super::{Edge, Node, NodeId, Tree};
use crate::error::{Error, Result};

impl Tree {
    /// Cut `prune`, detaching the side containing `prune.u`, and reattach it
    /// by subdividing `regraft`, which must lie on the `prune.v` side. The
    /// old attachment node is suppressed.
    ///
    /// In a rooted tree `prune.v` must be the parent of `prune.u`, so ρ always
    /// stays on the side that receives the subtree. Regrafting onto an edge
    /// incident to `prune.v` rebuilds the input tree.
    pub fn apply_spr(&self, prune: Edge, regraft: Edge) -> Result<Tree> {
        if !self.has_edge(prune) {
            return Err(Error::NoSuchEdge(prune.u, prune.v));
        }
        if self.is_rooted() {
            let rho = self.rho().expect("rooted tree has ρ");
            if !self.side_of(prune, prune.v)[rho.index()] {
                return Err(Error::InvalidMove(
                    "rooted SPR must prune below the cut edge",
                ));
            }
        }
        self.reconnect(prune, None, Some(regraft))
    }

    /// Bisect `bisect` and reconnect the two halves by a new edge between a
    /// subdivision of `reattach_u` (on the `bisect.u` side) and a
    /// subdivision of `reattach_v` (on the `bisect.v` side). `None` keeps the
    /// original endpoint as the attachment point, which is the only choice
    /// when that side is a single leaf.
    pub fn apply_tbr(
        &self,
        bisect: Edge,
        reattach_u: Option<Edge>,
        reattach_v: Option<Edge>,
    ) -> Result<Tree> {
        if self.is_rooted() {
            return Err(Error::InvalidMove("TBR is defined on unrooted trees"));
        }
        if !self.has_edge(bisect) {
            return Err(Error::NoSuchEdge(bisect.u, bisect.v));
        }
        self.reconnect(bisect, reattach_u, reattach_v)
    }

    /// Interchange `a`, a neighbor of `edge.u`, with `b`, a neighbor of
    /// `edge.v`, across the internal edge `edge`.
    pub fn apply_nni(&self, edge: Edge, a: NodeId, b: NodeId) -> Result<Tree> {
        if !self.has_edge(edge) {
            return Err(Error::NoSuchEdge(edge.u, edge.v));
        }
        if self.label(edge.u).is_some() || self.label(edge.v).is_some() {
            return Err(Error::InvalidMove("NNI needs an internal edge"));
        }
        if a == edge.v
            || b == edge.u
            || !self.neighbors(edge.u).contains(&a)
            || !self.neighbors(edge.v).contains(&b)
        {
            return Err(Error::InvalidMove(
                "interchanged nodes must hang off the edge",
            ));
        }
        if self.label(a) == Some(super::Label::Rho) || self.label(b) == Some(super::Label::Rho) {
            return Err(Error::InvalidMove("ρ cannot be interchanged"));
        }
        let mut nodes = self.nodes.clone();
        nodes[edge.u.index()].replace_neighbor(a, b);
        nodes[edge.v.index()].replace_neighbor(b, a);
        nodes[a.index()].replace_neighbor(edge.u, edge.v);
        nodes[b.index()].replace_neighbor(edge.v, edge.u);
        Ok(Tree::from_nodes(nodes, self.rootedness))
    }

    fn reconnect(&self, cut: Edge, u_target: Option<Edge>, v_target: Option<Edge>) -> Result<Tree> {
        let u_side = self.side_of(cut, cut.u);
        for (target, want_u) in [(u_target, true), (v_target, false)] {
            let Some(t) = target else { continue };
            if !self.has_edge(t) {
                return Err(Error::NoSuchEdge(t.u, t.v));
            }
            if t.same_as(cut) {
                return Err(Error::InvalidMove("reattachment edge is the cut edge"));
            }
            if u_side[t.u.index()] != want_u || u_side[t.v.index()] != want_u {
                return Err(Error::InvalidMove(
                    "reattachment edge is in the wrong component",
                ));
            }
        }

        let mut nodes = self.nodes.clone();
        nodes[cut.u.index()].remove_neighbor(cut.v);
        nodes[cut.v.index()].remove_neighbor(cut.u);
        let a = place(&mut nodes, cut.u, u_target);
        let b = place(&mut nodes, cut.v, v_target);
        nodes[a.index()].nbrs.push(b);
        nodes[b.index()].nbrs.push(a);
        Ok(Tree::from_nodes(nodes, self.rootedness))
    }
}

/// Suppress `x` (degree two after the cut) and reuse it to subdivide
/// `target`. Returns the node the new edge attaches to.
fn place(nodes: &mut [Node], x: NodeId, target: Option<Edge>) -> NodeId {
    let Some(target) = target else { return x };
    debug_assert!(nodes[x.index()].label.is_none() && nodes[x.index()].degree() == 2);
    let (p, q) = (nodes[x.index()].nbrs[0], nodes[x.index()].nbrs[1]);
    nodes[p.index()].replace_neighbor(x, q);
    nodes[q.index()].replace_neighbor(x, p);
    nodes[x.index()].nbrs.clear();
    // An edge incident to x became (p, q) when x was suppressed.
    let (a, b) = if target.touches(x) {
        (p, q)
    } else {
        (target.u, target.v)
    };
    nodes[a.index()].replace_neighbor(b, x);
    nodes[b.index()].replace_neighbor(a, x);
    nodes[x.index()].nbrs.extend([a, b]);
    x
}
