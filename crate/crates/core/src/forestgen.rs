//! Two-component agreement forest keys for each move type, and NNI moves.
//!
//! Two trees are one rSPR, uSPR or TBR move apart exactly when their key
//! lists for that move type share a key.

use crate::canonical::{CanonicalString, Encoder};
use crate::error::{Error, Result};
use crate::tree::{Edge, Rootedness, Tree};

/// Which agreement forests to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KeyKind {
    /// Rooted tree, one forest per edge with the lower side marked.
    RootedSpr,
    /// Unrooted tree, two forests per edge, one per marked side.
    UnrootedSpr,
    /// Unrooted tree, one forest per edge with neither side marked.
    Tbr,
}

impl KeyKind {
    pub fn rootedness(self) -> Rootedness {
        match self {
            KeyKind::RootedSpr => Rootedness::Rooted,
            KeyKind::UnrootedSpr | KeyKind::Tbr => Rootedness::Unrooted,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KeyKind::RootedSpr => "rspr",
            KeyKind::UnrootedSpr => "uspr",
            KeyKind::Tbr => "tbr",
        }
    }
}

/// Call `f` with every key of `tree`, in edge order. `buf` is reused
/// between keys.
pub fn for_each_forest_key(
    tree: &Tree,
    kind: KeyKind,
    encoder: &mut Encoder,
    buf: &mut Vec<u8>,
    mut f: impl FnMut(&[u8]),
) -> Result<()> {
    if tree.rootedness() != kind.rootedness() {
        return Err(Error::ModeMismatch {
            expected: kind.rootedness().as_str(),
            found: tree.rootedness().as_str(),
        });
    }
    let mut emit = |cut: Edge, roots: &[_]| -> Result<()> {
        let forest = tree.yield_forest_marked(&[cut], roots)?;
        buf.clear();
        encoder.forest(&forest, buf);
        f(buf);
        Ok(())
    };
    for e in tree.edges() {
        match kind {
            // `edges()` orients rooted edges child to parent.
            KeyKind::RootedSpr => emit(e, &[e.u])?,
            KeyKind::UnrootedSpr => {
                emit(e, &[e.u])?;
                emit(e, &[e.v])?;
            }
            KeyKind::Tbr => emit(e, &[])?,
        }
    }
    Ok(())
}

fn collect(tree: &Tree, kind: KeyKind) -> Result<Vec<CanonicalString>> {
    let mut keys = Vec::with_capacity(2 * tree.edge_count());
    let mut buf = Vec::new();
    for_each_forest_key(tree, kind, &mut Encoder::new(), &mut buf, |k| {
        keys.push(CanonicalString::from_encoded(k.to_vec()))
    })?;
    Ok(keys)
}

/// One key per edge of a rooted tree, including the edge above the root.
pub fn rspr_forest_keys(tree: &Tree) -> Result<Vec<CanonicalString>> {
    collect(tree, KeyKind::RootedSpr)
}

/// Two keys per edge of an unrooted tree.
pub fn uspr_forest_keys(tree: &Tree) -> Result<Vec<CanonicalString>> {
    collect(tree, KeyKind::UnrootedSpr)
}

/// One key per edge of an unrooted tree.
pub fn tbr_forest_keys(tree: &Tree) -> Result<Vec<CanonicalString>> {
    collect(tree, KeyKind::Tbr)
}

/// Every NNI neighbor of `tree`: for each internal edge (v, p) with v below
/// p and each child c of v, the subtree at c moves to the aunt edge. This
/// interchanges the other child of v with the sibling of v.
pub fn nni_moves(tree: &Tree) -> Vec<Tree> {
    let (parent, order) = tree.orientation();
    let mut out = Vec::new();
    for &v in &order {
        if tree.label(v).is_some() {
            continue;
        }
        let Some(p) = parent[v.index()] else { continue };
        if tree.label(p).is_some() {
            continue;
        }
        let s = tree
            .neighbors(p)
            .iter()
            .copied()
            .find(|&x| x != v && Some(x) != parent[p.index()])
            .expect("internal node has two children");
        for &w in tree.neighbors(v) {
            if w != p {
                out.push(
                    tree.apply_nni(Edge::new(v, p), w, s)
                        .expect("valid interchange"),
                );
            }
        }
    }
    out
}
