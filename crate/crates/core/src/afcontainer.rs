//! Trie-indexed storage of trees and their two-component agreement forests.
//!
//! The forest trie maps each agreement-forest key to the ids of the
//! inserted trees that yield it, the id trie maps canonical tree strings to
//! ids, and the tree array maps ids back to strings. Neighbor queries
//! generate the query tree's keys and read the matching lists.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::canonical::{decode_tree, Encoder};
use crate::error::{Error, Result};
use crate::forestgen::{for_each_forest_key, nni_moves, KeyKind};
use crate::tree::{Rootedness, Strictness, Tree};
use crate::trie::ByteTrie;

/// Dense tree id, assigned 0, 1, 2, ... in insertion order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeId(u32);

impl TreeId {
    pub fn new(index: usize) -> Self {
        TreeId(u32::try_from(index).expect("tree id exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TreeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The adjacency notion a container answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContainerMode {
    RootedSpr,
    UnrootedSpr,
    Tbr,
}

impl ContainerMode {
    pub fn key_kind(self) -> KeyKind {
        match self {
            ContainerMode::RootedSpr => KeyKind::RootedSpr,
            ContainerMode::UnrootedSpr => KeyKind::UnrootedSpr,
            ContainerMode::Tbr => KeyKind::Tbr,
        }
    }

    pub fn rootedness(self) -> Rootedness {
        self.key_kind().rootedness()
    }

    /// The SPR mode matching `rootedness`.
    pub fn spr(rootedness: Rootedness) -> Self {
        match rootedness {
            Rootedness::Rooted => ContainerMode::RootedSpr,
            Rootedness::Unrooted => ContainerMode::UnrootedSpr,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.key_kind().as_str()
    }
}

impl fmt::Display for ContainerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ContainerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rspr" => Ok(ContainerMode::RootedSpr),
            "uspr" => Ok(ContainerMode::UnrootedSpr),
            "tbr" => Ok(ContainerMode::Tbr),
            _ => Err(Error::Unsupported(format!("unknown container mode {s:?}"))),
        }
    }
}

const SNAPSHOT_MAGIC: &str = "afcontainer v1";

/// Storage for one move type. Inserts need `&mut self`; every query takes
/// `&self`, so a filled container can be shared across threads.
pub struct AfContainer {
    mode: ContainerMode,
    forest_trie: ByteTrie<Vec<TreeId>>,
    id_trie: ByteTrie<TreeId>,
    trees: Vec<String>,
    encoder: Encoder,
    buf: Vec<u8>,
}

impl AfContainer {
    pub fn new(mode: ContainerMode) -> Self {
        AfContainer {
            mode,
            forest_trie: ByteTrie::new(),
            id_trie: ByteTrie::new(),
            trees: Vec::new(),
            encoder: Encoder::new(),
            buf: Vec::new(),
        }
    }

    pub fn mode(&self) -> ContainerMode {
        self.mode
    }

    /// Number of distinct trees inserted.
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    fn check(&self, tree: &Tree) -> Result<()> {
        if tree.rootedness() != self.mode.rootedness() {
            return Err(Error::ModeMismatch {
                expected: self.mode.rootedness().as_str(),
                found: tree.rootedness().as_str(),
            });
        }
        Ok(())
    }

    /// Insert `tree`, returning its id. A tree isomorphic to one already
    /// stored leaves the container unchanged and returns the existing id.
    pub fn insert(&mut self, tree: &Tree) -> Result<TreeId> {
        self.check(tree)?;
        self.buf.clear();
        self.encoder.tree(tree, &mut self.buf);
        if let Some(&id) = self.id_trie.get(&self.buf) {
            return Ok(id);
        }
        let id = TreeId::new(self.trees.len());
        self.id_trie.insert(&self.buf, id);
        self.trees
            .push(String::from_utf8(self.buf.clone()).expect("ASCII"));
        let trie = &mut self.forest_trie;
        for_each_forest_key(
            tree,
            self.mode.key_kind(),
            &mut self.encoder,
            &mut self.buf,
            |key| {
                let list = trie.get_or_insert_with(key, Vec::new);
                // Lists only ever grow by the newest id.
                if list.last() != Some(&id) {
                    list.push(id);
                }
            },
        )?;
        Ok(id)
    }

    /// Id of the stored tree isomorphic to `tree`.
    pub fn id(&self, tree: &Tree) -> Option<TreeId> {
        let mut buf = Vec::new();
        Encoder::new().tree(tree, &mut buf);
        self.id_trie.get(&buf).copied()
    }

    /// Id of a canonical tree string.
    pub fn id_of_str(&self, canonical: &str) -> Option<TreeId> {
        self.id_trie.get(canonical.as_bytes()).copied()
    }

    /// Stored canonical string for `id`, or `""` if there is no such tree.
    pub fn sdlnewick_of(&self, id: TreeId) -> &str {
        self.trees.get(id.index()).map_or("", String::as_str)
    }

    /// Stored trees in id order.
    pub fn tree_strings(&self) -> impl Iterator<Item = &str> {
        self.trees.iter().map(String::as_str)
    }

    /// Every forest key and its id list, in key order.
    pub fn forest_lists(&self) -> impl Iterator<Item = (Vec<u8>, &[TreeId])> + '_ {
        self.forest_trie.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn forest_key_count(&self) -> usize {
        self.forest_trie.len()
    }

    /// Approximate heap held by the tries and the tree array.
    pub fn heap_bytes(&self) -> usize {
        self.forest_trie
            .heap_bytes(|v| v.capacity() * std::mem::size_of::<TreeId>())
            + self.id_trie.heap_bytes(|_| 0)
            + self.trees.iter().map(String::capacity).sum::<usize>()
    }

    fn forest_neighbors(&self, tree: &Tree) -> Result<Vec<TreeId>> {
        let mut buf = Vec::new();
        let mut encoder = Encoder::new();
        encoder.tree(tree, &mut buf);
        let own = self.id_trie.get(&buf).copied();
        let mut out = Vec::new();
        for_each_forest_key(tree, self.mode.key_kind(), &mut encoder, &mut buf, |key| {
            if let Some(list) = self.forest_trie.get(key) {
                out.extend(list.iter().copied().filter(|&id| Some(id) != own));
            }
        })?;
        Ok(out)
    }

    /// Ids of stored trees one SPR move from `tree`, unsorted. An id appears
    /// once per shared agreement forest, so trees that are also NNI
    /// neighbors can repeat.
    pub fn spr_neighbors(&self, tree: &Tree) -> Result<Vec<TreeId>> {
        if self.mode == ContainerMode::Tbr {
            return Err(Error::Unsupported(
                "SPR queries need an SPR container".into(),
            ));
        }
        self.check(tree)?;
        self.forest_neighbors(tree)
    }

    /// Ids of stored trees one TBR move from `tree`, unsorted, possibly
    /// with repeats.
    pub fn tbr_neighbors(&self, tree: &Tree) -> Result<Vec<TreeId>> {
        if self.mode != ContainerMode::Tbr {
            return Err(Error::Unsupported(
                "TBR queries need a TBR container".into(),
            ));
        }
        self.check(tree)?;
        self.forest_neighbors(tree)
    }

    /// Ids of stored trees one NNI move from `tree`, sorted and distinct.
    /// Uses only the id trie, so it works in every mode.
    pub fn nni_neighbors(&self, tree: &Tree) -> Vec<TreeId> {
        let own = self.id(tree);
        let mut encoder = Encoder::new();
        let mut buf = Vec::new();
        let mut out: Vec<TreeId> = nni_moves(tree)
            .iter()
            .filter_map(|t| {
                buf.clear();
                encoder.tree(t, &mut buf);
                self.id_trie.get(&buf).copied()
            })
            .filter(|&id| Some(id) != own)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Canonical strings of the distinct neighbors of `tree` under this
    /// container's move type, in id order.
    pub fn neighbor_strings(&self, tree: &Tree) -> Result<Vec<String>> {
        let mut ids = match self.mode {
            ContainerMode::Tbr => self.tbr_neighbors(tree)?,
            _ => self.spr_neighbors(tree)?,
        };
        ids.sort_unstable();
        ids.dedup();
        Ok(ids
            .into_iter()
            .map(|id| self.sdlnewick_of(id).to_string())
            .collect())
    }

    /// Write the header line and one canonical tree per line, in id order.
    pub fn write_snapshot(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "{SNAPSHOT_MAGIC} {} {}", self.mode, self.trees.len())?;
        for s in &self.trees {
            writeln!(out, "{s}")?;
        }
        Ok(())
    }

    /// Rebuild a container from a snapshot.
    pub fn read_snapshot(input: impl BufRead) -> Result<Self> {
        let mut lines = input.lines();
        let bad = |msg: String| Error::Snapshot(msg);
        let header = lines
            .next()
            .ok_or_else(|| bad("empty snapshot".into()))?
            .map_err(|e| bad(e.to_string()))?;
        let rest = header
            .strip_prefix(SNAPSHOT_MAGIC)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| bad(format!("bad header {header:?}")))?;
        let (mode, count) = rest
            .split_once(' ')
            .ok_or_else(|| bad(format!("bad header {header:?}")))?;
        let mode: ContainerMode = mode.parse()?;
        let count: usize = count
            .parse()
            .map_err(|_| bad(format!("bad tree count {count:?}")))?;
        let mut container = AfContainer::new(mode);
        for (i, line) in lines.enumerate() {
            let line = line.map_err(|e| bad(e.to_string()))?;
            let tree = decode_tree(line.as_bytes(), Strictness::Strict)
                .map_err(|e| bad(format!("line {}: {e}", i + 2)))?;
            let id = container.insert(&tree)?;
            if id.index() != i {
                return Err(bad(format!("line {} repeats tree {id}", i + 2)));
            }
        }
        if container.len() != count {
            return Err(bad(format!(
                "header says {count} trees, found {}",
                container.len()
            )));
        }
        Ok(container)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::canonical::sdlnewick_tree;

    fn rooted(s: &str) -> Tree {
        Tree::from_newick(s, Rootedness::Rooted).unwrap()
    }

    fn unrooted(s: &str) -> Tree {
        Tree::from_newick(s, Rootedness::Unrooted).unwrap()
    }

    const TRIPLE: [&str; 3] = [
        "((1,(2,3)),(4,5));",
        "(1,((2,3),(4,5)));",
        "(((4,5),1),(2,3));",
    ];

    fn triple() -> AfContainer {
        let mut c = AfContainer::new(ContainerMode::RootedSpr);
        for (i, s) in TRIPLE.iter().enumerate() {
            assert_eq!(c.insert(&rooted(s)).unwrap(), TreeId::new(i));
        }
        c
    }

    #[test]
    fn empty_container() {
        let c = AfContainer::new(ContainerMode::RootedSpr);
        let t = rooted(TRIPLE[0]);
        assert_eq!(c.id(&t), None);
        assert!(c.spr_neighbors(&t).unwrap().is_empty());
        assert!(c.nni_neighbors(&t).is_empty());
        assert!(c.neighbor_strings(&t).unwrap().is_empty());
        let mut tbr = AfContainer::new(ContainerMode::Tbr);
        assert!(matches!(tbr.insert(&t), Err(Error::ModeMismatch { .. })));
        assert!(tbr.tbr_neighbors(&unrooted("(1,2,3);")).unwrap().is_empty());
    }

    #[test]
    fn duplicate_insert_returns_existing_id() {
        let mut c = AfContainer::new(ContainerMode::RootedSpr);
        assert_eq!(c.insert(&rooted("((1,2),(3,4));")).unwrap(), TreeId::new(0));
        let keys = c.forest_key_count();
        assert_eq!(c.insert(&rooted("((4,3),(2,1));")).unwrap(), TreeId::new(0));
        assert_eq!(c.len(), 1);
        assert_eq!(c.forest_key_count(), keys);
        assert_eq!(c.id(&rooted("((3,4),(1,2));")), Some(TreeId::new(0)));
    }

    #[test]
    fn triple_shares_a_forest() {
        let c = triple();
        let shared: Vec<_> = c
            .forest_lists()
            .filter(|(k, _)| k.as_slice() == b"(r,1,(2,3)) (4,5)p;")
            .map(|(_, ids)| ids.to_vec())
            .collect();
        assert_eq!(
            shared,
            vec![vec![TreeId::new(0), TreeId::new(1), TreeId::new(2)]]
        );
        let got: HashSet<TreeId> = c
            .spr_neighbors(&rooted(TRIPLE[0]))
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(got, [TreeId::new(1), TreeId::new(2)].into());
        let strings = c.neighbor_strings(&rooted(TRIPLE[0])).unwrap();
        assert_eq!(
            strings,
            vec![
                c.sdlnewick_of(TreeId::new(1)),
                c.sdlnewick_of(TreeId::new(2))
            ]
        );
    }

    #[test]
    fn sdlnewick_of_and_round_trip() {
        let c = triple();
        assert_eq!(
            c.sdlnewick_of(TreeId::new(0)),
            sdlnewick_tree(&rooted(TRIPLE[0])).as_str()
        );
        assert_eq!(c.sdlnewick_of(TreeId::new(99)), "");
        for (i, s) in c.tree_strings().enumerate() {
            let t = decode_tree(s.as_bytes(), Strictness::Strict).unwrap();
            assert_eq!(c.id(&t), Some(TreeId::new(i)));
            assert_eq!(c.id_of_str(s), Some(TreeId::new(i)));
        }
    }

    #[test]
    fn quartets_nni() {
        let mut c = AfContainer::new(ContainerMode::UnrootedSpr);
        let qs = ["(1,2,(3,4));", "(1,3,(2,4));", "(1,4,(2,3));"];
        for q in qs {
            c.insert(&unrooted(q)).unwrap();
        }
        for (i, q) in qs.iter().enumerate() {
            let want: Vec<TreeId> = (0..3).filter(|&j| j != i).map(TreeId::new).collect();
            assert_eq!(c.nni_neighbors(&unrooted(q)), want);
        }
    }

    #[test]
    fn query_mode_checks() {
        let c = triple();
        assert!(c.tbr_neighbors(&rooted(TRIPLE[0])).is_err());
        assert!(c.spr_neighbors(&unrooted("(1,2,(3,4));")).is_err());
    }

    #[test]
    fn snapshot_round_trip() {
        let c = triple();
        let mut bytes = Vec::new();
        c.write_snapshot(&mut bytes).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("afcontainer v1 rspr 3\n"));
        let back = AfContainer::read_snapshot(bytes.as_slice()).unwrap();
        assert_eq!(
            back.tree_strings().collect::<Vec<_>>(),
            c.tree_strings().collect::<Vec<_>>()
        );
        assert_eq!(back.forest_key_count(), c.forest_key_count());

        for bad in [
            "",
            "afcontainer v2 rspr 0\n",
            "afcontainer v1 nni 0\n",
            "afcontainer v1 rspr 2\n(r,1,2);\n",
            "afcontainer v1 rspr 2\n(r,1,2);\n(r,1,2);\n",
            "afcontainer v1 uspr 1\n(r,1,2);\n",
            "afcontainer v1 rspr 1\n(r,2,1);\n",
        ] {
            assert!(
                AfContainer::read_snapshot(bad.as_bytes()).is_err(),
                "{bad:?}"
            );
        }
    }
}
