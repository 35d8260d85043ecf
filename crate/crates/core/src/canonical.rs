//! Smallest-descendant-label Newick: a unique string for every tree and
//! forest.
//!
//! Children are written in increasing order of their smallest descendant
//! label. An unrooted component is written from the internal node next to
//! its smallest leaf. The ρ leaf is written `r` as the first child of the
//! node it hangs from, and a component cut away from ρ is written as
//! `(A,B)p` (or `(x)p` for a single leaf). Forest components are separated
//! by one space and ordered by [`OrderingKey`]; the string ends with `;`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{ParseError, ParseErrorKind};
use crate::tree::{Component, Forest, Label, Node, NodeId, Rootedness, Strictness, Tree};

/// The canonical byte string of a tree or forest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalString(String);

impl CanonicalString {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Wrap bytes produced by an [`Encoder`].
    pub(crate) fn from_encoded(bytes: Vec<u8>) -> Self {
        CanonicalString(String::from_utf8(bytes).expect("encoder writes ASCII"))
    }
}

impl fmt::Display for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<[u8]> for CanonicalString {
    fn as_ref(&self) -> &[u8] {
        self.as_bytes()
    }
}

/// Sort key for forest components. The ρ component sorts first, every
/// other component by its smallest label. `ComponentRoot` is the key of a
/// pruned component's marker node and sorts after every label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderingKey {
    OriginalRoot,
    Label(u64),
    ComponentRoot,
}

const NONE: u32 = u32::MAX;

enum Tok {
    Node(NodeId),
    Comma,
    Close,
}

/// Reusable scratch space for encoding many trees or forests.
#[derive(Default)]
pub struct Encoder {
    parent: Vec<u32>,
    min: Vec<u64>,
    order: Vec<NodeId>,
    stack: Vec<Tok>,
    kids: Vec<(u64, NodeId, u32)>,
    parts: Vec<(OrderingKey, usize, usize)>,
    scratch: Vec<u8>,
    itoa: itoa::Buffer,
}

impl Encoder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append the canonical string of `tree` to `out`.
    pub fn tree(&mut self, tree: &Tree, out: &mut Vec<u8>) {
        self.component(tree.nodes(), None, out);
        out.push(b';');
    }

    /// Append the canonical string of `forest` to `out`.
    pub fn forest(&mut self, forest: &Forest, out: &mut Vec<u8>) {
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        self.parts.clear();
        for c in forest.components() {
            let start = scratch.len();
            let key = self.component(&c.nodes, c.root, &mut scratch);
            self.parts.push((key, start, scratch.len()));
        }
        self.parts.sort_unstable_by_key(|p| p.0);
        for (i, &(_, a, b)) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push(b' ');
            }
            out.extend_from_slice(&scratch[a..b]);
        }
        out.push(b';');
        self.scratch = scratch;
    }

    /// Write one component without terminator and return its sort key.
    fn component(
        &mut self,
        nodes: &[Node],
        root: Option<NodeId>,
        out: &mut Vec<u8>,
    ) -> OrderingKey {
        if self.parent.len() < nodes.len() {
            self.parent.resize(nodes.len(), NONE);
            self.min.resize(nodes.len(), 0);
        }
        let mut kids: Vec<(NodeId, Option<NodeId>)> = Vec::with_capacity(3);

        if let Some(m) = root {
            let node = &nodes[m.index()];
            if node.label.is_some() {
                kids.push((m, None));
            } else {
                kids.extend(node.nbrs.iter().map(|&c| (c, Some(m))));
            }
            let min = self.group(nodes, &kids, b"", b"p", out);
            return OrderingKey::Label(min);
        }

        if let Some(rho) = nodes.iter().position(|n| n.label == Some(Label::Rho)) {
            let rho = NodeId::new(rho);
            if let Some(&x) = nodes[rho.index()].nbrs.first() {
                if nodes[x.index()].label.is_some() {
                    kids.push((x, Some(rho)));
                } else {
                    kids.extend(
                        nodes[x.index()]
                            .nbrs
                            .iter()
                            .filter(|&&c| c != rho)
                            .map(|&c| (c, Some(x))),
                    );
                }
            }
            self.group(nodes, &kids, b"r", b"", out);
            return OrderingKey::OriginalRoot;
        }

        let (s, s_label) = smallest_leaf(nodes);
        if nodes.len() == 1 {
            out.extend_from_slice(self.itoa.format(s_label).as_bytes());
            return OrderingKey::Label(s_label);
        }
        let x = nodes[s.index()].nbrs[0];
        if nodes[x.index()].label.is_some() {
            kids.extend([(s, Some(x)), (x, Some(s))]);
        } else {
            kids.extend(nodes[x.index()].nbrs.iter().map(|&c| (c, Some(x))));
        }
        self.group(nodes, &kids, b"", b"", out);
        OrderingKey::Label(s_label)
    }

    /// Write `(prefix,k1,k2,...)suffix` with the subtrees hanging from
    /// `kids` in sorted order. Returns the smallest label written.
    fn group(
        &mut self,
        nodes: &[Node],
        kids: &[(NodeId, Option<NodeId>)],
        prefix: &[u8],
        suffix: &[u8],
        out: &mut Vec<u8>,
    ) -> u64 {
        self.kids.clear();
        for &(k, from) in kids {
            let min = self.prepare(nodes, k, from);
            self.kids
                .push((min, k, from.map_or(NONE, |f| f.index() as u32)));
        }
        self.kids.sort_unstable();
        debug_assert!(
            self.kids.windows(2).all(|w| w[0].0 < w[1].0),
            "tied sort keys"
        );
        out.push(b'(');
        out.extend_from_slice(prefix);
        for i in 0..self.kids.len() {
            if i > 0 || !prefix.is_empty() {
                out.push(b',');
            }
            let (_, k, from) = self.kids[i];
            self.parent[k.index()] = from;
            self.emit(nodes, k, out);
        }
        out.push(b')');
        out.extend_from_slice(suffix);
        self.kids.first().map_or(u64::MAX, |k| k.0)
    }

    /// Record parents and smallest labels in the subtree hanging from `top`
    /// away from `from`. Returns the smallest label.
    fn prepare(&mut self, nodes: &[Node], top: NodeId, from: Option<NodeId>) -> u64 {
        self.order.clear();
        self.order.push(top);
        self.parent[top.index()] = from.map_or(NONE, |f| f.index() as u32);
        let mut i = 0;
        while i < self.order.len() {
            let x = self.order[i];
            i += 1;
            for &y in &nodes[x.index()].nbrs {
                if y.index() as u32 != self.parent[x.index()] {
                    self.parent[y.index()] = x.index() as u32;
                    self.order.push(y);
                }
            }
        }
        for &x in self.order.iter().rev() {
            let node = &nodes[x.index()];
            self.min[x.index()] = match node.label {
                Some(Label::Taxon(t)) => t.get(),
                Some(Label::Rho) => 0,
                None => node
                    .nbrs
                    .iter()
                    .filter(|y| y.index() as u32 != self.parent[x.index()])
                    .map(|y| self.min[y.index()])
                    .min()
                    .unwrap_or(u64::MAX),
            };
        }
        self.min[top.index()]
    }

    fn emit(&mut self, nodes: &[Node], top: NodeId, out: &mut Vec<u8>) {
        self.stack.clear();
        self.stack.push(Tok::Node(top));
        while let Some(tok) = self.stack.pop() {
            match tok {
                Tok::Comma => out.push(b','),
                Tok::Close => out.push(b')'),
                Tok::Node(x) => {
                    let node = &nodes[x.index()];
                    match node.label {
                        Some(Label::Taxon(t)) => {
                            out.extend_from_slice(self.itoa.format(t.get()).as_bytes())
                        }
                        Some(Label::Rho) => out.push(b'r'),
                        None => {
                            let p = self.parent[x.index()];
                            let mut c = node.nbrs.iter().copied().filter(|y| y.index() as u32 != p);
                            let (mut a, mut b) = (c.next().unwrap(), c.next().unwrap());
                            debug_assert!(c.next().is_none());
                            if self.min[b.index()] < self.min[a.index()] {
                                std::mem::swap(&mut a, &mut b);
                            }
                            out.push(b'(');
                            self.stack
                                .extend([Tok::Close, Tok::Node(b), Tok::Comma, Tok::Node(a)]);
                        }
                    }
                }
            }
        }
    }
}

fn smallest_leaf(nodes: &[Node]) -> (NodeId, u64) {
    nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| {
            n.label
                .and_then(Label::taxon)
                .map(|t| (NodeId::new(i), t.get()))
        })
        .min_by_key(|&(_, t)| t)
        .expect("component without taxa")
}

pub fn sdlnewick_tree(tree: &Tree) -> CanonicalString {
    let mut out = Vec::with_capacity(8 * tree.node_count());
    Encoder::new().tree(tree, &mut out);
    CanonicalString::from_encoded(out)
}

pub fn sdlnewick_forest(forest: &Forest) -> CanonicalString {
    let mut out = Vec::new();
    Encoder::new().forest(forest, &mut out);
    CanonicalString::from_encoded(out)
}

/// Decode a canonical tree string. Rootedness follows from the `r` token.
/// Strict decoding also rejects strings that are not in canonical order.
pub fn decode_tree(text: &[u8], strictness: Strictness) -> Result<Tree, ParseError> {
    let forest = decode_forest(text, strictness)?;
    let shape = |msg: &str| ParseError::new(ParseErrorKind::Arity(msg.to_string()), 0);
    let [component] = <[Component; 1]>::try_from(forest.components)
        .map_err(|_| shape("a tree string has one component"))?;
    let rootedness = match component.marker() {
        Some(crate::tree::RootMarker::ComponentRoot) => {
            return Err(shape("a tree cannot have a pruned root"))
        }
        Some(_) => Rootedness::Rooted,
        None => Rootedness::Unrooted,
    };
    let tree = Tree::try_from_nodes(component.nodes, rootedness).map_err(|e| shape(&e))?;
    let min_leaves = if tree.is_rooted() { 2 } else { 3 };
    if tree.leaf_count() < min_leaves {
        return Err(shape(&format!(
            "a {rootedness} tree needs at least {min_leaves} leaves"
        )));
    }
    Ok(tree)
}

/// Decode a canonical forest string.
pub fn decode_forest(text: &[u8], strictness: Strictness) -> Result<Forest, ParseError> {
    let mut d = Decoder {
        text,
        pos: 0,
        strict: strictness == Strictness::Strict,
        seen: HashSet::new(),
    };
    let mut components = Vec::new();
    let mut prev: Option<OrderingKey> = None;
    let mut rooted = 0;
    loop {
        let start = d.pos;
        let (component, key) = d.component()?;
        if key == OrderingKey::OriginalRoot {
            rooted += 1;
            if rooted > 1 {
                return Err(ParseError::new(
                    ParseErrorKind::Arity("more than one ρ component".into()),
                    start,
                ));
            }
        }
        if d.strict && prev.is_some_and(|p| p >= key) {
            return Err(ParseError::new(ParseErrorKind::ComponentOrder, start));
        }
        prev = Some(key);
        components.push(component);
        match d.peek() {
            Some(b' ') => d.pos += 1,
            Some(b';') => {
                d.pos += 1;
                if d.pos != text.len() {
                    return Err(d.err(ParseErrorKind::Trailing));
                }
                return Ok(Forest { components });
            }
            Some(c) => return Err(d.err(ParseErrorKind::Unexpected(c as char))),
            None => return Err(d.err(ParseErrorKind::UnexpectedEnd)),
        }
    }
}

struct Decoder<'a> {
    text: &'a [u8],
    pos: usize,
    strict: bool,
    seen: HashSet<u64>,
}

struct Frame {
    id: NodeId,
    count: usize,
    prev_min: u64,
    min: u64,
}

#[derive(PartialEq)]
enum TopKind {
    Rooted,
    Plain,
}

impl Decoder<'_> {
    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(kind, self.pos)
    }

    fn label(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let token = &self.text[start..self.pos];
        if token.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.err(ParseErrorKind::Unexpected(c as char)),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        let t = crate::tree::parse_label(token).ok_or_else(|| {
            ParseError::new(
                ParseErrorKind::InvalidLabel(String::from_utf8_lossy(token).into_owned()),
                start,
            )
        })?;
        if !self.seen.insert(t.get()) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateLabel(t.get()),
                start,
            ));
        }
        Ok(t.get())
    }

    fn component(&mut self) -> Result<(Component, OrderingKey), ParseError> {
        let mut nodes: Vec<Node> = Vec::new();
        let leaf = |nodes: &mut Vec<Node>, value: u64| {
            nodes.push(Node::leaf(Label::Taxon(
                crate::tree::Taxon::new(value).unwrap(),
            )));
            NodeId::new(nodes.len() - 1)
        };
        if self.peek() != Some(b'(') {
            let value = self.label()?;
            leaf(&mut nodes, value);
            return Ok((Component { nodes, root: None }, OrderingKey::Label(value)));
        }
        let open_at = self.pos;
        self.pos += 1;
        let kind = if self.peek() == Some(b'r') {
            self.pos += 1;
            TopKind::Rooted
        } else {
            TopKind::Plain
        };
        // Children of the outermost group: (node, smallest label, position).
        let mut top: Vec<(NodeId, u64, usize)> = Vec::new();
        let mut frames: Vec<Frame> = Vec::new();
        let mut top_prev = 0u64;

        let closed_empty = kind == TopKind::Rooted && self.peek() == Some(b')');
        if kind == TopKind::Rooted && !closed_empty {
            if self.peek() != Some(b',') {
                return Err(match self.peek() {
                    Some(c) => self.err(ParseErrorKind::Unexpected(c as char)),
                    None => self.err(ParseErrorKind::UnexpectedEnd),
                });
            }
            self.pos += 1;
        }

        if !closed_empty {
            'item: loop {
                let start = self.pos;
                let (mut done, mut done_min) = match self.peek() {
                    Some(b'(') => {
                        self.pos += 1;
                        nodes.push(Node::internal());
                        frames.push(Frame {
                            id: NodeId::new(nodes.len() - 1),
                            count: 0,
                            prev_min: 0,
                            min: u64::MAX,
                        });
                        continue 'item;
                    }
                    _ => {
                        let value = self.label()?;
                        (leaf(&mut nodes, value), value)
                    }
                };
                let mut done_at = start;
                loop {
                    // Attach the finished subtree to the innermost open group.
                    match frames.last_mut() {
                        Some(f) => {
                            if f.count == 2 {
                                return Err(ParseError::new(ParseErrorKind::NonBinary(3), done_at));
                            }
                            if self.strict && f.count > 0 && done_min < f.prev_min {
                                return Err(ParseError::new(
                                    ParseErrorKind::CanonicalOrder,
                                    done_at,
                                ));
                            }
                            nodes[f.id.index()].nbrs.push(done);
                            nodes[done.index()].nbrs.push(f.id);
                            f.count += 1;
                            f.prev_min = done_min;
                            f.min = f.min.min(done_min);
                        }
                        None => {
                            if top.len() == 3 {
                                return Err(ParseError::new(ParseErrorKind::NonBinary(4), done_at));
                            }
                            if self.strict && !top.is_empty() && done_min < top_prev {
                                return Err(ParseError::new(
                                    ParseErrorKind::CanonicalOrder,
                                    done_at,
                                ));
                            }
                            top.push((done, done_min, done_at));
                            top_prev = done_min;
                        }
                    }
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            continue 'item;
                        }
                        Some(b')') => {
                            let at = self.pos;
                            self.pos += 1;
                            let Some(f) = frames.pop() else { break 'item };
                            if f.count != 2 {
                                return Err(ParseError::new(
                                    ParseErrorKind::NonBinary(f.count),
                                    at,
                                ));
                            }
                            done = f.id;
                            done_min = f.min;
                            done_at = at;
                        }
                        Some(c) => return Err(self.err(ParseErrorKind::Unexpected(c as char))),
                        None => return Err(self.err(ParseErrorKind::UnexpectedEnd)),
                    }
                }
            }
        } else {
            self.pos += 1;
        }

        let pruned = kind == TopKind::Plain && self.peek() == Some(b'p');
        if pruned {
            self.pos += 1;
        }
        let is_leaf = |nodes: &[Node], id: NodeId| nodes[id.index()].label.is_some();
        let shape = |msg: &str| ParseError::new(ParseErrorKind::Arity(msg.to_string()), open_at);
        let min = top.iter().map(|k| k.1).min().unwrap_or(u64::MAX);
        let link = |nodes: &mut Vec<Node>, a: NodeId, b: NodeId| {
            nodes[a.index()].nbrs.push(b);
            nodes[b.index()].nbrs.push(a);
        };
        let hub = |nodes: &mut Vec<Node>, kids: &[(NodeId, u64, usize)]| {
            nodes.push(Node::internal());
            let h = NodeId::new(nodes.len() - 1);
            for k in kids {
                nodes[h.index()].nbrs.push(k.0);
                nodes[k.0.index()].nbrs.push(h);
            }
            h
        };

        match kind {
            TopKind::Rooted => {
                nodes.push(Node::leaf(Label::Rho));
                let rho = NodeId::new(nodes.len() - 1);
                match top.len() {
                    0 => {}
                    1 => {
                        if self.strict && !is_leaf(&nodes, top[0].0) {
                            return Err(shape("a single child of ρ must be a leaf"));
                        }
                        link(&mut nodes, rho, top[0].0);
                    }
                    2 => {
                        let h = hub(&mut nodes, &top);
                        link(&mut nodes, h, rho);
                    }
                    c => return Err(shape(&format!("ρ group has {c} subtrees"))),
                }
                Ok((Component { nodes, root: None }, OrderingKey::OriginalRoot))
            }
            TopKind::Plain if pruned => {
                let root = match top.len() {
                    1 => {
                        if self.strict && !is_leaf(&nodes, top[0].0) {
                            return Err(shape("a single-child pruned group must hold a leaf"));
                        }
                        top[0].0
                    }
                    2 => hub(&mut nodes, &top),
                    c => return Err(shape(&format!("pruned group has {c} subtrees"))),
                };
                Ok((
                    Component {
                        nodes,
                        root: Some(root),
                    },
                    OrderingKey::Label(min),
                ))
            }
            TopKind::Plain => {
                match top.len() {
                    3 => {
                        if self.strict && !is_leaf(&nodes, top[0].0) {
                            return Err(ParseError::new(ParseErrorKind::CanonicalOrder, top[0].2));
                        }
                        hub(&mut nodes, &top);
                    }
                    2 => {
                        if self.strict && !(is_leaf(&nodes, top[0].0) && is_leaf(&nodes, top[1].0))
                        {
                            return Err(ParseError::new(ParseErrorKind::CanonicalOrder, top[0].2));
                        }
                        link(&mut nodes, top[0].0, top[1].0);
                    }
                    c => return Err(shape(&format!("unrooted group has {c} subtrees"))),
                }
                Ok((Component { nodes, root: None }, OrderingKey::Label(min)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{Edge, Taxon};

    fn rooted(s: &str) -> Tree {
        Tree::from_newick(s, Rootedness::Rooted).unwrap()
    }

    fn unrooted(s: &str) -> Tree {
        Tree::from_newick(s, Rootedness::Unrooted).unwrap()
    }

    fn strict_forest(s: &str) -> Result<Forest, ParseError> {
        decode_forest(s.as_bytes(), Strictness::Strict)
    }

    #[test]
    fn two_leaf_rooted() {
        assert_eq!(sdlnewick_tree(&rooted("(1,2);")).as_str(), "(r,1,2);");
        assert_eq!(sdlnewick_tree(&rooted("(2,1);")).as_str(), "(r,1,2);");
    }

    #[test]
    fn unrooted_rerooted_at_smallest_leaf() {
        let t = Tree::from_newick("((3,4),(1,2),5);", Rootedness::Unrooted).unwrap();
        assert_eq!(sdlnewick_tree(&t).as_str(), "(1,2,((3,4),5));");
        assert_eq!(
            sdlnewick_tree(&unrooted("(3,4,(1,2));")).as_str(),
            "(1,2,(3,4));"
        );
    }

    #[test]
    fn rooted_children_sorted() {
        let t = rooted("((5,(4,3)),(2,1));");
        assert_eq!(sdlnewick_tree(&t).as_str(), "(r,(1,2),((3,4),5));");
    }

    #[test]
    fn rooted_forest_with_pruned_pair() {
        let t = rooted("((1,(2,3)),(4,5));");
        let (parent, _) = t.orientation();
        let four = t.find_leaf(Taxon::new(4).unwrap()).unwrap();
        let p = parent[four.index()].unwrap();
        let f = t
            .yield_forest(&[Edge::new(p, parent[p.index()].unwrap())])
            .unwrap();
        let s = sdlnewick_forest(&f);
        assert_eq!(s.as_str(), "(r,1,(2,3)) (4,5)p;");
        let back = strict_forest(s.as_str()).unwrap();
        assert_eq!(sdlnewick_forest(&back), s);
    }

    #[test]
    fn empty_cut_forest_equals_tree() {
        for t in [rooted("((1,(2,3)),(4,5));"), unrooted("(1,2,(3,(4,5)));")] {
            let f = t.yield_forest(&[]).unwrap();
            assert_eq!(sdlnewick_forest(&f), sdlnewick_tree(&t));
        }
    }

    #[test]
    fn unrooted_forest() {
        let t = unrooted("(1,2,(3,(4,5)));");
        let (parent, _) = t.orientation();
        let four = t.find_leaf(Taxon::new(4).unwrap()).unwrap();
        let p = parent[four.index()].unwrap();
        let f = t
            .yield_forest(&[Edge::new(p, parent[p.index()].unwrap())])
            .unwrap();
        assert_eq!(sdlnewick_forest(&f).as_str(), "(1,2,3) (4,5);");
    }

    #[test]
    fn degenerate_components() {
        let t = rooted("((1,2),3);");
        let rho = t.rho().unwrap();
        let f = t
            .yield_forest(&[Edge::new(t.root().unwrap(), rho)])
            .unwrap();
        assert_eq!(sdlnewick_forest(&f).as_str(), "(r) ((1,2),3)p;");
        let three = t.find_leaf(Taxon::new(3).unwrap()).unwrap();
        let f = t
            .yield_forest(&[Edge::new(three, t.root().unwrap())])
            .unwrap();
        assert_eq!(sdlnewick_forest(&f).as_str(), "(r,1,2) (3)p;");
        let one = t.find_leaf(Taxon::new(1).unwrap()).unwrap();
        let e = Edge::new(one, t.neighbors(one)[0]);
        let f = t.yield_forest(&[e]).unwrap();
        assert_eq!(sdlnewick_forest(&f).as_str(), "(r,2,3) (1)p;");
        for s in [
            "(r) ((1,2),3)p;",
            "(r,1,2) (3)p;",
            "(r,2,3) (1)p;",
            "1 (2,3);",
            "(1,2) (3)p;",
        ] {
            let f = strict_forest(s).unwrap();
            assert_eq!(sdlnewick_forest(&f).as_str(), s);
        }
    }

    #[test]
    fn decode_trees() {
        let t = decode_tree(b"(r,1,2);", Strictness::Strict).unwrap();
        assert!(t.is_rooted());
        assert_eq!(t.leaf_count(), 2);
        let t = decode_tree(b"(1,2,(3,4));", Strictness::Strict).unwrap();
        assert!(!t.is_rooted());
        assert_eq!(t.leaf_count(), 4);
        let err = decode_tree(b"(2,1,(3,4));", Strictness::Strict).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CanonicalOrder);
        let t = decode_tree(b"(2,1,(3,4));", Strictness::Lenient).unwrap();
        assert_eq!(sdlnewick_tree(&t).as_str(), "(1,2,(3,4));");
        let err = decode_tree(b"((1,2),3,4);", Strictness::Strict).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CanonicalOrder);
        for bad in [
            "(r,1);",
            "(1,2);",
            "(1,2)p;",
            "(r,1,2) (3,4);",
            "(r,1,2,3);",
            "1;",
        ] {
            assert!(
                decode_tree(bad.as_bytes(), Strictness::Strict).is_err(),
                "{bad}"
            );
        }
    }

    #[test]
    fn decode_forests() {
        let f = strict_forest("(r,1,(2,3)) (4,5)p;").unwrap();
        assert_eq!(f.len(), 2);
        let f = strict_forest("(1,2,3) (4,5);").unwrap();
        assert!(f.components().iter().all(|c| c.marker().is_none()));
        let err = strict_forest("(4,5)p (r,1,(2,3));").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ComponentOrder);
        assert!(decode_forest(b"(4,5)p (r,1,(2,3));", Strictness::Lenient).is_ok());
    }

    #[test]
    fn decode_errors() {
        let cases: &[(&str, ParseErrorKind)] = &[
            ("(1,2,(3,4))", ParseErrorKind::UnexpectedEnd),
            ("(1,2,(3,4));x", ParseErrorKind::Trailing),
            ("(1,2,(3,3));", ParseErrorKind::DuplicateLabel(3)),
            ("(1,2,(3,4,5));", ParseErrorKind::NonBinary(3)),
            ("(1,2,(0,4));", ParseErrorKind::InvalidLabel("0".into())),
            ("(1,2,3)  (4,5);", ParseErrorKind::Unexpected(' ')),
            ("(1, 2,3);", ParseErrorKind::Unexpected(' ')),
        ];
        for (s, kind) in cases {
            let err = decode_forest(s.as_bytes(), Strictness::Strict).unwrap_err();
            assert_eq!(&err.kind, kind, "{s}");
        }
    }

    #[test]
    fn rooted_and_unrooted_differ() {
        let r = sdlnewick_tree(&rooted("((1,2),3);"));
        let u = sdlnewick_tree(&unrooted("(1,2,3);"));
        assert_ne!(r, u);
    }

    #[test]
    fn ordering_key_order() {
        assert!(OrderingKey::OriginalRoot < OrderingKey::Label(1));
        assert!(OrderingKey::Label(u64::MAX) < OrderingKey::ComponentRoot);
    }
}
