//! A compressed byte trie. Lookups and inserts cost time proportional to the
//! key length, independent of how many keys are stored.

use std::mem::size_of;

struct TrieNode<V> {
    label: Box<[u8]>,
    // (first byte of child label, child index), sorted by byte
    children: Vec<(u8, u32)>,
    value: Option<V>,
}

impl<V> TrieNode<V> {
    fn new(label: &[u8], value: Option<V>) -> Self {
        TrieNode {
            label: label.into(),
            children: Vec::new(),
            value,
        }
    }

    fn child(&self, byte: u8) -> Result<usize, usize> {
        self.children.binary_search_by_key(&byte, |c| c.0)
    }
}

/// Map from byte strings to values, stored as a radix tree.
pub struct ByteTrie<V> {
    nodes: Vec<TrieNode<V>>,
    len: usize,
}

impl<V> Default for ByteTrie<V> {
    fn default() -> Self {
        Self::new()
    }
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<V> ByteTrie<V> {
    pub fn new() -> Self {
        ByteTrie {
            nodes: vec![TrieNode::new(&[], None)],
            len: 0,
        }
    }

    /// Number of keys.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of trie nodes, including the root.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn find(&self, mut key: &[u8]) -> Option<usize> {
        let mut at = 0;
        loop {
            if key.is_empty() {
                return Some(at);
            }
            let i = self.nodes[at].child(key[0]).ok()?;
            let next = self.nodes[at].children[i].1 as usize;
            let label = &self.nodes[next].label;
            if !key.starts_with(label) {
                return None;
            }
            key = &key[label.len()..];
            at = next;
        }
    }

    pub fn get(&self, key: &[u8]) -> Option<&V> {
        self.find(key).and_then(|i| self.nodes[i].value.as_ref())
    }

    pub fn get_mut(&mut self, key: &[u8]) -> Option<&mut V> {
        self.find(key).and_then(|i| self.nodes[i].value.as_mut())
    }

    pub fn contains_key(&self, key: &[u8]) -> bool {
        self.get(key).is_some()
    }

    fn push(&mut self, node: TrieNode<V>) -> u32 {
        let id = u32::try_from(self.nodes.len()).expect("trie exceeds u32 nodes");
        self.nodes.push(node);
        id
    }

    /// The value under `key`, inserting `make()` first if absent.
    pub fn get_or_insert_with(&mut self, key: &[u8], make: impl FnOnce() -> V) -> &mut V {
        let mut at = 0;
        let mut rest = key;
        loop {
            if rest.is_empty() {
                break;
            }
            match self.nodes[at].child(rest[0]) {
                Err(slot) => {
                    let leaf = self.push(TrieNode::new(rest, None));
                    self.nodes[at].children.insert(slot, (rest[0], leaf));
                    at = leaf as usize;
                    break;
                }
                Ok(i) => {
                    let next = self.nodes[at].children[i].1 as usize;
                    let k = common_prefix(&self.nodes[next].label, rest);
                    if k == self.nodes[next].label.len() {
                        rest = &rest[k..];
                        at = next;
                        continue;
                    }
                    // Split the edge to `next` after k bytes.
                    let tail: Box<[u8]> = self.nodes[next].label[k..].into();
                    let mid = self.push(TrieNode::new(&rest[..k], None));
                    self.nodes[mid as usize]
                        .children
                        .push((tail[0], next as u32));
                    self.nodes[next].label = tail;
                    self.nodes[at].children[i].1 = mid;
                    rest = &rest[k..];
                    at = mid as usize;
                }
            }
        }
        let node = &mut self.nodes[at];
        if node.value.is_none() {
            self.len += 1;
        }
        node.value.get_or_insert_with(make)
    }

    /// Insert or replace; returns the previous value.
    pub fn insert(&mut self, key: &[u8], value: V) -> Option<V> {
        let mut value = Some(value);
        let slot = self.get_or_insert_with(key, || value.take().unwrap());
        value.map(|v| std::mem::replace(slot, v))
    }

    /// All entries in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u8>, &V)> + '_ {
        let mut out = Vec::with_capacity(self.len);
        // (node, key length before this node's label)
        let mut stack = vec![(0usize, 0usize)];
        let mut key = Vec::new();
        while let Some((at, depth)) = stack.pop() {
            let node = &self.nodes[at];
            key.truncate(depth);
            key.extend_from_slice(&node.label);
            if let Some(v) = &node.value {
                out.push((key.clone(), v));
            }
            for &(_, c) in node.children.iter().rev() {
                stack.push((c as usize, key.len()));
            }
        }
        out.into_iter()
    }

    /// Approximate heap usage, with `value_heap` reporting the heap owned by
    /// one value.
    pub fn heap_bytes(&self, value_heap: impl Fn(&V) -> usize) -> usize {
        let mut total = self.nodes.capacity() * size_of::<TrieNode<V>>();
        for node in &self.nodes {
            total += node.label.len();
            total += node.children.capacity() * size_of::<(u8, u32)>();
            total += node.value.as_ref().map_or(0, &value_heap);
        }
        total
    }
}
