//! Standard Newick input restricted to binary trees over integer labels.

use std::collections::HashSet;

use super::{Label, Node, NodeId, Rootedness, Taxon, Tree};
use crate::error::{ParseError, ParseErrorKind};

/// Whether branch lengths and internal node labels are rejected or dropped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

/// Parse `tree := subtree ";"` with `subtree := label | "(" subtree ("," subtree)+ ")"`.
///
/// Rooted input must have a two-child root; ρ is attached to it. Unrooted
/// input must have a three-child root. Runs in time linear in the input.
pub fn parse_newick(
    text: &[u8],
    rootedness: Rootedness,
    strictness: Strictness,
) -> Result<Tree, ParseError> {
    let mut p = Parser {
        text,
        pos: 0,
        strictness,
    };
    let mut nodes: Vec<Node> = Vec::new();
    // Open groups, innermost last.
    let mut open: Vec<NodeId> = Vec::new();
    let mut seen = HashSet::new();
    let mut root: Option<NodeId> = None;

    let link = |nodes: &mut Vec<Node>, parent: Option<NodeId>, child: NodeId| {
        if let Some(parent) = parent {
            // Arity is checked from `child_counts` when the group closes.
            if nodes[parent.index()].nbrs.len() < 3 {
                nodes[parent.index()].nbrs.push(child);
            }
            if nodes[child.index()].nbrs.is_empty() {
                nodes[child.index()].nbrs.push(parent);
            }
        }
    };
    let mut child_counts: Vec<usize> = Vec::new();

    'subtree: loop {
        p.skip_ws();
        match p.peek() {
            None => return Err(p.err(ParseErrorKind::UnexpectedEnd)),
            Some(b'(') => {
                p.pos += 1;
                let id = NodeId::new(nodes.len());
                nodes.push(Node::internal());
                link(&mut nodes, open.last().copied(), id);
                if let Some(c) = child_counts.last_mut() {
                    *c += 1;
                }
                open.push(id);
                child_counts.push(0);
                continue 'subtree;
            }
            Some(_) => {
                let start = p.pos;
                let value = p.label()?;
                if !seen.insert(value.get()) {
                    return Err(ParseError::new(
                        ParseErrorKind::DuplicateLabel(value.get()),
                        start,
                    ));
                }
                let id = NodeId::new(nodes.len());
                nodes.push(Node::leaf(Label::Taxon(value)));
                link(&mut nodes, open.last().copied(), id);
                if let Some(c) = child_counts.last_mut() {
                    *c += 1;
                } else {
                    root = Some(id);
                }
            }
        }
        // After a complete subtree.
        loop {
            p.branch_length()?;
            p.skip_ws();
            match p.peek() {
                Some(b',') if !open.is_empty() => {
                    p.pos += 1;
                    continue 'subtree;
                }
                Some(b')') if !open.is_empty() => {
                    let at = p.pos;
                    p.pos += 1;
                    let id = open.pop().unwrap();
                    let count = child_counts.pop().unwrap();
                    if open.is_empty() {
                        root = Some(id);
                        check_root_arity(count, rootedness, at)?;
                    } else if count != 2 {
                        return Err(ParseError::new(ParseErrorKind::NonBinary(count), at));
                    }
                    p.internal_label()?;
                }
                Some(b';') if open.is_empty() => {
                    p.pos += 1;
                    p.skip_ws();
                    if p.peek().is_some() {
                        return Err(p.err(ParseErrorKind::Trailing));
                    }
                    break 'subtree;
                }
                Some(c) => return Err(p.err(ParseErrorKind::Unexpected(c as char))),
                None => return Err(p.err(ParseErrorKind::UnexpectedEnd)),
            }
        }
    }

    let root = root.expect("parsed tree has a root");
    if nodes[root.index()].is_leaf() {
        let msg = format!("a single leaf is not a {rootedness} binary tree");
        return Err(ParseError::new(ParseErrorKind::Arity(msg), 0));
    }
    if rootedness == Rootedness::Rooted {
        let rho = NodeId::new(nodes.len());
        let mut leaf = Node::leaf(Label::Rho);
        leaf.nbrs.push(root);
        nodes.push(leaf);
        nodes[root.index()].nbrs.push(rho);
    }
    Ok(Tree::from_nodes(nodes, rootedness))
}

fn check_root_arity(count: usize, rootedness: Rootedness, at: usize) -> Result<(), ParseError> {
    let want = match rootedness {
        Rootedness::Rooted => 2,
        Rootedness::Unrooted => 3,
    };
    if count == want {
        return Ok(());
    }
    if count < 2 {
        return Err(ParseError::new(ParseErrorKind::NonBinary(count), at));
    }
    let msg = format!("{rootedness} trees need a {want}-child root, found {count} children");
    Err(ParseError::new(ParseErrorKind::Arity(msg), at))
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    strictness: Strictness,
}

fn is_token_byte(b: u8) -> bool {
    !matches!(b, b'(' | b')' | b',' | b':' | b';') && !b.is_ascii_whitespace()
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(kind, self.pos)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn token(&mut self) -> &[u8] {
        let start = self.pos;
        while self.peek().is_some_and(is_token_byte) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn label(&mut self) -> Result<Taxon, ParseError> {
        let start = self.pos;
        let token = self.token();
        if token.is_empty() {
            let c = self.text[start] as char;
            return Err(ParseError::new(ParseErrorKind::Unexpected(c), start));
        }
        parse_label(token).ok_or_else(|| {
            let text = String::from_utf8_lossy(token).into_owned();
            ParseError::new(ParseErrorKind::InvalidLabel(text), start)
        })
    }

    fn branch_length(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() != Some(b':') {
            return Ok(());
        }
        if self.strictness == Strictness::Strict {
            return Err(self.err(ParseErrorKind::Annotation));
        }
        self.pos += 1;
        self.skip_ws();
        self.token();
        Ok(())
    }

    fn internal_label(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some_and(is_token_byte) {
            if self.strictness == Strictness::Strict {
                return Err(self.err(ParseErrorKind::Annotation));
            }
            self.token();
        }
        Ok(())
    }
}

/// `[1-9][0-9]*` fitting in a `u64`.
pub(crate) fn parse_label(token: &[u8]) -> Option<Taxon> {
    match token.first() {
        Some(b'1'..=b'9') => {}
        _ => return None,
    }
    if !token.iter().all(u8::is_ascii_digit) {
        return None;
    }
    std::str::from_utf8(token)
        .ok()?
        .parse::<u64>()
        .ok()
        .and_then(Taxon::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, r: Rootedness) -> Result<Tree, ParseError> {
        parse_newick(s.as_bytes(), r, Strictness::Strict)
    }

    #[test]
    fn two_leaf_rooted_gets_rho() {
        let t = parse("(1,2);", Rootedness::Rooted).unwrap();
        assert_eq!(t.leaf_count(), 2);
        let root = t.root().unwrap();
        let mut labels: Vec<_> = t
            .neighbors(root)
            .iter()
            .map(|&n| t.label(n).unwrap())
            .collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![
                Label::Rho,
                Label::Taxon(Taxon::new(1).unwrap()),
                Label::Taxon(Taxon::new(2).unwrap())
            ]
        );
    }

    #[test]
    fn four_leaf_unrooted() {
        let t = parse("(1,2,(3,4));", Rootedness::Unrooted).unwrap();
        assert_eq!(t.leaf_count(), 4);
        assert_eq!(t.node_count(), 6);
        assert!(!t.is_rooted());
    }

    #[test]
    fn whitespace_between_tokens() {
        let t = parse(" ( 1 ,\t2 , ( 3 , 4 ) ) ;\n", Rootedness::Unrooted).unwrap();
        assert_eq!(t.leaf_count(), 4);
    }

    #[test]
    fn duplicate_label() {
        for r in [Rootedness::Rooted, Rootedness::Unrooted] {
            let err = parse("(1,(2,2));", r).unwrap_err();
            assert_eq!(err.kind, ParseErrorKind::DuplicateLabel(2));
        }
    }

    #[test]
    fn bad_labels() {
        for s in [
            "(0,1,2);",
            "(01,2,3);",
            "(a,2,3);",
            "(1,2,99999999999999999999);",
        ] {
            let err = parse(s, Rootedness::Unrooted).unwrap_err();
            assert!(
                matches!(err.kind, ParseErrorKind::InvalidLabel(_)),
                "{s}: {err}"
            );
        }
        let max = format!("(1,2,{});", u64::MAX);
        assert!(parse(&max, Rootedness::Unrooted).is_ok());
    }

    #[test]
    fn arity_for_mode() {
        let err = parse("(1,2,(3,4));", Rootedness::Rooted).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity(_)));
        let err = parse("((1,2),(3,4));", Rootedness::Unrooted).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity(_)));
        let err = parse("1;", Rootedness::Rooted).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity(_)));
    }

    #[test]
    fn non_binary() {
        let err = parse("(1,2,(3,4,5));", Rootedness::Unrooted).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonBinary(3));
        let err = parse("(1,2,(3));", Rootedness::Unrooted).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonBinary(1));
        let err = parse("(1,2,3,4,5);", Rootedness::Unrooted).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity(_)));
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse("(1,2,(3,4);", Rootedness::Unrooted).unwrap_err();
        assert_eq!(err.position, 10);
        assert_eq!(err.kind, ParseErrorKind::Unexpected(';'));
        let err = parse("(1,2,(3,4))", Rootedness::Unrooted).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        let err = parse("(1,2,(3,4)); x", Rootedness::Unrooted).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Trailing);
    }

    #[test]
    fn annotations_strict_and_lenient() {
        let s = "((1:0.5,2:1e-3)90:0.1,(3,4)x);";
        let err = parse(s, Rootedness::Rooted).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Annotation);
        let t = parse_newick(s.as_bytes(), Rootedness::Rooted, Strictness::Lenient).unwrap();
        assert_eq!(t.leaf_count(), 4);
    }
}
