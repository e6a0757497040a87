//! Newick for trees and extended Newick for networks.
//!
//! A reticulation is written `(subtree)#Hk` at one occurrence and `#Hk` at
//! every other occurrence. Branch lengths and internal labels are not part of
//! the dialect. Files hold one structure per line; blank lines and lines
//! starting with `#` are skipped.

use crate::classify::{cluster, tree_path_min};
use crate::error::{Error, Result};
use crate::label::{is_label_char, TaxonLabel};
use crate::network::PhyloNetwork;
use crate::tree::{PhyloTree, TreeShape};
use crate::VertexId;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug)]
enum Node {
    Leaf { label: TaxonLabel, offset: usize },
    Internal { children: Vec<Node>, tag: Option<(String, usize)> },
    Reference { tag: String, offset: usize },
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn word(&mut self) -> (String, usize) {
        let start = self.pos;
        while self.pos < self.text.len() && is_label_char(self.text[self.pos] as char) {
            self.pos += 1;
        }
        (String::from_utf8_lossy(&self.text[start..self.pos]).into_owned(), start)
    }

    fn tag(&mut self) -> Result<Option<(String, usize)>> {
        if self.peek() != Some(b'#') {
            return Ok(None);
        }
        let at = self.pos;
        self.pos += 1;
        let (name, _) = self.word();
        if name.is_empty() {
            return self.err(at, "expected a hybrid tag name after '#'");
        }
        Ok(Some((name, at)))
    }

    fn document(&mut self) -> Result<Node> {
        let root = self.node()?;
        match self.peek() {
            Some(b';') => self.pos += 1,
            Some(c) => return self.err(self.pos, format!("unexpected '{}'", c as char)),
            None => return self.err(self.pos, "missing terminating ';'"),
        }
        if let Some(c) = self.peek() {
            return self.err(self.pos, format!("unexpected '{}' after ';'", c as char));
        }
        Ok(root)
    }

    fn node(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut children = vec![self.node()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.node()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(c) => return self.err(self.pos, format!("expected ',' or ')', found '{}'", c as char)),
                        None => return self.err(self.pos, "unbalanced parentheses"),
                    }
                }
                self.reject_suffix()?;
                if self.pos < self.text.len() && is_label_char(self.text[self.pos] as char) {
                    return self.err(self.pos, "internal vertex labels are not supported");
                }
                let tag = self.tag()?;
                self.reject_suffix()?;
                Ok(Node::Internal { children, tag })
            }
            Some(b'#') => {
                let (tag, offset) = self.tag()?.expect("peeked '#'");
                self.reject_suffix()?;
                Ok(Node::Reference { tag, offset })
            }
            Some(c) if is_label_char(c as char) => {
                let (name, offset) = self.word();
                let label = TaxonLabel::new(&name).map_err(|_| Error::Parse { offset, message: "invalid label".into() })?;
                if self.peek() == Some(b'#') {
                    return self.err(self.pos, "a hybrid tag must follow a parenthesised subtree");
                }
                self.reject_suffix()?;
                Ok(Node::Leaf { label, offset })
            }
            Some(c) => self.err(self.pos, format!("unexpected '{}'", c as char)),
            None => self.err(self.pos, "unexpected end of input"),
        }
    }

    fn reject_suffix(&mut self) -> Result<()> {
        match self.peek() {
            Some(b':') => self.err(self.pos, "branch lengths are not supported"),
            Some(b'[') => self.err(self.pos, "comments inside a structure are not supported"),
            _ => Ok(()),
        }
    }
}

fn to_shape(node: &Node) -> Result<TreeShape> {
    match node {
        Node::Leaf { label, .. } => Ok(TreeShape::Leaf(label.clone())),
        Node::Internal { tag: Some((_, offset)), .. } | Node::Reference { offset, .. } => {
            Err(Error::Parse { offset: *offset, message: "hybrid tags are not allowed in a tree".into() })
        }
        Node::Internal { children, tag: None } => {
            Ok(TreeShape::Node(children.iter().map(to_shape).collect::<Result<_>>()?))
        }
    }
}

/// Parses a single Newick tree, e.g. `((a,b),c);`.
pub fn parse_tree(text: &str) -> Result<PhyloTree> {
    let root = Parser::new(text).document()?;
    PhyloTree::from_shape(&to_shape(&root)?)
}

struct NetworkBuilder {
    edges: Vec<(VertexId, VertexId)>,
    labels: Vec<Option<TaxonLabel>>,
    defined: BTreeMap<String, VertexId>,
    references: Vec<(String, VertexId, usize)>,
}

impl NetworkBuilder {
    fn vertex(&mut self, label: Option<TaxonLabel>) -> VertexId {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn add(&mut self, node: &Node, parent: Option<VertexId>) -> Result<()> {
        match node {
            Node::Leaf { label, offset } => {
                if self.labels.iter().flatten().any(|l| l == label) {
                    return Err(Error::Parse { offset: *offset, message: format!("duplicate leaf label {label}") });
                }
                let v = self.vertex(Some(label.clone()));
                if let Some(p) = parent {
                    self.edges.push((p, v));
                }
            }
            Node::Internal { children, tag } => {
                let v = self.vertex(None);
                if let Some((name, offset)) = tag {
                    if parent.is_none() {
                        return Err(Error::Parse { offset: *offset, message: "the root cannot be a reticulation".into() });
                    }
                    if self.defined.insert(name.clone(), v).is_some() {
                        return Err(Error::Parse {
                            offset: *offset,
                            message: format!("hybrid tag #{name} has more than one subtree"),
                        });
                    }
                }
                if let Some(p) = parent {
                    self.edges.push((p, v));
                }
                for c in children {
                    self.add(c, Some(v))?;
                }
            }
            Node::Reference { tag, offset } => match parent {
                Some(p) => self.references.push((tag.clone(), p, *offset)),
                None => {
                    return Err(Error::Parse { offset: *offset, message: "a network cannot consist of a hybrid reference".into() })
                }
            },
        }
        Ok(())
    }
}

/// Parses a single extended-Newick network, e.g. `((a,(b)#H1),(#H1,c));`.
pub fn parse_network(text: &str) -> Result<PhyloNetwork> {
    let root = Parser::new(text).document()?;
    let mut b = NetworkBuilder { edges: Vec::new(), labels: Vec::new(), defined: BTreeMap::new(), references: Vec::new() };
    b.add(&root, None)?;
    let mut referenced = BTreeMap::new();
    for (tag, parent, offset) in &b.references {
        let Some(&v) = b.defined.get(tag) else {
            return Err(Error::Parse { offset: *offset, message: format!("hybrid tag #{tag} has no subtree") });
        };
        b.edges.push((*parent, v));
        referenced.insert(tag.clone(), ());
    }
    if let Some(tag) = b.defined.keys().find(|t| !referenced.contains_key(*t)) {
        return Err(Error::Parse { offset: 0, message: format!("hybrid tag #{tag} occurs only once") });
    }
    PhyloNetwork::from_edges(b.labels.len(), &b.edges, b.labels)
}

fn structure_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn with_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { offset, message } => Error::Parse { offset, message: format!("line {line}: {message}") },
        other => other,
    })
}

/// Parses one tree per non-blank, non-comment line.
pub fn parse_trees(text: &str) -> Result<Vec<PhyloTree>> {
    structure_lines(text).map(|(n, l)| with_line(n, parse_tree(l))).collect()
}

/// Parses one network per non-blank, non-comment line.
pub fn parse_networks(text: &str) -> Result<Vec<PhyloNetwork>> {
    structure_lines(text).map(|(n, l)| with_line(n, parse_network(l))).collect()
}

/// Canonical Newick for a tree: children ordered by their smallest leaf label.
pub fn serialize_tree(tree: &PhyloTree) -> String {
    tree.canonical()
}

/// Deterministic extended Newick for a network.
///
/// Children are ordered by the smallest label in their cluster, then by the
/// smallest leaf reachable on a tree path; reticulations are numbered `H1`,
/// `H2`, ... in order of first appearance.
pub fn serialize_network(net: &PhyloNetwork) -> String {
    let n = net.vertex_count();
    let tp = tree_path_min(net);
    let keys: Vec<(Vec<TaxonLabel>, Option<TaxonLabel>)> = (0..n)
        .map(|v| (cluster(net, v).expect("vertex exists").into_iter().collect(), tp[v].clone()))
        .collect();
    let mut numbers = vec![0usize; n];
    let mut next = 0;
    let mut out = String::new();
    write_vertex(net, net.root(), &keys, &mut numbers, &mut next, &mut out);
    out.push(';');
    out
}

fn write_vertex(
    net: &PhyloNetwork,
    v: VertexId,
    keys: &[(Vec<TaxonLabel>, Option<TaxonLabel>)],
    numbers: &mut [usize],
    next: &mut usize,
    out: &mut String,
) {
    let ret = net.is_reticulation(v);
    if ret && numbers[v] != 0 {
        let _ = write!(out, "#H{}", numbers[v]);
        return;
    }
    if ret {
        *next += 1;
        numbers[v] = *next;
    }
    if let Some(l) = net.label(v) {
        out.push_str(l.as_str());
        return;
    }
    let mut kids = net.children(v).to_vec();
    kids.sort_by(|&a, &b| keys[a].0.first().cmp(&keys[b].0.first()).then_with(|| keys[a].cmp(&keys[b])));
    out.push('(');
    for (i, &c) in kids.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_vertex(net, c, keys, numbers, next, out);
    }
    out.push(')');
    if ret {
        let _ = write!(out, "#H{}", numbers[v]);
    }
}
