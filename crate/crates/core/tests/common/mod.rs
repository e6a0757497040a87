//! Brute-force reference implementations, written without the library's
//! algorithms, used to cross-check it on tiny inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// A rooted multigraph with a dummy top vertex 0 whose single child is the
/// real root. Leaves carry labels.
#[derive(Clone, Debug)]
pub struct RawNet {
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<Option<String>>,
}

impl RawNet {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn children(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == v).map(|e| e.1).collect()
    }

    fn parents(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.1 == v).map(|e| e.0).collect()
    }

    fn reaches(&self, a: usize, b: usize) -> bool {
        let mut stack = vec![a];
        let mut seen = vec![false; self.vertex_count()];
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            if !std::mem::replace(&mut seen[x], true) {
                stack.extend(self.children(x));
            }
        }
        false
    }

    fn subdivide(&mut self, edge: usize) -> usize {
        let (a, b) = self.edges[edge];
        let w = self.labels.len();
        self.labels.push(None);
        self.edges[edge] = (a, w);
        self.edges.push((w, b));
        w
    }

    pub fn reticulation_count(&self) -> usize {
        (0..self.vertex_count()).filter(|&v| self.parents(v).len() >= 2).count()
    }

    /// No parallel edges.
    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<_> = self.edges.iter().collect();
        set.len() == self.edges.len()
    }

    /// Every non-leaf vertex (dummy excluded) has a child of in-degree one,
    /// and no reticulation has one parent reaching another.
    pub fn is_normal(&self) -> bool {
        for v in 1..self.vertex_count() {
            let kids = self.children(v);
            if !kids.is_empty() && kids.iter().all(|&c| self.parents(c).len() >= 2) {
                return false;
            }
            let ps = self.parents(v);
            if ps.len() >= 2 {
                for &a in &ps {
                    for &b in &ps {
                        if a != b && self.reaches(a, b) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Newick-like string of the tree obtained by keeping, for every
    /// reticulation, only the in-edge from `choice[r]`; children are sorted
    /// so equal trees give equal strings.
    fn traced(&self, choice: &BTreeMap<usize, usize>) -> String {
        fn go(n: &RawNet, v: usize, choice: &BTreeMap<usize, usize>) -> Option<String> {
            if let Some(l) = &n.labels[v] {
                return Some(l.clone());
            }
            let mut parts: Vec<String> = n
                .children(v)
                .into_iter()
                .filter(|c| choice.get(c).is_none_or(|&p| p == v))
                .filter_map(|c| go(n, c, choice))
                .collect();
            match parts.len() {
                0 => None,
                1 => parts.pop(),
                _ => {
                    parts.sort();
                    Some(format!("({})", parts.join(",")))
                }
            }
        }
        go(self, 0, choice).expect("some leaf is reachable")
    }

    /// Canonical strings of every displayed tree.
    pub fn display_set(&self) -> BTreeSet<String> {
        let rets: Vec<(usize, Vec<usize>)> = (0..self.vertex_count())
            .filter_map(|v| {
                let ps = self.parents(v);
                (ps.len() >= 2).then_some((v, ps))
            })
            .collect();
        let total: usize = rets.iter().map(|(_, ps)| ps.len()).product();
        let mut out = BTreeSet::new();
        for mut code in 0..total {
            let mut choice = BTreeMap::new();
            for (r, ps) in &rets {
                choice.insert(*r, ps[code % ps.len()]);
                code /= ps.len();
            }
            out.insert(self.traced(&choice));
        }
        out
    }

    /// Extended Newick text for feeding into the library's parser.
    pub fn to_enewick(&self) -> String {
        let mut tags = BTreeMap::new();
        for v in 0..self.vertex_count() {
            if self.parents(v).len() >= 2 {
                let k = tags.len() + 1;
                tags.insert(v, k);
            }
        }
        let mut defined = BTreeSet::new();
        fn go(n: &RawNet, v: usize, tags: &BTreeMap<usize, usize>, defined: &mut BTreeSet<usize>) -> String {
            if let Some(&k) = tags.get(&v) {
                if !defined.insert(v) {
                    return format!("#H{k}");
                }
            }
            let body = match &n.labels[v] {
                Some(l) => l.clone(),
                None => {
                    let parts: Vec<String> = n.children(v).into_iter().map(|c| go(n, c, tags, defined)).collect();
                    format!("({})", parts.join(","))
                }
            };
            match tags.get(&v) {
                Some(k) => format!("{body}#H{k}"),
                None => body,
            }
        }
        let root = self.children(0)[0];
        format!("{};", go(self, root, &tags, &mut defined))
    }
}

/// Every rooted binary tree on `labels`, each exactly once, built by
/// inserting the leaves in order on every edge.
pub fn all_binary_trees(labels: &[&str]) -> Vec<RawNet> {
    let start = RawNet { edges: vec![(0, 1)], labels: vec![None, Some(labels[0].to_string())] };
    let mut current = vec![start];
    for l in &labels[1..] {
        let mut next = Vec::new();
        for t in &current {
            for e in 0..t.edges.len() {
                let mut n = t.clone();
                let w = n.subdivide(e);
                let leaf = n.labels.len();
                n.labels.push(Some(l.to_string()));
                n.edges.push((w, leaf));
                next.push(n);
            }
        }
        current = next;
    }
    current
}

/// Adds one reticulation edge in every acyclic way: subdivide edge `e1`
/// with `p`, edge `e2` with `r`, add `(p, r)`.
pub fn add_reticulation_edges(net: &RawNet) -> Vec<RawNet> {
    let mut out = Vec::new();
    for e1 in 0..net.edges.len() {
        for e2 in 0..net.edges.len() {
            if e1 == e2 {
                continue;
            }
            let (a, _) = net.edges[e1];
            let (_, d) = net.edges[e2];
            if net.reaches(d, a) {
                continue;
            }
            let mut n = net.clone();
            let p = n.subdivide(e1);
            let r = n.subdivide(e2);
            n.edges.push((p, r));
            out.push(n);
        }
    }
    out
}

/// For every set of displayed trees reachable with at most `max_k`
/// reticulations, the smallest reticulation count of a binary normal network
/// displaying exactly that set.
///
/// Every binary network arises from a tree by repeatedly adding a
/// reticulation edge between two edges (intermediate multigraphs allowed),
/// so the closure below visits every binary normal network.
pub fn normal_display_sets(labels: &[&str], max_k: usize) -> BTreeMap<BTreeSet<String>, usize> {
    let mut best: BTreeMap<BTreeSet<String>, usize> = BTreeMap::new();
    let mut layer = all_binary_trees(labels);
    for k in 0..=max_k {
        for n in &layer {
            if n.is_simple() && n.is_normal() {
                let ds = n.display_set();
                best.entry(ds).and_modify(|b| *b = (*b).min(k)).or_insert(k);
            }
        }
        if k < max_k {
            layer = layer.iter().flat_map(add_reticulation_edges).collect();
        }
    }
    best
}

/// Smallest reticulation count of a binary normal network displaying every
/// tree in `p`, or `None` when no network in the table does.
pub fn h_normal(table: &BTreeMap<BTreeSet<String>, usize>, p: &BTreeSet<String>) -> Option<usize> {
    table.iter().filter(|(ds, _)| p.is_subset(ds)).map(|(_, &k)| k).min()
}

/// Sorted-children string of a tree given in Newick, matching the format of
/// [`RawNet::display_set`].
pub fn canonical_newick(text: &str) -> String {
    fn parse(s: &[u8], i: &mut usize) -> String {
        if s[*i] == b'(' {
            *i += 1;
            let mut parts = vec![parse(s, i)];
            while s[*i] == b',' {
                *i += 1;
                parts.push(parse(s, i));
            }
            assert_eq!(s[*i], b')');
            *i += 1;
            parts.sort();
            format!("({})", parts.join(","))
        } else {
            let start = *i;
            while !matches!(s[*i], b',' | b')' | b';') {
                *i += 1;
            }
            String::from_utf8(s[start..*i].to_vec()).unwrap()
        }
    }
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    parse(cleaned.as_bytes(), &mut 0)
}

impl RawNet {
    /// Sum over vertices of in-degree minus one (dummy and root excluded).
    pub fn hybridisation_number(&self) -> usize {
        (1..self.vertex_count()).map(|v| self.parents(v).len().saturating_sub(1)).sum()
    }

    pub fn leaf_names(&self) -> BTreeSet<String> {
        (0..self.vertex_count()).filter_map(|v| self.labels[v].clone()).collect()
    }

    fn edge_into(&self, v: usize) -> usize {
        self.edges.iter().position(|e| e.1 == v).expect("non-dummy vertex has a parent")
    }

    fn leaf_vertex(&self, name: &str) -> usize {
        (0..self.vertex_count()).find(|&v| self.labels[v].as_deref() == Some(name)).expect("present")
    }

    /// Fully expanded string from the root, children sorted, reticulations
    /// marked. In a tree-child network no two vertices share an expansion,
    /// so equal strings mean isomorphic networks.
    pub fn expansion(&self) -> String {
        fn go(n: &RawNet, v: usize) -> String {
            if let Some(l) = &n.labels[v] {
                return l.clone();
            }
            let mut parts: Vec<String> = n.children(v).into_iter().map(|c| go(n, c)).collect();
            parts.sort();
            let mark = if n.parents(v).len() >= 2 { "r" } else { "" };
            format!("{mark}({})", parts.join(","))
        }
        go(self, self.children(0)[0])
    }
}

/// Every normal network on `labels` with tree vertices of out-degree two and
/// reticulations of any in-degree, up to isomorphism.
///
/// Grown from single leaves by the inverses of cherry and reticulated-cherry
/// reduction: attach a new leaf next to a leaf, or add an edge from just
/// above a leaf `y` into (a new or existing) reticulation just above a leaf
/// `x`. Reducing a normal network by cherries and reticulated cherries keeps
/// it normal, so keeping only normal networks loses nothing. Normal networks
/// on a fixed leaf set are finitely many, so the closure terminates.
pub fn all_normal_networks(labels: &[&str]) -> Vec<RawNet> {
    let mut seen = BTreeSet::new();
    let mut queue = Vec::new();
    for l in labels {
        let n = RawNet { edges: vec![(0, 1)], labels: vec![None, Some(l.to_string())] };
        seen.insert(n.expansion());
        queue.push(n);
    }
    let mut out = Vec::new();
    while let Some(net) = queue.pop() {
        let present = net.leaf_names();
        let mut next = Vec::new();
        for y in &present {
            for z in labels.iter().filter(|z| !present.contains(**z)) {
                let mut n = net.clone();
                let p = n.subdivide(n.edge_into(n.leaf_vertex(y)));
                let leaf = n.labels.len();
                n.labels.push(Some(z.to_string()));
                n.edges.push((p, leaf));
                next.push(n);
            }
            for x in present.iter().filter(|x| *x != y) {
                let mut n = net.clone();
                let xv = n.leaf_vertex(x);
                let px = n.parents(xv)[0];
                let target = if n.parents(px).len() >= 2 { px } else { n.subdivide(n.edge_into(xv)) };
                let py = n.subdivide(n.edge_into(n.leaf_vertex(y)));
                n.edges.push((py, target));
                next.push(n);
            }
        }
        for n in next {
            if n.is_simple() && n.is_normal() && seen.insert(n.expansion()) {
                queue.push(n);
            }
        }
        if present.len() == labels.len() {
            out.push(net);
        }
    }
    out
}

/// Display set of every network in `nets`, mapped to the smallest
/// hybridisation number realising it.
pub fn display_table(nets: &[RawNet]) -> BTreeMap<BTreeSet<String>, usize> {
    let mut best: BTreeMap<BTreeSet<String>, usize> = BTreeMap::new();
    for n in nets {
        let h = n.hybridisation_number();
        best.entry(n.display_set()).and_modify(|b| *b = (*b).min(h)).or_insert(h);
    }
    best
}

/// Canonical strings of the trees in `trees` that become `coarse` after
/// contracting some subset of their internal edges.
pub fn contractions_of_binary(trees: &[RawNet], coarse: &str) -> BTreeSet<String> {
    fn go(n: &RawNet, v: usize, mask: u64, ids: &BTreeMap<(usize, usize), usize>) -> Vec<String> {
        if let Some(l) = &n.labels[v] {
            return vec![l.clone()];
        }
        let mut parts = Vec::new();
        for c in n.children(v) {
            let sub = go(n, c, mask, ids);
            match ids.get(&(v, c)) {
                Some(&k) if mask & (1 << k) != 0 => parts.extend(sub),
                _ if n.labels[c].is_some() => parts.extend(sub),
                _ => {
                    let mut sub = sub;
                    sub.sort();
                    parts.push(format!("({})", sub.join(",")));
                }
            }
        }
        parts
    }
    let target = canonical_newick(coarse);
    let mut out = BTreeSet::new();
    for t in trees {
        let root = t.children(0)[0];
        let ids: BTreeMap<(usize, usize), usize> = t
            .edges
            .iter()
            .filter(|&&(a, b)| a != 0 && t.labels[b].is_none())
            .enumerate()
            .map(|(k, &e)| (e, k))
            .collect();
        for mask in 0..1u64 << ids.len() {
            let mut parts = go(t, root, mask, &ids);
            parts.sort();
            if format!("({})", parts.join(",")) == target {
                out.insert(t.display_set().into_iter().next().unwrap());
                break;
            }
        }
    }
    out
}
