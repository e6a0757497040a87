//! Rooted phylogenetic networks and an editable arena for surgery on them.

use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::tree::{PhyloTree, TreeShape};
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet};

/// A rooted phylogenetic network on a leaf set `X`.
///
/// Every vertex is the root (in 0, out 2), a leaf (in 1, out 0), a tree
/// vertex (in 1, out 2) or a reticulation (in >= 2, out 1); the single
/// labelled vertex is allowed when `|X| = 1`. Values are immutable once
/// validated; use [`NetworkEditor`] to derive modified networks.
#[derive(Clone, Debug)]
pub struct PhyloNetwork {
    parents: Vec<Vec<VertexId>>,
    children: Vec<Vec<VertexId>>,
    labels: Vec<Option<TaxonLabel>>,
    root: VertexId,
    leaf_index: BTreeMap<TaxonLabel, VertexId>,
    topo: Vec<VertexId>,
}

impl PhyloNetwork {
    /// Builds and validates a network from an edge list over vertices `0..n`.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
        labels: Vec<Option<TaxonLabel>>,
    ) -> Result<Self> {
        if labels.len() != vertex_count {
            return Err(Error::Validation("label vector length differs from vertex count".into()));
        }
        let mut parents = vec![Vec::new(); vertex_count];
        let mut children = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count {
                return Err(Error::UnknownVertex(u));
            }
            if v >= vertex_count {
                return Err(Error::UnknownVertex(v));
            }
            children[u].push(v);
            parents[v].push(u);
        }
        Self::validated(parents, children, labels)
    }

    fn validated(
        parents: Vec<Vec<VertexId>>,
        children: Vec<Vec<VertexId>>,
        labels: Vec<Option<TaxonLabel>>,
    ) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::Validation("network has no vertices".into()));
        }
        for v in 0..n {
            let mut seen = BTreeSet::new();
            for &c in &children[v] {
                if c == v {
                    return Err(Error::Validation(format!("loop at vertex {v}")));
                }
                if !seen.insert(c) {
                    return Err(Error::Validation(format!("parallel edges ({v}, {c})")));
                }
            }
        }
        let roots: Vec<VertexId> = (0..n).filter(|&v| parents[v].is_empty()).collect();
        let root = match roots.as_slice() {
            [r] => *r,
            [] => return Err(Error::Validation("no vertex of in-degree 0 (network is cyclic)".into())),
            _ => {
                return Err(Error::Validation(format!(
                    "vertices {roots:?} all have in-degree 0; exactly one root is required"
                )))
            }
        };
        let mut leaf_index = BTreeMap::new();
        for v in 0..n {
            let (din, dout) = (parents[v].len(), children[v].len());
            match &labels[v] {
                Some(l) => {
                    if dout != 0 {
                        return Err(Error::Validation(format!("labelled vertex {v} ({l}) has out-degree {dout}")));
                    }
                    if leaf_index.insert(l.clone(), v).is_some() {
                        return Err(Error::DuplicateLabel(l.clone()));
                    }
                }
                None if dout == 0 => {
                    return Err(Error::Validation(format!("vertex {v} has out-degree 0 but no label")));
                }
                None => {}
            }
            if n == 1 {
                continue;
            }
            let ok = if v == root {
                dout == 2
            } else if dout == 0 {
                din == 1
            } else {
                (din == 1 && dout == 2) || (din >= 2 && dout == 1)
            };
            if !ok {
                let role = if v == root { "root " } else { "" };
                return Err(Error::Validation(format!(
                    "{role}vertex {v} has in-degree {din} and out-degree {dout}"
                )));
            }
        }
        if n == 1 && labels[0].is_none() {
            return Err(Error::Validation("single vertex must be a labelled leaf".into()));
        }
        let topo = topological_order(&parents, &children)
            .ok_or_else(|| Error::Validation("network contains a directed cycle".into()))?;
        Ok(PhyloNetwork { parents, children, labels, root, leaf_index, topo })
    }

    /// A binary tree viewed as a network with no reticulations.
    pub fn from_tree(tree: &PhyloTree) -> Result<Self> {
        if !tree.is_binary() {
            return Err(Error::NotBinary);
        }
        let n = tree.vertex_count();
        let mut edges = Vec::new();
        for v in 0..n {
            for &c in tree.children(v) {
                edges.push((v, c));
            }
        }
        let labels = (0..n).map(|v| tree.label(v).cloned()).collect();
        PhyloNetwork::from_edges(n, &edges, labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.parents.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parents(&self, v: VertexId) -> &[VertexId] {
        &self.parents[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn label(&self, v: VertexId) -> Option<&TaxonLabel> {
        self.labels[v].as_ref()
    }

    pub fn leaf(&self, label: &TaxonLabel) -> Option<VertexId> {
        self.leaf_index.get(label).copied()
    }

    pub fn leaf_set(&self) -> BTreeSet<TaxonLabel> {
        self.leaf_index.keys().cloned().collect()
    }

    pub fn leaf_labels(&self) -> impl Iterator<Item = &TaxonLabel> + '_ {
        self.leaf_index.keys()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_index.len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v].is_empty()
    }

    pub fn is_reticulation(&self, v: VertexId) -> bool {
        self.parents[v].len() >= 2
    }

    /// Root or an in-degree-one vertex of out-degree two.
    pub fn is_tree_vertex(&self, v: VertexId) -> bool {
        self.parents[v].len() <= 1 && self.children[v].len() == 2
    }

    pub fn reticulations(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).filter(|&v| self.is_reticulation(v))
    }

    pub fn reticulation_count(&self) -> usize {
        self.reticulations().count()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.children[u].iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    /// Vertices ordered so that every parent precedes its children.
    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    /// `h(N)`: the sum over non-root vertices of in-degree minus one.
    pub fn hybridisation_number(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| v != self.root)
            .map(|v| self.parents[v].len() - 1)
            .sum()
    }

    pub fn is_binary(&self) -> bool {
        self.parents.iter().all(|p| p.len() <= 2)
    }

    /// The network as a tree, when it has no reticulations.
    pub fn to_tree(&self) -> Result<PhyloTree> {
        if let Some(r) = self.reticulations().next() {
            return Err(Error::Unsupported(format!("vertex {r} is a reticulation")));
        }
        fn shape(net: &PhyloNetwork, v: VertexId) -> TreeShape {
            match net.label(v) {
                Some(l) => TreeShape::Leaf(l.clone()),
                None => TreeShape::Node(net.children(v).iter().map(|&c| shape(net, c)).collect()),
            }
        }
        PhyloTree::from_shape(&shape(self, self.root))
    }
}

fn topological_order(parents: &[Vec<VertexId>], children: &[Vec<VertexId>]) -> Option<Vec<VertexId>> {
    let n = parents.len();
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &c in &children[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                ready.push(c);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Mutable arena over network vertices. Ids stay stable while editing
/// (removed vertices become tombstones); [`NetworkEditor::finish`] validates
/// and compacts into a [`PhyloNetwork`].
#[derive(Clone, Debug)]
pub struct NetworkEditor {
    parents: Vec<Vec<VertexId>>,
    children: Vec<Vec<VertexId>>,
    labels: Vec<Option<TaxonLabel>>,
    alive: Vec<bool>,
}

impl NetworkEditor {
    pub fn new() -> Self {
        NetworkEditor { parents: Vec::new(), children: Vec::new(), labels: Vec::new(), alive: Vec::new() }
    }

    pub fn from_network(net: &PhyloNetwork) -> Self {
        NetworkEditor {
            parents: net.parents.clone(),
            children: net.children.clone(),
            labels: net.labels.clone(),
            alive: vec![true; net.vertex_count()],
        }
    }

    pub fn add_vertex(&mut self, label: Option<TaxonLabel>) -> VertexId {
        self.parents.push(Vec::new());
        self.children.push(Vec::new());
        self.labels.push(label);
        self.alive.push(true);
        self.parents.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        self.children[u].push(v);
        self.parents[v].push(u);
    }

    /// Removes one copy of edge `(u, v)`; returns whether it existed.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        match self.children[u].iter().position(|&c| c == v) {
            Some(i) => {
                self.children[u].remove(i);
                let j = self.parents[v].iter().position(|&p| p == u).expect("symmetric adjacency");
                self.parents[v].remove(j);
                true
            }
            None => false,
        }
    }

    /// Replaces edge `(u, v)` by `(u, w), (w, v)` for a new vertex `w`.
    /// The position of `v` among `u`'s children is kept.
    pub fn subdivide(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        let i = self.children[u]
            .iter()
            .position(|&c| c == v)
            .ok_or_else(|| Error::Validation(format!("no edge ({u}, {v}) to subdivide")))?;
        let w = self.add_vertex(None);
        self.children[u][i] = w;
        let j = self.parents[v].iter().position(|&p| p == u).expect("symmetric adjacency");
        self.parents[v][j] = w;
        self.parents[w].push(u);
        self.children[w].push(v);
        Ok(w)
    }

    /// Suppresses a vertex with in- and out-degree one, or removes a root
    /// with out-degree one. Returns the vertex that took its place.
    pub fn suppress(&mut self, v: VertexId) -> Result<VertexId> {
        match (self.parents[v].as_slice(), self.children[v].as_slice()) {
            (&[p], &[c]) => {
                let i = self.children[p].iter().position(|&x| x == v).expect("symmetric adjacency");
                self.children[p][i] = c;
                let j = self.parents[c].iter().position(|&x| x == v).expect("symmetric adjacency");
                self.parents[c][j] = p;
                self.children[v].clear();
                self.parents[v].clear();
                self.alive[v] = false;
                Ok(c)
            }
            (&[], &[c]) => {
                self.remove_edge(v, c);
                self.alive[v] = false;
                Ok(c)
            }
            _ => Err(Error::Validation(format!(
                "vertex {v} cannot be suppressed (in-degree {}, out-degree {})",
                self.parents[v].len(),
                self.children[v].len()
            ))),
        }
    }

    /// Removes a vertex and all incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) {
        for p in self.parents[v].clone() {
            self.remove_edge(p, v);
        }
        for c in self.children[v].clone() {
            self.remove_edge(v, c);
        }
        self.alive[v] = false;
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn parents(&self, v: VertexId) -> &[VertexId] {
        &self.parents[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn label(&self, v: VertexId) -> Option<&TaxonLabel> {
        self.labels[v].as_ref()
    }

    pub fn leaf(&self, label: &TaxonLabel) -> Option<VertexId> {
        (0..self.labels.len()).find(|&v| self.alive[v] && self.labels[v].as_ref() == Some(label))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    /// The unique live vertex of in-degree zero, if there is exactly one.
    pub fn root(&self) -> Option<VertexId> {
        let mut roots = self.vertices().filter(|&v| self.parents[v].is_empty());
        let r = roots.next()?;
        roots.next().is_none().then_some(r)
    }

    pub fn live_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Validates and compacts. Live vertices keep their relative order.
    pub fn finish(&self) -> Result<PhyloNetwork> {
        self.finish_with_map().map(|(n, _)| n)
    }

    /// Like [`finish`](Self::finish) but also returns the old-to-new id map.
    pub fn finish_with_map(&self) -> Result<(PhyloNetwork, Vec<Option<VertexId>>)> {
        let mut map = vec![None; self.alive.len()];
        let mut next = 0;
        for v in self.vertices() {
            map[v] = Some(next);
            next += 1;
        }
        let mut parents = vec![Vec::new(); next];
        let mut children = vec![Vec::new(); next];
        let mut labels = vec![None; next];
        for v in self.vertices() {
            let nv = map[v].unwrap();
            labels[nv] = self.labels[v].clone();
            for &c in &self.children[v] {
                let nc = map[c].ok_or_else(|| Error::Validation(format!("edge ({v}, {c}) into removed vertex")))?;
                children[nv].push(nc);
                parents[nc].push(nv);
            }
        }
        let net = PhyloNetwork::validated(parents, children, labels)?;
        Ok((net, map))
    }
}

impl Default for NetworkEditor {
    fn default() -> Self {
        Self::new()
    }
}
