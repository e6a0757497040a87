//! Rooted phylogenetic X-trees (binary or not).

use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet};

/// Nested description of a rooted tree, used to build [`PhyloTree`]s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeShape {
    Leaf(TaxonLabel),
    Node(Vec<TreeShape>),
}

impl TreeShape {
    pub fn leaf(label: &TaxonLabel) -> Self {
        TreeShape::Leaf(label.clone())
    }

    pub fn node(children: Vec<TreeShape>) -> Self {
        TreeShape::Node(children)
    }
}

/// A rooted phylogenetic tree: no vertex has out-degree one, leaves carry
/// distinct labels, and a single labelled vertex is allowed.
#[derive(Clone, Debug)]
pub struct PhyloTree {
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    labels: Vec<Option<TaxonLabel>>,
    leaf_index: BTreeMap<TaxonLabel, VertexId>,
}

impl PhyloTree {
    /// Builds a tree from a shape. Vertex ids are assigned in preorder, so the
    /// root is always vertex 0.
    pub fn from_shape(shape: &TreeShape) -> Result<Self> {
        let mut tree = PhyloTree {
            parent: Vec::new(),
            children: Vec::new(),
            labels: Vec::new(),
            leaf_index: BTreeMap::new(),
        };
        tree.push_shape(shape, None)?;
        Ok(tree)
    }

    fn push_shape(&mut self, shape: &TreeShape, parent: Option<VertexId>) -> Result<VertexId> {
        let id = self.parent.len();
        self.parent.push(parent);
        self.children.push(Vec::new());
        match shape {
            TreeShape::Leaf(label) => {
                self.labels.push(Some(label.clone()));
                if self.leaf_index.insert(label.clone(), id).is_some() {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
            TreeShape::Node(kids) => {
                self.labels.push(None);
                if kids.len() < 2 {
                    return Err(Error::Validation(format!(
                        "internal vertex {id} has out-degree {}",
                        kids.len()
                    )));
                }
                for kid in kids {
                    let c = self.push_shape(kid, Some(id))?;
                    self.children[id].push(c);
                }
            }
        }
        Ok(id)
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
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

    pub fn contains(&self, label: &TaxonLabel) -> bool {
        self.leaf_index.contains_key(label)
    }

    /// Leaf labels in lexicographic order.
    pub fn leaf_labels(&self) -> impl Iterator<Item = &TaxonLabel> + '_ {
        self.leaf_index.keys()
    }

    pub fn leaf_set(&self) -> BTreeSet<TaxonLabel> {
        self.leaf_index.keys().cloned().collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_index.len()
    }

    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.is_empty() || c.len() == 2)
    }

    pub fn to_shape(&self) -> TreeShape {
        self.shape_of(self.root())
    }

    fn shape_of(&self, v: VertexId) -> TreeShape {
        match &self.labels[v] {
            Some(l) => TreeShape::Leaf(l.clone()),
            None => TreeShape::Node(self.children[v].iter().map(|&c| self.shape_of(c)).collect()),
        }
    }

    /// Leaf labels below `v` (a leaf is its own descendant).
    pub fn cluster(&self, v: VertexId) -> Result<BTreeSet<TaxonLabel>> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Some(l) = &self.labels[u] {
                out.insert(l.clone());
            }
            stack.extend(&self.children[u]);
        }
        Ok(out)
    }

    /// All clusters of the tree, one per vertex.
    pub fn clusters(&self) -> BTreeSet<Vec<TaxonLabel>> {
        let mut per_vertex: Vec<Vec<TaxonLabel>> = vec![Vec::new(); self.vertex_count()];
        // Preorder ids: children always have larger ids than their parent.
        for v in (0..self.vertex_count()).rev() {
            if let Some(l) = &self.labels[v] {
                per_vertex[v].push(l.clone());
            }
            if let Some(p) = self.parent[v] {
                let mine = per_vertex[v].clone();
                per_vertex[p].extend(mine);
            }
        }
        per_vertex
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect()
    }

    pub fn is_cherry(&self, a: &TaxonLabel, b: &TaxonLabel) -> bool {
        match (self.leaf(a), self.leaf(b)) {
            (Some(x), Some(y)) => x != y && self.parent[x].is_some() && self.parent[x] == self.parent[y],
            _ => false,
        }
    }

    /// Unordered cherries `{a, b}` reported as `(a, b)` with `a < b`, sorted.
    pub fn cherries(&self) -> Vec<(TaxonLabel, TaxonLabel)> {
        let mut out = Vec::new();
        for kids in &self.children {
            let leaves: Vec<&TaxonLabel> = kids.iter().filter_map(|&c| self.labels[c].as_ref()).collect();
            for i in 0..leaves.len() {
                for j in i + 1..leaves.len() {
                    let (a, b) = if leaves[i] < leaves[j] { (leaves[i], leaves[j]) } else { (leaves[j], leaves[i]) };
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// `T \ x`: removes leaf `x` and suppresses its parent if that leaves it
    /// with a single child (deleting the root when the parent was the root).
    pub fn delete_leaf(&self, x: &TaxonLabel) -> Result<PhyloTree> {
        if !self.contains(x) {
            return Err(Error::UnknownLabel(x.clone()));
        }
        if self.leaf_count() < 2 {
            return Err(Error::TooFewLeaves);
        }
        let keep = |l: &TaxonLabel| l != x;
        let shape = self.pruned_shape(self.root(), &keep).expect("at least one leaf remains");
        PhyloTree::from_shape(&shape)
    }

    /// `T|Y`: the minimal subtree spanning `Y` with degree-two vertices suppressed.
    pub fn restrict(&self, keep: &BTreeSet<TaxonLabel>) -> Result<PhyloTree> {
        if keep.is_empty() || !keep.iter().all(|l| self.contains(l)) {
            return Err(Error::InvalidSubset);
        }
        let pred = |l: &TaxonLabel| keep.contains(l);
        let shape = self.pruned_shape(self.root(), &pred).expect("subset is non-empty");
        PhyloTree::from_shape(&shape)
    }

    fn pruned_shape(&self, v: VertexId, keep: &dyn Fn(&TaxonLabel) -> bool) -> Option<TreeShape> {
        if let Some(l) = &self.labels[v] {
            return keep(l).then(|| TreeShape::Leaf(l.clone()));
        }
        let mut kids: Vec<TreeShape> = self.children[v].iter().filter_map(|&c| self.pruned_shape(c, keep)).collect();
        match kids.len() {
            0 => None,
            1 => kids.pop(),
            _ => Some(TreeShape::Node(kids)),
        }
    }

    /// Cherry-picks `(x, y)`: returns `T \ x` when `{x, y}` is a cherry.
    pub fn pick(&self, x: &TaxonLabel, y: &TaxonLabel) -> Option<PhyloTree> {
        if self.is_cherry(x, y) {
            Some(self.delete_leaf(x).expect("cherry leaves exist"))
        } else {
            None
        }
    }

    /// Canonical Newick text: children ordered by the smallest label below them.
    /// Two trees are isomorphic exactly when their canonical texts agree.
    pub fn canonical(&self) -> String {
        let mut s = self.canonical_of(self.root()).1;
        s.push(';');
        s
    }

    fn canonical_of(&self, v: VertexId) -> (TaxonLabel, String) {
        if let Some(l) = &self.labels[v] {
            return (l.clone(), l.to_string());
        }
        let mut parts: Vec<(TaxonLabel, String)> = self.children[v].iter().map(|&c| self.canonical_of(c)).collect();
        parts.sort();
        let min = parts[0].0.clone();
        let body: Vec<String> = parts.into_iter().map(|p| p.1).collect();
        (min, format!("({})", body.join(",")))
    }

    pub fn isomorphic(&self, other: &PhyloTree) -> bool {
        self.leaf_count() == other.leaf_count() && self.canonical() == other.canonical()
    }

    /// Lazily enumerates every binary refinement, each exactly once.
    pub fn binary_refinements(&self) -> BinaryRefinements<'_> {
        let mut radices = Vec::new();
        let mut offsets = vec![0; self.vertex_count()];
        for v in 0..self.vertex_count() {
            offsets[v] = radices.len();
            let d = self.children[v].len();
            if d > 2 {
                // Item k (0-based, k >= 2) is inserted on one of 2k - 1 edges.
                radices.extend((2..d).map(|k| 2 * k - 1));
            }
        }
        BinaryRefinements { tree: self, digits: vec![0; radices.len()], radices, offsets, done: false }
    }
}

/// Iterator returned by [`PhyloTree::binary_refinements`].
pub struct BinaryRefinements<'a> {
    tree: &'a PhyloTree,
    radices: Vec<usize>,
    offsets: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl BinaryRefinements<'_> {
    fn build(&self, v: VertexId) -> TreeShape {
        let t = self.tree;
        if let Some(l) = &t.labels[v] {
            return TreeShape::Leaf(l.clone());
        }
        let kids: Vec<TreeShape> = t.children[v].iter().map(|&c| self.build(c)).collect();
        if kids.len() == 2 {
            return TreeShape::Node(kids);
        }
        let d = kids.len();
        let choices = &self.digits[self.offsets[v]..self.offsets[v] + d - 2];
        resolve(kids, choices)
    }
}

/// Builds one binary resolution of a multifurcation by stepwise insertion:
/// item k is placed on the edge above the `choices[k-2]`-th existing node.
fn resolve(items: Vec<TreeShape>, choices: &[usize]) -> TreeShape {
    enum Slot {
        Item(usize),
        Join(usize, usize),
    }
    let mut slots = vec![Slot::Item(0), Slot::Item(1), Slot::Join(0, 1)];
    let mut parent: Vec<Option<usize>> = vec![Some(2), Some(2), None];
    let mut root = 2;
    for (k, &choice) in (2..items.len()).zip(choices) {
        let target = choice;
        let leaf = slots.len();
        slots.push(Slot::Item(k));
        parent.push(None);
        let join = slots.len();
        slots.push(Slot::Join(target, leaf));
        parent.push(parent[target]);
        match parent[target] {
            Some(p) => {
                if let Slot::Join(a, b) = &mut slots[p] {
                    if *a == target {
                        *a = join;
                    } else {
                        *b = join;
                    }
                }
            }
            None => root = join,
        }
        parent[target] = Some(join);
        parent[leaf] = Some(join);
    }
    fn emit(slots: &[Slot], items: &[TreeShape], s: usize) -> TreeShape {
        match slots[s] {
            Slot::Item(i) => items[i].clone(),
            Slot::Join(a, b) => TreeShape::Node(vec![emit(slots, items, a), emit(slots, items, b)]),
        }
    }
    emit(&slots, &items, root)
}

impl Iterator for BinaryRefinements<'_> {
    type Item = PhyloTree;

    fn next(&mut self) -> Option<PhyloTree> {
        if self.done {
            return None;
        }
        let shape = self.build(self.tree.root());
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(PhyloTree::from_shape(&shape).expect("refinement of a valid tree"))
    }
}

/// True iff `refined` is a refinement of `coarse`: every cluster of `coarse`
/// is a cluster of `refined`.
pub fn is_refinement(refined: &PhyloTree, coarse: &PhyloTree) -> Result<bool> {
    if refined.leaf_set() != coarse.leaf_set() {
        return Err(Error::LeafSetMismatch);
    }
    let fine = refined.clusters();
    Ok(coarse.clusters().iter().all(|c| fine.contains(c)))
}

/// Caterpillar `(x1, x2, ..., xn)`: `{x1, x2}` is the deepest cherry and `xn`
/// hangs off the root.
pub fn caterpillar(order: &[TaxonLabel]) -> Result<PhyloTree> {
    let Some(first) = order.first() else {
        return Err(Error::InvalidSubset);
    };
    let mut shape = TreeShape::Leaf(first.clone());
    for l in &order[1..] {
        shape = TreeShape::Node(vec![shape, TreeShape::Leaf(l.clone())]);
    }
    PhyloTree::from_shape(&shape)
}
