//! Structural predicates on networks: clusters, tree paths, tree-child and
//! normal classification, shortcuts, cherries and reticulated cherries.

use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::network::PhyloNetwork;
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet};

/// A reticulation edge `(u, v)` for which another directed `u -> v` path
/// exists, together with its length: the number of vertices lying on some
/// directed path from `u` to a parent of `v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Shortcut {
    pub edge: (VertexId, VertexId),
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkClassification {
    pub is_binary: bool,
    pub is_tree_child: bool,
    pub is_normal: bool,
    pub shortcuts: Vec<Shortcut>,
    pub hybridisation_number: usize,
    pub reticulation_count: usize,
}

/// Descendant relation (reflexive) of a network.
pub struct Reachability {
    desc: Vec<Vec<bool>>,
}

impl Reachability {
    pub fn new(net: &PhyloNetwork) -> Self {
        let n = net.vertex_count();
        let mut desc = vec![vec![false; n]; n];
        for &v in net.topological_order().iter().rev() {
            desc[v][v] = true;
            for &c in net.children(v) {
                for w in 0..n {
                    if desc[c][w] {
                        desc[v][w] = true;
                    }
                }
            }
        }
        Reachability { desc }
    }

    /// Whether `b` is a descendant of `a` (every vertex descends from itself).
    pub fn reaches(&self, a: VertexId, b: VertexId) -> bool {
        self.desc[a][b]
    }
}

pub fn cluster(net: &PhyloNetwork, v: VertexId) -> Result<BTreeSet<TaxonLabel>> {
    if v >= net.vertex_count() {
        return Err(Error::UnknownVertex(v));
    }
    let mut seen = vec![false; net.vertex_count()];
    let mut out = BTreeSet::new();
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        if std::mem::replace(&mut seen[u], true) {
            continue;
        }
        if let Some(l) = net.label(u) {
            out.insert(l.clone());
        }
        stack.extend(net.children(u));
    }
    Ok(out)
}

/// Leaves at the end of tree paths starting at each vertex: paths whose
/// vertices, except possibly the first, are tree vertices or leaves.
pub fn tree_path_leaves(net: &PhyloNetwork) -> Vec<BTreeSet<TaxonLabel>> {
    let mut tp: Vec<BTreeSet<TaxonLabel>> = vec![BTreeSet::new(); net.vertex_count()];
    for &v in net.topological_order().iter().rev() {
        if let Some(l) = net.label(v) {
            tp[v].insert(l.clone());
            continue;
        }
        let mut acc = BTreeSet::new();
        for &c in net.children(v) {
            if !net.is_reticulation(c) {
                acc.extend(tp[c].iter().cloned());
            }
        }
        tp[v] = acc;
    }
    tp
}

/// Smallest leaf reachable from each vertex by a tree path (`None` when the
/// vertex has no tree path).
pub fn tree_path_min(net: &PhyloNetwork) -> Vec<Option<TaxonLabel>> {
    tree_path_leaves(net).into_iter().map(|s| s.into_iter().next()).collect()
}

/// Tree-child iff every vertex has a tree path.
pub fn is_tree_child(net: &PhyloNetwork) -> bool {
    tree_path_leaves(net).iter().all(|s| !s.is_empty())
}

/// All shortcuts, sorted by edge.
pub fn shortcuts(net: &PhyloNetwork) -> Vec<Shortcut> {
    let reach = Reachability::new(net);
    shortcuts_with(net, &reach)
}

pub(crate) fn shortcuts_with(net: &PhyloNetwork, reach: &Reachability) -> Vec<Shortcut> {
    let mut out = Vec::new();
    for v in net.reticulations() {
        for &u in net.parents(v) {
            let others = net.parents(v).iter().filter(|&&p| p != u);
            if !others.clone().any(|&p| reach.reaches(u, p)) {
                continue;
            }
            // Vertices w with u ->* w ->* p for some parent p of v.
            let length = (0..net.vertex_count())
                .filter(|&w| reach.reaches(u, w) && net.parents(v).iter().any(|&p| reach.reaches(w, p)))
                .count();
            out.push(Shortcut { edge: (u, v), length });
        }
    }
    out.sort();
    out
}

pub fn classify(net: &PhyloNetwork) -> NetworkClassification {
    let is_tree_child = is_tree_child(net);
    let shortcuts = shortcuts(net);
    NetworkClassification {
        is_binary: net.is_binary(),
        is_tree_child,
        is_normal: is_tree_child && shortcuts.is_empty(),
        shortcuts,
        hybridisation_number: net.hybridisation_number(),
        reticulation_count: net.reticulation_count(),
    }
}

pub fn is_normal(net: &PhyloNetwork) -> bool {
    is_tree_child(net) && shortcuts(net).is_empty()
}

/// Cherries and reticulated cherries of a network.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cherries {
    /// Unordered cherries `{x, y}` stored as `(x, y)` with `x < y`.
    pub cherries: BTreeSet<(TaxonLabel, TaxonLabel)>,
    /// Reticulated cherries `(x, y)` with reticulation leaf `x`.
    pub reticulated: BTreeSet<(TaxonLabel, TaxonLabel)>,
}

pub fn find_cherries(net: &PhyloNetwork) -> Cherries {
    let mut out = Cherries::default();
    for p in 0..net.vertex_count() {
        let leaves: Vec<&TaxonLabel> = net.children(p).iter().filter_map(|&c| net.label(c)).collect();
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                let (a, b) = if leaves[i] < leaves[j] { (leaves[i], leaves[j]) } else { (leaves[j], leaves[i]) };
                out.cherries.insert((a.clone(), b.clone()));
            }
        }
    }
    for v in net.reticulations() {
        for &c in net.children(v) {
            let Some(x) = net.label(c) else { continue };
            for &g in net.parents(v) {
                for &s in net.children(g) {
                    if let Some(y) = net.label(s) {
                        out.reticulated.insert((x.clone(), y.clone()));
                    }
                }
            }
        }
    }
    out
}

/// Verifying leaves: for the root and every reticulation, the smallest leaf at
/// the end of a tree path starting there. Keys are vertex ids.
pub fn verifiers(net: &PhyloNetwork) -> Result<BTreeMap<VertexId, TaxonLabel>> {
    let tp = tree_path_min(net);
    let mut out = BTreeMap::new();
    for v in std::iter::once(net.root()).chain(net.reticulations()) {
        let l = tp[v].clone().ok_or_else(|| Error::Unsupported(format!("vertex {v} has no tree path")))?;
        out.insert(v, l);
    }
    Ok(out)
}

/// Ensures the network is binary and tree-child, the precondition of the
/// embedding-based algorithms.
pub fn require_binary_tree_child(net: &PhyloNetwork) -> Result<()> {
    if let Some(v) = net.reticulations().find(|&v| net.parents(v).len() > 2) {
        return Err(Error::NonBinaryReticulation(v));
    }
    if !is_tree_child(net) {
        return Err(Error::Unsupported("network is not tree-child".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::taxon;
    use crate::newick::{parse_network, parse_tree};
    use crate::tree::caterpillar;

    fn three_leaf() -> PhyloNetwork {
        parse_network("((a,(b)#H1),(#H1,c));").unwrap()
    }

    /// Direct definition: each non-leaf vertex has a child that is a tree vertex or leaf.
    fn tree_child_by_definition(net: &PhyloNetwork) -> bool {
        (0..net.vertex_count())
            .filter(|&v| !net.is_leaf(v))
            .all(|v| net.children(v).iter().any(|&c| !net.is_reticulation(c)))
    }

    #[test]
    fn three_leaf_network_is_normal() {
        let n = three_leaf();
        let c = classify(&n);
        assert!(c.is_normal && c.is_tree_child && c.is_binary);
        assert_eq!(c.reticulation_count, 1);
        assert_eq!(c.hybridisation_number, 1);
        assert!(c.shortcuts.is_empty());
    }

    #[test]
    fn tree_is_normal() {
        let t = parse_tree("(((a,b),c),(d,e));").unwrap();
        let c = classify(&PhyloNetwork::from_tree(&t).unwrap());
        assert!(c.is_tree_child && c.is_normal);
        assert_eq!(c.hybridisation_number, 0);
    }

    /// The one-reticulation network built from the caterpillar
    /// (l2, l3, l4, l1) by subdividing the edges into l2 and l1 and joining
    /// the new vertices.
    #[test]
    fn caterpillar_tree_child_network_has_one_shortcut() {
        let n = parse_network("((((l2,#H1),l3),l4),(l1)#H1);").unwrap();
        let c = classify(&n);
        assert!(c.is_tree_child);
        assert!(!c.is_normal);
        assert_eq!(c.shortcuts.len(), 1);
        let (u, v) = c.shortcuts[0].edge;
        assert_eq!(u, n.root());
        assert_eq!(n.children(v), &[n.leaf(&taxon("l1")).unwrap()]);
        // root, the parents of l4, l3 and the subdivision above l2
        assert_eq!(c.shortcuts[0].length, 4);
        assert!(tree_child_by_definition(&n));
        let _ = caterpillar;
    }

    #[test]
    fn length_two_shortcut() {
        let n = parse_network("((a,(b)#H1),#H1);").unwrap();
        let c = classify(&n);
        assert_eq!(c.shortcuts.len(), 1);
        assert_eq!(c.shortcuts[0].length, 2);
        assert!(c.is_tree_child && !c.is_normal);
    }

    #[test]
    fn not_tree_child() {
        // a tree vertex whose two children are both reticulations
        let n = parse_network("(((a)#H1,(b)#H2),(#H1,(#H2,c)));").unwrap();
        assert!(!is_tree_child(&n));
        assert!(!tree_child_by_definition(&n));
        assert!(!classify(&n).is_normal);
    }

    #[test]
    fn clusters() {
        let n = three_leaf();
        let a = n.leaf(&taxon("a")).unwrap();
        assert_eq!(cluster(&n, a).unwrap(), [taxon("a")].into_iter().collect());
        assert_eq!(cluster(&n, n.root()).unwrap(), n.leaf_set());
        let c = n.leaf(&taxon("c")).unwrap();
        let y = n.parents(c)[0];
        assert_eq!(cluster(&n, y).unwrap(), [taxon("b"), taxon("c")].into_iter().collect());
        assert_eq!(cluster(&n, 99).unwrap_err(), Error::UnknownVertex(99));
    }

    #[test]
    fn cherries_of_three_leaf_network() {
        let ch = find_cherries(&three_leaf());
        assert!(ch.cherries.is_empty());
        let expect: BTreeSet<_> = [(taxon("b"), taxon("a")), (taxon("b"), taxon("c"))].into_iter().collect();
        assert_eq!(ch.reticulated, expect);

        let t = PhyloNetwork::from_tree(&parse_tree("((a,b),c);").unwrap()).unwrap();
        let ch = find_cherries(&t);
        assert_eq!(ch.cherries.len(), 1);
        assert!(ch.reticulated.is_empty());
    }

    #[test]
    fn verifier_map() {
        let n = three_leaf();
        let v = verifiers(&n).unwrap();
        assert_eq!(v[&n.root()], taxon("a"));
        let b = n.leaf(&taxon("b")).unwrap();
        assert_eq!(v[&n.parents(b)[0]], taxon("b"));
    }
}
