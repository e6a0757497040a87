//! Embeddings and display sets.
//!
//! In a binary tree-child network an embedding of a displayed tree is fixed
//! by choosing one incoming edge per reticulation; all tree edges are always
//! used.

use crate::classify::{require_binary_tree_child, tree_path_min};
use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::network::PhyloNetwork;
use crate::tree::{is_refinement, PhyloTree, TreeShape};
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// One chosen parent for each reticulation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    choice: BTreeMap<VertexId, VertexId>,
}

impl Embedding {
    pub fn new(choice: BTreeMap<VertexId, VertexId>) -> Self {
        Embedding { choice }
    }

    /// The parent whose edge into `reticulation` is used.
    pub fn parent_of(&self, reticulation: VertexId) -> Option<VertexId> {
        self.choice.get(&reticulation).copied()
    }

    pub fn choices(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.choice
    }

    /// Whether edge `(u, v)` of `net` belongs to the embedding.
    pub fn uses(&self, net: &PhyloNetwork, u: VertexId, v: VertexId) -> bool {
        if net.is_reticulation(v) {
            self.choice.get(&v) == Some(&u)
        } else {
            net.children(u).contains(&v)
        }
    }

    /// Checks that the keys are exactly the reticulations and each value is a parent.
    pub fn validate(&self, net: &PhyloNetwork) -> Result<()> {
        let rets: BTreeSet<VertexId> = net.reticulations().collect();
        if self.choice.keys().copied().collect::<BTreeSet<_>>() != rets {
            return Err(Error::InvalidEmbedding("keys differ from the reticulations of the network".into()));
        }
        for (&r, &p) in &self.choice {
            if !net.parents(r).contains(&p) {
                return Err(Error::InvalidEmbedding(format!("{p} is not a parent of reticulation {r}")));
            }
        }
        Ok(())
    }
}

/// Reticulations ordered by their smallest tree-path leaf, each with its
/// parents ordered the same way.
fn choice_layout(net: &PhyloNetwork) -> Vec<(VertexId, Vec<VertexId>)> {
    let tp = tree_path_min(net);
    let mut rets: Vec<VertexId> = net.reticulations().collect();
    rets.sort_by(|&a, &b| tp[a].cmp(&tp[b]).then(a.cmp(&b)));
    rets.into_iter()
        .map(|r| {
            let mut ps = net.parents(r).to_vec();
            ps.sort_by(|&a, &b| tp[a].cmp(&tp[b]).then(a.cmp(&b)));
            (r, ps)
        })
        .collect()
}

/// Iterator over every embedding, a mixed-radix counter over reticulation choices.
pub struct Embeddings {
    layout: Vec<(VertexId, Vec<VertexId>)>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Embeddings {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let choice = self.layout.iter().zip(&self.digits).map(|((r, ps), &d)| (*r, ps[d])).collect();
        self.done = true;
        for (i, (_, ps)) in self.layout.iter().enumerate() {
            if self.digits[i] + 1 < ps.len() {
                self.digits[i] += 1;
                self.done = false;
                break;
            }
            self.digits[i] = 0;
        }
        Some(Embedding { choice })
    }
}

fn embeddings_unchecked(net: &PhyloNetwork) -> Embeddings {
    let layout = choice_layout(net);
    let digits = vec![0; layout.len()];
    Embeddings { layout, digits, done: false }
}

/// All `2^k` embeddings of a binary tree-child network.
pub fn enumerate_embeddings(net: &PhyloNetwork) -> Result<Embeddings> {
    require_binary_tree_child(net)?;
    Ok(embeddings_unchecked(net))
}

/// The tree traced by an embedding, with dead ends removed and degree-two
/// vertices suppressed. `None` when the embedding reaches no leaf.
fn traced_shape(net: &PhyloNetwork, emb: &Embedding, v: VertexId) -> Option<TreeShape> {
    if let Some(l) = net.label(v) {
        return Some(TreeShape::Leaf(l.clone()));
    }
    let mut kids: Vec<TreeShape> = net
        .children(v)
        .iter()
        .filter(|&&c| !net.is_reticulation(c) || emb.parent_of(c) == Some(v))
        .filter_map(|&c| traced_shape(net, emb, c))
        .collect();
    match kids.len() {
        0 => None,
        1 => kids.pop(),
        _ => Some(TreeShape::Node(kids)),
    }
}

fn traced_tree(net: &PhyloNetwork, emb: &Embedding) -> Result<PhyloTree> {
    let shape =
        traced_shape(net, emb, net.root()).ok_or_else(|| Error::InvalidEmbedding("embedding reaches no leaf".into()))?;
    PhyloTree::from_shape(&shape)
}

/// The binary tree displayed through `emb`.
pub fn embedding_to_tree(net: &PhyloNetwork, emb: &Embedding) -> Result<PhyloTree> {
    emb.validate(net)?;
    let tree = traced_tree(net, emb)?;
    if tree.leaf_set() != net.leaf_set() {
        return Err(Error::InvalidEmbedding("embedding does not reach every leaf".into()));
    }
    Ok(tree)
}

/// Display set, deduplicated up to isomorphism, in first-seen order.
#[derive(Clone, Debug)]
pub struct DisplaySet {
    pub trees: Vec<PhyloTree>,
    /// Number of embeddings enumerated (`2^k`).
    pub raw_count: usize,
}

pub fn display_set(net: &PhyloNetwork) -> Result<DisplaySet> {
    let mut seen = HashSet::new();
    let mut trees = Vec::new();
    let mut raw_count = 0;
    for emb in enumerate_embeddings(net)? {
        raw_count += 1;
        let t = traced_tree(net, &emb)?;
        if seen.insert(t.canonical()) {
            trees.push(t);
        }
    }
    Ok(DisplaySet { trees, raw_count })
}

fn check_subset(net: &PhyloNetwork, tree: &PhyloTree) -> Result<BTreeSet<TaxonLabel>> {
    let leaves = tree.leaf_set();
    if !leaves.is_subset(&net.leaf_set()) {
        return Err(Error::LeafSetMismatch);
    }
    Ok(leaves)
}

fn displayed_through(net: &PhyloNetwork, emb: &Embedding, tree: &PhyloTree, leaves: &BTreeSet<TaxonLabel>) -> bool {
    let Ok(traced) = traced_tree(net, emb) else { return false };
    if traced.leaf_set() != net.leaf_set() {
        return false;
    }
    let restricted = if leaves.len() == traced.leaf_count() {
        traced
    } else {
        traced.restrict(leaves).expect("leaves are a subset")
    };
    is_refinement(&restricted, tree).unwrap_or(false)
}

/// Whether some binary refinement of `tree` is displayed by `net`.
pub fn displays(net: &PhyloNetwork, tree: &PhyloTree) -> Result<bool> {
    let leaves = check_subset(net, tree)?;
    Ok(enumerate_embeddings(net)?.any(|e| displayed_through(net, &e, tree, &leaves)))
}

/// Like [`displays`] but for any network, including ones with reticulations
/// of in-degree greater than two or without the tree-child property; every
/// combination of one parent per reticulation is tried.
pub(crate) fn displays_any(net: &PhyloNetwork, tree: &PhyloTree) -> Result<bool> {
    let leaves = check_subset(net, tree)?;
    Ok(embeddings_unchecked(net).any(|e| displayed_through(net, &e, tree, &leaves)))
}

/// Finds an embedding of `tree` (binary, same leaf set) in a binary tree-child network.
pub(crate) fn find_embedding(net: &PhyloNetwork, tree: &PhyloTree) -> Result<Option<Embedding>> {
    let target = tree.canonical();
    for e in enumerate_embeddings(net)? {
        if traced_tree(net, &e)?.canonical() == target {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::taxon;
    use crate::newick::{parse_network, parse_tree};
    use crate::tree::caterpillar;

    fn cat(order: &[&str]) -> PhyloTree {
        caterpillar(&order.iter().map(|s| taxon(s)).collect::<Vec<_>>()).unwrap()
    }

    fn tree_child_caterpillar_net() -> PhyloNetwork {
        parse_network("((((l2,#H1),l3),l4),(l1)#H1);").unwrap()
    }

    #[test]
    fn tree_has_one_empty_embedding() {
        let t = parse_tree("((a,b),(c,d));").unwrap();
        let n = PhyloNetwork::from_tree(&t).unwrap();
        let embs: Vec<_> = enumerate_embeddings(&n).unwrap().collect();
        assert_eq!(embs.len(), 1);
        assert!(embs[0].choices().is_empty());
        assert!(embedding_to_tree(&n, &embs[0]).unwrap().isomorphic(&t));
        let ds = display_set(&n).unwrap();
        assert_eq!((ds.trees.len(), ds.raw_count), (1, 1));
    }

    #[test]
    fn three_leaf_display_set() {
        let n = parse_network("((a,(b)#H1),(#H1,c));").unwrap();
        assert_eq!(enumerate_embeddings(&n).unwrap().count(), 2);
        let ds = display_set(&n).unwrap();
        let got: BTreeSet<String> = ds.trees.iter().map(|t| t.canonical()).collect();
        let want: BTreeSet<String> = ["((a,b),c);", "(a,(b,c));"].into_iter().map(String::from).collect();
        assert_eq!(got, want);
        assert!(!displays(&n, &parse_tree("((a,c),b);").unwrap()).unwrap());
        assert!(displays(&n, &parse_tree("(a,b,c);").unwrap()).unwrap());
        assert!(displays(&n, &parse_tree("(a,b);").unwrap()).unwrap());
    }

    #[test]
    fn caterpillar_network_displays_both_caterpillars() {
        let n = tree_child_caterpillar_net();
        let l1 = n.leaf(&taxon("l1")).unwrap();
        let r = n.parents(l1)[0];
        let root = n.root();
        let p2 = *n.parents(r).iter().find(|&&p| p != root).unwrap();
        let via_p2 = Embedding::new([(r, p2)].into_iter().collect());
        let via_root = Embedding::new([(r, root)].into_iter().collect());
        assert!(embedding_to_tree(&n, &via_p2).unwrap().isomorphic(&cat(&["l1", "l2", "l3", "l4"])));
        assert!(embedding_to_tree(&n, &via_root).unwrap().isomorphic(&cat(&["l2", "l3", "l4", "l1"])));
        assert_eq!(display_set(&n).unwrap().trees.len(), 2);
    }

    #[test]
    fn rejects_bad_embeddings_and_hosts() {
        let n = tree_child_caterpillar_net();
        let bad = Embedding::new(BTreeMap::new());
        assert!(matches!(embedding_to_tree(&n, &bad), Err(Error::InvalidEmbedding(_))));
        let not_tc = parse_network("(((a)#H1,(b)#H2),(#H1,(#H2,c)));").unwrap();
        assert!(matches!(enumerate_embeddings(&not_tc), Err(Error::Unsupported(_))));
        assert!(matches!(display_set(&not_tc), Err(Error::Unsupported(_))));
    }

    #[test]
    fn any_degree_display_check() {
        // one reticulation with three parents, displaying all three trees on {a,b,c}
        let n = parse_network("((a,(#H1,c)),((b)#H1,#H1));").err();
        assert!(n.is_some(), "parallel edges are rejected");
        let n = parse_network("((a,#H1),((c,#H1),(d,(b)#H1)));").unwrap();
        assert_eq!(n.parents(n.parents(n.leaf(&taxon("b")).unwrap())[0]).len(), 3);
        for t in ["((a,b),(c,d));", "(a,((b,c),d));", "(a,(c,(b,d)));"] {
            assert!(displays_any(&n, &parse_tree(t).unwrap()).unwrap(), "{t}");
        }
        assert!(!displays_any(&n, &parse_tree("((a,c),(b,d));").unwrap()).unwrap());
    }
}
