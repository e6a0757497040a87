//! Isomorphism fixing leaf labels.

use crate::network::PhyloNetwork;
use crate::tree::PhyloTree;
use crate::VertexId;

pub fn trees_isomorphic(a: &PhyloTree, b: &PhyloTree) -> bool {
    a.isomorphic(b)
}

/// Whether there is a digraph isomorphism between the networks that maps each
/// leaf to the leaf with the same label.
pub fn networks_isomorphic(a: &PhyloNetwork, b: &PhyloNetwork) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() || a.leaf_set() != b.leaf_set() {
        return false;
    }
    let n = a.vertex_count();
    let mut map: Vec<Option<VertexId>> = vec![None; n];
    let mut used = vec![false; n];
    for v in 0..n {
        if let Some(l) = a.label(v) {
            let w = b.leaf(l).expect("same leaf sets");
            map[v] = Some(w);
            used[w] = true;
        }
    }
    // Non-leaf vertices, children before parents.
    let order: Vec<VertexId> = a.topological_order().iter().rev().copied().filter(|&v| !a.is_leaf(v)).collect();
    extend(a, b, &order, 0, &mut map, &mut used)
}

fn extend(
    a: &PhyloNetwork,
    b: &PhyloNetwork,
    order: &[VertexId],
    k: usize,
    map: &mut [Option<VertexId>],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(k) else {
        return true;
    };
    let images: Vec<VertexId> = a.children(v).iter().map(|&c| map[c].expect("children mapped first")).collect();
    let candidates: Vec<VertexId> = b
        .parents(images[0])
        .iter()
        .copied()
        .filter(|&w| {
            !used[w]
                && b.children(w).len() == a.children(v).len()
                && b.parents(w).len() == a.parents(v).len()
                && images.iter().all(|i| b.children(w).contains(i))
        })
        .collect();
    for w in candidates {
        map[v] = Some(w);
        used[w] = true;
        if extend(a, b, order, k + 1, map, used) {
            return true;
        }
        map[v] = None;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::taxon;
    use crate::newick::{parse_network, parse_tree};
    use crate::tree::caterpillar;

    #[test]
    fn caterpillar_cherry_order_is_irrelevant() {
        let a = caterpillar(&["l1", "l2", "l3", "l4"].map(taxon)).unwrap();
        let b = caterpillar(&["l2", "l1", "l3", "l4"].map(taxon)).unwrap();
        assert!(trees_isomorphic(&a, &b));
        let c = caterpillar(&["l2", "l3", "l4", "l1"].map(taxon)).unwrap();
        assert!(!trees_isomorphic(&a, &c));
        assert!(trees_isomorphic(&c, &c));
    }

    #[test]
    fn network_isomorphism() {
        let n = parse_network("((a,(b)#H1),(#H1,c));").unwrap();
        let m = parse_network("((c,#H1),((b)#H1,a));").unwrap();
        assert!(networks_isomorphic(&n, &n));
        assert!(networks_isomorphic(&n, &m));
        let other = parse_network("((b,(a)#H1),(#H1,c));").unwrap();
        assert!(!networks_isomorphic(&n, &other));
        let t = PhyloNetwork::from_tree(&parse_tree("((a,b),c);").unwrap()).unwrap();
        assert!(!networks_isomorphic(&n, &t));
    }

    #[test]
    fn needs_backtracking_on_symmetric_parents() {
        // both parents of the reticulation have a leaf child; swapping them
        // is only valid if the leaves agree
        let n = parse_network("(((a,(x)#H1),b),(#H1,c));").unwrap();
        let m = parse_network("(((c,(x)#H1),b),(#H1,a));").unwrap();
        assert!(!networks_isomorphic(&n, &m));
        let same = parse_network("((c,#H1),(b,(a,(x)#H1)));").unwrap();
        assert!(networks_isomorphic(&n, &same));
    }
}
