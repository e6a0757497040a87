//! Reading a cherry-picking sequence off a tree-child network.

use super::{CherryPick, PickSequence};
use crate::classify::{require_binary_tree_child, verifiers};
use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::network::{NetworkEditor, PhyloNetwork};
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet};

/// Repeatedly picks a cherry, or failing that a reticulated cherry, of a
/// binary tree-child network until one leaf is left.
///
/// Each reticulation and the root is assigned its smallest tree-path leaf.
/// In a cherry containing a leaf assigned to a reticulation that has already
/// disappeared, that leaf is picked; otherwise a leaf not assigned to
/// anything is picked. Ties are broken by taking the lexicographically
/// smallest pair.
pub fn construct_sequence(net: &PhyloNetwork) -> Result<PickSequence> {
    require_binary_tree_child(net)?;
    let assigned = verifiers(net)?;
    let all_verifiers: BTreeSet<TaxonLabel> = assigned.values().cloned().collect();
    let reticulation_of: BTreeMap<TaxonLabel, VertexId> =
        assigned.iter().filter(|(&v, _)| v != net.root()).map(|(&v, l)| (l.clone(), v)).collect();

    let mut ed = NetworkEditor::from_network(net);
    let mut out = Vec::new();
    loop {
        if ed.live_count() == 1 {
            let v = ed.vertices().next().expect("one vertex");
            let l = ed.label(v).ok_or_else(|| Error::Internal("last vertex is unlabelled".into()))?;
            out.push(CherryPick::end(l));
            return PickSequence::new(out);
        }
        let gone = |ed: &NetworkEditor, l: &TaxonLabel| {
            reticulation_of.get(l).is_some_and(|&r| !ed.is_alive(r) || ed.parents(r).len() < 2)
        };
        let mut best: Option<(TaxonLabel, TaxonLabel)> = None;
        for p in ed.vertices() {
            let kids = ed.children(p);
            if kids.len() != 2 {
                continue;
            }
            let (Some(a), Some(b)) = (ed.label(kids[0]), ed.label(kids[1])) else { continue };
            // A leaf whose reticulation has disappeared must go first: it may
            // already have been picked, so it cannot stay as the partner.
            let any_gone = gone(&ed, a) || gone(&ed, b);
            for (x, y) in [(a, b), (b, a)] {
                let eligible = if any_gone { gone(&ed, x) } else { !all_verifiers.contains(x) };
                if eligible && best.as_ref().is_none_or(|(bx, by)| (x, y) < (bx, by)) {
                    best = Some((x.clone(), y.clone()));
                }
            }
        }
        if let Some((x, y)) = best {
            let xv = ed.leaf(&x).expect("live leaf");
            let p = ed.parents(xv)[0];
            ed.remove_vertex(xv);
            ed.suppress(p)?;
            out.push(CherryPick::pair(&x, &y));
            continue;
        }
        let mut best: Option<(TaxonLabel, TaxonLabel, VertexId, VertexId)> = None;
        for r in ed.vertices() {
            if ed.parents(r).len() < 2 {
                continue;
            }
            let Some(x) = ed.label(ed.children(r)[0]) else { continue };
            for &g in ed.parents(r) {
                for &s in ed.children(g) {
                    let Some(y) = ed.label(s) else { continue };
                    if best.as_ref().is_none_or(|(bx, by, _, _)| (x, y) < (bx, by)) {
                        best = Some((x.clone(), y.clone(), g, r));
                    }
                }
            }
        }
        let Some((x, y, g, r)) = best else {
            return Err(Error::Internal("network has neither a cherry nor a reticulated cherry".into()));
        };
        ed.remove_edge(g, r);
        ed.suppress(g)?;
        ed.suppress(r)?;
        out.push(CherryPick::pair(&x, &y));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::{parse_network, parse_tree};
    use crate::sequence::check_n;

    #[test]
    fn three_leaf_network() {
        let n = parse_network("((a,(b)#H1),(#H1,c));").unwrap();
        let s = construct_sequence(&n).unwrap();
        assert_eq!(s, PickSequence::from_names(&[("b", "a"), ("b", "c"), ("c", "a")], "a").unwrap());
        assert_eq!(s.weight(3), 1);
        assert!(s.check_tc());
        assert_eq!(check_n(&s).unwrap(), None);
    }

    #[test]
    fn tree_gives_weight_zero() {
        let t = parse_tree("(((a,b),c),(d,e));").unwrap();
        let s = construct_sequence(&PhyloNetwork::from_tree(&t).unwrap()).unwrap();
        assert_eq!(s.weight(5), 0);
        assert!(crate::sequence::apply_sequence(&[t], &s).unwrap().is_cps);
    }

    #[test]
    fn single_leaf() {
        let n = parse_network("a;").unwrap();
        assert_eq!(construct_sequence(&n).unwrap(), PickSequence::from_names(&[], "a").unwrap());
    }

    #[test]
    fn rejects_non_tree_child() {
        let n = parse_network("(((a)#H1,(b)#H2),(#H1,(#H2,c)));").unwrap();
        assert!(construct_sequence(&n).is_err());
    }
}
