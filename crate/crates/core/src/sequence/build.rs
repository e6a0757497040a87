//! Building a network from a cherry-picking sequence, and checking the
//! structural links between a network and a sequence.

use super::{apply_sequence, check_n, CherryPick, PickSequence};
use crate::classify::{classify, is_tree_child, tree_path_leaves};
use crate::display::displays_any;
use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::network::{NetworkEditor, PhyloNetwork};
use crate::tree::PhyloTree;
use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet};

/// Builds a tree-child network displaying `trees` with hybridisation number
/// at most the weight of `seq`, by undoing the essential picks of `seq` from
/// last to first.
///
/// A pair `(x, y)` with `x` not yet present hangs `x` next to `y`; otherwise
/// the edge above `y` is joined to a reticulation above `x` (an existing
/// reticulation gains a parent, so a leaf that is picked three or more
/// times yields in-degree above two). The result is checked before it is
/// returned; when `seq` has the normal property the result is also checked
/// to be normal.
pub fn sequence_to_network(trees: &[PhyloTree], seq: &PickSequence) -> Result<PhyloNetwork> {
    let report = apply_sequence(trees, seq)?;
    if let Some(why) = report.failure {
        return Err(Error::NotCherryPickingSequence(why));
    }
    if !seq.check_tc() {
        return Err(Error::NotCherryPickingSequence("the tree-child property fails".into()));
    }
    let normal = check_n(seq)?.is_none();
    let essential: Vec<&CherryPick> =
        seq.body().iter().zip(&report.essentials).filter(|(_, &e)| e).map(|(p, _)| p).collect();

    let mut ed = NetworkEditor::new();
    ed.add_vertex(Some(seq.end_label().clone()));
    for p in essential.iter().rev() {
        let y = p.y.as_ref().expect("body pairs have a partner");
        let yv = ed.leaf(y).ok_or_else(|| Error::Internal(format!("{y} is absent when undoing ({}, {y})", p.x)))?;
        let u = match ed.parents(yv).first().copied() {
            Some(q) => ed.subdivide(q, yv)?,
            None => {
                let r = ed.add_vertex(None);
                ed.add_edge(r, yv);
                r
            }
        };
        match ed.leaf(&p.x) {
            None => {
                let xv = ed.add_vertex(Some(p.x.clone()));
                ed.add_edge(u, xv);
            }
            Some(xv) => {
                let q = ed.parents(xv)[0];
                if ed.parents(q).len() >= 2 {
                    ed.add_edge(u, q);
                } else {
                    let r = ed.subdivide(q, xv)?;
                    ed.add_edge(u, r);
                }
            }
        }
    }
    let net = ed.finish().map_err(|e| Error::Internal(format!("built network is invalid: {e}")))?;

    let c = classify(&net);
    if !c.is_tree_child {
        return Err(Error::Internal("built network is not tree-child".into()));
    }
    if (c.hybridisation_number as i64) > report.weight {
        return Err(Error::Internal(format!(
            "built network has hybridisation number {} above the sequence weight {}",
            c.hybridisation_number, report.weight
        )));
    }
    if normal && !c.is_normal {
        return Err(Error::Internal("sequence has the normal property but the built network has a shortcut".into()));
    }
    for (i, t) in trees.iter().enumerate() {
        if !displays_any(&net, t)? {
            return Err(Error::Internal(format!("built network does not display tree {}", i + 1)));
        }
    }
    Ok(net)
}

/// Outcome of one structural property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Description of the first failing vertex, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Occurrences(BTreeMap<(TaxonLabel, TaxonLabel), Vec<usize>>);

impl Occurrences {
    fn positions(&self, x: &TaxonLabel, y: &TaxonLabel) -> &[usize] {
        self.0.get(&(x.clone(), y.clone())).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Pairs `(l, l')` with `l` in `a` and `l'` in `b`, or the other way round.
fn cross<'a>(
    a: &'a BTreeSet<TaxonLabel>,
    b: &'a BTreeSet<TaxonLabel>,
) -> impl Iterator<Item = (&'a TaxonLabel, &'a TaxonLabel)> + 'a {
    let ab = a.iter().flat_map(move |x| b.iter().map(move |y| (x, y)));
    let ba = b.iter().flat_map(move |x| a.iter().map(move |y| (x, y)));
    ab.chain(ba)
}

/// Checks four links between a tree-child network and a sequence over its
/// leaves, each over every qualifying vertex (tree paths as in
/// [`crate::classify::tree_path_leaves`]):
///
/// * `i`: a tree vertex with no reticulation child has leaves `l`, `l'` on
///   tree paths from its two children with `(l, l')` in the sequence;
/// * `ii`: a tree vertex `u` with reticulation child `v` has `l_v` and `l_u`
///   on tree paths from `v` and `u` with `(l_v, l_u)` in the sequence;
/// * `iii`: if tree vertices `u'` and its child `u` share a reticulation
///   child, some pair `(l, l')` from the two children of `u` occurs twice;
/// * `iv`: for tree vertices `u`, `u'` joined by an edge (sharing no
///   reticulation child) or by a path through one reticulation, every pair
///   `(l1, l1')` from the children of `u'` in the sequence is followed by a
///   pair `(l2, l2')` from the children of `u` that meets it with `l2 != l1`.
pub fn verify_network_sequence_properties(net: &PhyloNetwork, seq: &PickSequence) -> Result<PropertyReport> {
    if !is_tree_child(net) {
        return Err(Error::Unsupported("network is not tree-child".into()));
    }
    let mut labels: BTreeSet<TaxonLabel> = BTreeSet::new();
    for p in seq.pairs() {
        labels.insert(p.x.clone());
        labels.extend(p.y.iter().cloned());
    }
    if labels != net.leaf_set() {
        return Err(Error::LeafSetMismatch);
    }
    let tp = tree_path_leaves(net);
    let mut occ = BTreeMap::new();
    for (i, p) in seq.body().iter().enumerate() {
        occ.entry((p.x.clone(), p.y.clone().expect("body"))).or_insert_with(Vec::new).push(i + 1);
    }
    let occ = Occurrences(occ);
    let tree_vertices: Vec<VertexId> = (0..net.vertex_count()).filter(|&v| net.is_tree_vertex(v)).collect();
    let has_ret_child = |u: VertexId| net.children(u).iter().any(|&c| net.is_reticulation(c));
    let child_sets = |u: VertexId| (&tp[net.children(u)[0]], &tp[net.children(u)[1]]);

    let mut checks = Vec::new();

    let fail = tree_vertices.iter().find(|&&u| {
        if has_ret_child(u) {
            return false;
        }
        let (a, b) = child_sets(u);
        !cross(a, b).any(|(x, y)| !occ.positions(x, y).is_empty())
    });
    checks.push(PropertyCheck { name: "i", passed: fail.is_none(), witness: fail.map(|u| format!("tree vertex {u}")) });

    let mut fail = None;
    'ii: for &u in &tree_vertices {
        for &v in net.children(u).iter().filter(|&&c| net.is_reticulation(c)) {
            let ok = tp[v].iter().any(|lv| tp[u].iter().any(|lu| !occ.positions(lv, lu).is_empty()));
            if !ok {
                fail = Some(format!("tree vertex {u} with reticulation child {v}"));
                break 'ii;
            }
        }
    }
    checks.push(PropertyCheck { name: "ii", passed: fail.is_none(), witness: fail });

    let mut fail = None;
    'iii: for &u in &tree_vertices {
        let Some(&up) = net.parents(u).first() else { continue };
        if !net.is_tree_vertex(up) {
            continue;
        }
        let shared = net.children(u).iter().any(|&v| net.is_reticulation(v) && net.children(up).contains(&v));
        if shared {
            let (a, b) = child_sets(u);
            if !cross(a, b).any(|(x, y)| occ.positions(x, y).len() >= 2) {
                fail = Some(format!("tree vertices {up} -> {u}"));
                break 'iii;
            }
        }
    }
    checks.push(PropertyCheck { name: "iii", passed: fail.is_none(), witness: fail });

    let mut linked: Vec<(VertexId, VertexId)> = Vec::new();
    for &u in &tree_vertices {
        for &c in net.children(u) {
            if net.is_tree_vertex(c) {
                let shared = net.children(u).iter().any(|&v| net.is_reticulation(v) && net.children(c).contains(&v));
                if !shared {
                    linked.push((u, c));
                }
            } else if net.is_reticulation(c) {
                let w = net.children(c)[0];
                if net.is_tree_vertex(w) {
                    linked.push((u, w));
                }
            }
        }
    }
    let mut fail = None;
    'iv: for &(u, up) in &linked {
        let (a1, b1) = child_sets(up);
        let (a2, b2) = child_sets(u);
        for (l1, l1p) in cross(a1, b1) {
            let Some(&first) = occ.positions(l1, l1p).first() else { continue };
            let ok = cross(a2, b2).any(|(l2, l2p)| {
                l2 != l1
                    && (l2 == l1 || l2 == l1p || l2p == l1 || l2p == l1p)
                    && occ.positions(l2, l2p).last().is_some_and(|&last| last > first)
            });
            if !ok {
                fail = Some(format!("tree vertices {u} and {up}, pair ({l1}, {l1p})"));
                break 'iv;
            }
        }
    }
    checks.push(PropertyCheck { name: "iv", passed: fail.is_none(), witness: fail });

    Ok(PropertyReport { checks })
}
