//! Recovering the binary normal network whose display set is a given set of
//! binary trees, or certifying that no such network exists.

use crate::classify::is_normal;
use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::network::{NetworkEditor, PhyloNetwork};
use crate::tree::PhyloTree;
use std::collections::HashMap;

/// Why a tree set is not the display set of any binary normal network.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The number of trees is not a power of two.
    BadCardinality,
    /// No pair of leaves is a cherry of every tree, nor a cherry of half the
    /// trees with a matching bijection.
    NoStepApplies,
    /// The reduced tree set is itself not a display set.
    SubproblemFailed,
    /// Adding the reticulation back produced a network with a shortcut.
    ConstructedNetworkNotNormal,
}

#[derive(Clone, Debug)]
pub enum ReconstructionOutcome {
    Network(PhyloNetwork),
    NotTightlyNormalCompatible(Verdict),
}

impl ReconstructionOutcome {
    pub fn network(&self) -> Option<&PhyloNetwork> {
        match self {
            ReconstructionOutcome::Network(n) => Some(n),
            ReconstructionOutcome::NotTightlyNormalCompatible(_) => None,
        }
    }
}

/// Whether `b` lies below the parent of `a` in `t`.
fn below_parent(t: &PhyloTree, a: &TaxonLabel, b: &TaxonLabel) -> bool {
    let pa = t.parent(t.leaf(a).expect("leaf present")).expect("a is not the root");
    let mut v = t.leaf(b).expect("leaf present");
    loop {
        if v == pa {
            return true;
        }
        match t.parent(v) {
            Some(p) => v = p,
            None => return false,
        }
    }
}

fn require_pair_input(t1: &PhyloTree, t2: &PhyloTree, a: &TaxonLabel, b: &TaxonLabel) -> Result<()> {
    if !t1.is_binary() || !t2.is_binary() {
        return Err(Error::NotBinary);
    }
    if t1.leaf_set() != t2.leaf_set() {
        return Err(Error::LeafSetMismatch);
    }
    for l in [a, b] {
        if !t1.contains(l) {
            return Err(Error::UnknownLabel(l.clone()));
        }
    }
    Ok(())
}

/// Whether `{a, b}` is a reticulated cherry with reticulation leaf `a` in the
/// binary normal network displaying exactly `t1` (where `{a, b}` is a cherry)
/// and `t2` (where it is not): `t1 \ a` and `t2 \ a` must be isomorphic and `b`
/// must not be a descendant of the parent of `a` in `t2`.
pub fn pair_normal_reticulated_cherry(t1: &PhyloTree, t2: &PhyloTree, a: &TaxonLabel, b: &TaxonLabel) -> Result<bool> {
    require_pair_input(t1, t2, a, b)?;
    if a == b || !t1.is_cherry(a, b) || t2.is_cherry(a, b) {
        return Ok(false);
    }
    let d1 = t1.delete_leaf(a)?;
    let d2 = t2.delete_leaf(a)?;
    Ok(d1.isomorphic(&d2) && !below_parent(t2, a, b))
}

/// Result of looking for the half-cherry bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfCherryBijection {
    /// `pairs[i] = (j, k)`: tree `j` (with the cherry) maps to tree `k`.
    Found(Vec<(usize, usize)>),
    /// The cherry is present in a number of trees other than half.
    NotHalf,
    /// Some tree with the cherry has no partner.
    Unmatched,
}

/// Looks for the bijection from the trees having cherry `{a, b}` to the rest,
/// pairing each tree with the one that agrees after deleting `x` and in which
/// `{a, b}` becomes a reticulated cherry with reticulation leaf `x`.
pub fn find_half_cherry_bijection(
    trees: &[PhyloTree],
    a: &TaxonLabel,
    b: &TaxonLabel,
    x: &TaxonLabel,
) -> Result<HalfCherryBijection> {
    if x != a && x != b {
        return Err(Error::Precondition(format!("{x} is neither {a} nor {b}")));
    }
    let y = if x == a { b } else { a };
    let (with, without): (Vec<usize>, Vec<usize>) = (0..trees.len()).partition(|&i| trees[i].is_cherry(a, b));
    if with.is_empty() || with.len() * 2 != trees.len() {
        return Ok(HalfCherryBijection::NotHalf);
    }
    let mut by_reduced: HashMap<String, usize> = HashMap::new();
    for &k in &without {
        by_reduced.insert(trees[k].delete_leaf(x)?.canonical(), k);
    }
    let mut pairs = Vec::with_capacity(with.len());
    let mut taken = vec![false; trees.len()];
    for &j in &with {
        let key = trees[j].delete_leaf(x)?.canonical();
        let Some(&k) = by_reduced.get(&key) else {
            return Ok(HalfCherryBijection::Unmatched);
        };
        if taken[k] || below_parent(&trees[k], x, y) {
            return Ok(HalfCherryBijection::Unmatched);
        }
        taken[k] = true;
        pairs.push((j, k));
    }
    Ok(HalfCherryBijection::Found(pairs))
}

fn validate_input(trees: &[PhyloTree]) -> Result<()> {
    let Some(first) = trees.first() else {
        return Err(Error::Precondition("the tree set is empty".into()));
    };
    let leaves = first.leaf_set();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, t) in trees.iter().enumerate() {
        if !t.is_binary() {
            return Err(Error::NotBinary);
        }
        if t.leaf_set() != leaves {
            return Err(Error::LeafSetMismatch);
        }
        if let Some(&j) = seen.get(&t.canonical()) {
            return Err(Error::DuplicateTrees(j, i));
        }
        seen.insert(t.canonical(), i);
    }
    Ok(())
}

/// Decides whether `trees` is exactly the display set of a binary normal
/// network and, if so, returns that (unique) network.
pub fn reconstruct(trees: &[PhyloTree]) -> Result<ReconstructionOutcome> {
    validate_input(trees)?;
    let mut editor = NetworkEditor::new();
    match build(trees, &mut editor)? {
        Ok(()) => {
            let net = editor.finish().map_err(|e| Error::Internal(format!("reconstructed network is invalid: {e}")))?;
            Ok(ReconstructionOutcome::Network(net))
        }
        Err(v) => Ok(ReconstructionOutcome::NotTightlyNormalCompatible(v)),
    }
}

fn parent_in(editor: &NetworkEditor, leaf: &TaxonLabel) -> Option<usize> {
    editor.leaf(leaf).and_then(|v| editor.parents(v).first().copied())
}

/// Subdivides the edge into `leaf`, or creates a new root above it when the
/// network is that single leaf.
fn above(editor: &mut NetworkEditor, leaf: &TaxonLabel) -> Result<usize> {
    let v = editor.leaf(leaf).ok_or_else(|| Error::Internal(format!("{leaf} missing while rebuilding")))?;
    match parent_in(editor, leaf) {
        Some(p) => editor.subdivide(p, v),
        None => {
            let r = editor.add_vertex(None);
            editor.add_edge(r, v);
            Ok(r)
        }
    }
}

fn build(trees: &[PhyloTree], editor: &mut NetworkEditor) -> Result<std::result::Result<(), Verdict>> {
    if !trees.len().is_power_of_two() {
        return Ok(Err(Verdict::BadCardinality));
    }
    let leaves: Vec<TaxonLabel> = trees[0].leaf_labels().cloned().collect();
    match leaves.len() {
        1 => {
            editor.add_vertex(Some(leaves[0].clone()));
            return Ok(Ok(()));
        }
        2 => {
            let r = editor.add_vertex(None);
            for l in &leaves {
                let v = editor.add_vertex(Some(l.clone()));
                editor.add_edge(r, v);
            }
            return Ok(Ok(()));
        }
        _ => {}
    }

    // A cherry common to every tree: delete its larger leaf, recurse, reattach.
    for (a, b) in trees[0].cherries() {
        if trees.iter().all(|t| t.is_cherry(&a, &b)) {
            let reduced: Vec<PhyloTree> = trees.iter().map(|t| t.delete_leaf(&b)).collect::<Result<_>>()?;
            if build(&reduced, editor)?.is_err() {
                return Ok(Err(Verdict::SubproblemFailed));
            }
            let p = above(editor, &a)?;
            let bv = editor.add_vertex(Some(b.clone()));
            editor.add_edge(p, bv);
            return Ok(Ok(()));
        }
    }

    // A cherry of half the trees, matched to the other half.
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            let (a, b) = (&leaves[i], &leaves[j]);
            for (x, y) in [(a, b), (b, a)] {
                let HalfCherryBijection::Found(_) = find_half_cherry_bijection(trees, a, b, x)? else {
                    continue;
                };
                let rest: Vec<PhyloTree> = trees.iter().filter(|t| !t.is_cherry(a, b)).cloned().collect();
                if build(&rest, editor)?.is_err() {
                    return Ok(Err(Verdict::SubproblemFailed));
                }
                let px = above(editor, x)?;
                let py = above(editor, y)?;
                editor.add_edge(py, px);
                let net = editor.finish().map_err(|e| Error::Internal(format!("rebuilt network is invalid: {e}")))?;
                if !is_normal(&net) {
                    return Ok(Err(Verdict::ConstructedNetworkNotNormal));
                }
                return Ok(Ok(()));
            }
        }
    }
    Ok(Err(Verdict::NoStepApplies))
}
