//! Applying a sequence to a set of trees.

use super::PickSequence;
use crate::error::{Error, Result};
use crate::tree::PhyloTree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApplyReport {
    /// Every tree was reduced to the single terminal leaf.
    pub is_cps: bool,
    /// One flag per pair (terminal pair included, always `false`): whether
    /// picking it changed some tree.
    pub essentials: Vec<bool>,
    /// `s + 1 - |X|`.
    pub weight: i64,
    /// Why the sequence is not a cherry-picking sequence, when it is not.
    pub failure: Option<String>,
}

pub(crate) fn common_leaf_set(trees: &[PhyloTree]) -> Result<std::collections::BTreeSet<crate::TaxonLabel>> {
    let Some(first) = trees.first() else {
        return Err(Error::Precondition("the tree set is empty".into()));
    };
    let leaves = first.leaf_set();
    if trees.iter().any(|t| t.leaf_set() != leaves) {
        return Err(Error::LeafSetMismatch);
    }
    Ok(leaves)
}

/// Picks the pairs of `seq` in order from every tree (non-binary trees
/// allowed: a cherry is two leaves with the same parent).
pub fn apply_sequence(trees: &[PhyloTree], seq: &PickSequence) -> Result<ApplyReport> {
    let leaves = common_leaf_set(trees)?;
    for p in seq.pairs() {
        for l in std::iter::once(&p.x).chain(p.y.as_ref()) {
            if !leaves.contains(l) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
    }
    let mut current: Vec<PhyloTree> = trees.to_vec();
    let mut essentials = Vec::with_capacity(seq.len());
    for p in seq.body() {
        let y = p.y.as_ref().expect("body pairs have a partner");
        let mut changed = false;
        for t in current.iter_mut() {
            if let Some(next) = t.pick(&p.x, y) {
                *t = next;
                changed = true;
            }
        }
        essentials.push(changed);
    }
    essentials.push(false);
    let end = seq.end_label();
    let failure = current.iter().enumerate().find_map(|(i, t)| {
        (t.leaf_count() != 1 || !t.contains(end))
            .then(|| format!("tree {} is reduced to {} rather than the single leaf {end}", i + 1, t.canonical()))
    });
    Ok(ApplyReport { is_cps: failure.is_none(), essentials, weight: seq.weight(leaves.len()), failure })
}
