//! Exact search for minimum-weight cherry-picking sequences.
//!
//! Iterative deepening on the number of pairs. Only essential pairs are
//! generated (ordered pairs forming a cherry in at least one current tree);
//! dropping a non-essential pair never breaks either property and lowers the
//! weight, so this loses nothing. Failed states are memoised together with
//! the budget they failed under.

use super::shortcut::violation_ending_at_last;
use super::{apply::common_leaf_set, CherryPick, PickSequence};
use crate::error::Result;
use crate::label::TaxonLabel;
use crate::tree::PhyloTree;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Sequences with the tree-child and normal properties.
    Normal,
    /// Sequences with the tree-child property.
    TreeChild,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { sequence: PickSequence, weight: usize },
    /// Every possible weight was searched; no sequence exists.
    NoSequence,
    /// No sequence of weight up to the budget exists; heavier ones were not
    /// searched.
    BudgetExhausted { budget: usize },
}

/// A tree as its set of clusters with at least two leaves, over interned leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Clusters {
    leaves: u128,
    clusters: Vec<u128>,
}

fn bit(x: u8) -> u128 {
    1u128 << x
}

impl Clusters {
    fn from_tree(t: &PhyloTree, ids: &HashMap<TaxonLabel, u8>) -> Self {
        let mask = |c: &[TaxonLabel]| c.iter().fold(0u128, |m, l| m | bit(ids[l]));
        let mut clusters: Vec<u128> = t.clusters().iter().filter(|c| c.len() >= 2).map(|c| mask(c)).collect();
        clusters.sort_unstable();
        clusters.dedup();
        let leaves = t.leaf_labels().fold(0u128, |m, l| m | bit(ids[l]));
        Clusters { leaves, clusters }
    }

    fn parent(&self, x: u8) -> Option<u128> {
        self.clusters.iter().copied().filter(|c| c & bit(x) != 0).min_by_key(|c| c.count_ones())
    }

    fn is_cherry(&self, x: u8, y: u8) -> bool {
        self.leaves & bit(x) != 0 && self.leaves & bit(y) != 0 && self.parent(x) == self.parent(y)
    }

    fn delete(&self, x: u8) -> Clusters {
        let keep = !bit(x);
        let mut clusters: Vec<u128> =
            self.clusters.iter().map(|c| c & keep).filter(|c| c.count_ones() >= 2).collect();
        clusters.sort_unstable();
        clusters.dedup();
        Clusters { leaves: self.leaves & keep, clusters }
    }

    /// Ordered pairs of sibling leaves.
    fn cherries(&self, out: &mut Vec<(u8, u8)>) {
        let mut groups: HashMap<u128, Vec<u8>> = HashMap::new();
        let mut rest = self.leaves;
        while rest != 0 {
            let x = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            if let Some(p) = self.parent(x) {
                groups.entry(p).or_default().push(x);
            }
        }
        for g in groups.values() {
            for &a in g {
                for &b in g {
                    if a != b {
                        out.push((a, b));
                    }
                }
            }
        }
    }

    /// A smallest cluster whose members are all leaf children.
    fn minimal_clusters(&self) -> impl Iterator<Item = u128> + '_ {
        self.clusters
            .iter()
            .copied()
            .filter(move |&c| !self.clusters.iter().any(|&d| d != c && d & c == d))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    trees: Vec<Clusters>,
    picked: u128,
    suffix: Vec<(u8, u8)>,
}

struct Search {
    mode: SearchMode,
    memo: HashMap<Key, usize>,
    seq: Vec<(u8, u8)>,
    end: Option<u8>,
}

impl Search {
    /// `picked` holds every label already used as a first coordinate.
    fn dfs(&mut self, trees: &[Clusters], picked: u128, remaining: usize) -> bool {
        let union = trees.iter().fold(0u128, |m, t| m | t.leaves);
        if union.count_ones() == 1 {
            self.end = Some(union.trailing_zeros() as u8);
            return true;
        }
        if union.count_ones() as usize - 1 > remaining {
            return false;
        }
        // A single-leaf tree fixes the terminal leaf; every tree must keep it.
        for t in trees {
            if t.leaves.count_ones() == 1 && trees.iter().any(|o| o.leaves & t.leaves == 0) {
                return false;
            }
            // Sibling leaves that have all been picked can never be separated.
            if t.minimal_clusters().any(|c| c & !picked == 0) {
                return false;
            }
        }
        let live = picked & union;
        let suffix = match self.mode {
            SearchMode::TreeChild => Vec::new(),
            SearchMode::Normal => {
                let from = self.seq.iter().position(|&(x, _)| union & bit(x) != 0).unwrap_or(self.seq.len());
                self.seq[from..].to_vec()
            }
        };
        let key = Key { trees: trees.to_vec(), picked: live, suffix };
        if self.memo.get(&key).is_some_and(|&r| r >= remaining) {
            return false;
        }

        let mut cands = Vec::new();
        for t in trees {
            t.cherries(&mut cands);
        }
        cands.sort_unstable();
        cands.dedup();
        for (x, y) in cands {
            if picked & bit(y) != 0 {
                continue;
            }
            self.seq.push((x, y));
            if self.mode == SearchMode::Normal && violation_ending_at_last(&self.seq) {
                self.seq.pop();
                continue;
            }
            let mut next: Vec<Clusters> =
                trees.iter().map(|t| if t.is_cherry(x, y) { t.delete(x) } else { t.clone() }).collect();
            next.sort();
            next.dedup();
            if self.dfs(&next, picked | bit(x), remaining - 1) {
                return true;
            }
            self.seq.pop();
        }
        let entry = self.memo.entry(key).or_insert(0);
        *entry = (*entry).max(remaining);
        false
    }
}

/// Finds a minimum-weight sequence of the requested kind for `trees`
/// (non-binary trees allowed), searching weights up to `budget` when given.
pub fn min_sequence(trees: &[PhyloTree], mode: SearchMode, budget: Option<usize>) -> Result<SearchOutcome> {
    let leaves = common_leaf_set(trees)?;
    let labels: Vec<TaxonLabel> = leaves.iter().cloned().collect();
    super::shortcut::Interner::new(labels.iter())?;
    let ids: HashMap<TaxonLabel, u8> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u8)).collect();
    let distinct: BTreeSet<Clusters> = trees.iter().map(|t| Clusters::from_tree(t, &ids)).collect();
    let start: Vec<Clusters> = distinct.into_iter().collect();

    let n = labels.len();
    let max_weight = (start.len() - 1) * (n - 1);
    let limit = budget.map_or(max_weight, |b| b.min(max_weight));
    let mut search = Search { mode, memo: HashMap::new(), seq: Vec::new(), end: None };
    for w in 0..=limit {
        if search.dfs(&start, 0, n - 1 + w) {
            let mut pairs: Vec<CherryPick> =
                search.seq.iter().map(|&(x, y)| CherryPick::pair(&labels[x as usize], &labels[y as usize])).collect();
            pairs.push(CherryPick::end(&labels[search.end.expect("set on success") as usize]));
            let weight = pairs.len() - n;
            return Ok(SearchOutcome::Found { sequence: PickSequence::new(pairs)?, weight });
        }
    }
    Ok(if limit < max_weight { SearchOutcome::BudgetExhausted { budget: limit } } else { SearchOutcome::NoSequence })
}
