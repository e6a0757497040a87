//! Shortcut sequences and the normal property.

use super::{CherryPick, PickSequence};
use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use std::collections::{BTreeMap, HashSet};

/// Positions `i_1 < ... < i_m` of the pairs verifying a shortcut sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutWitness {
    pub indices: Vec<usize>,
}

/// A substring `σ[i, j]` that is a shortcut sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NViolation {
    pub i: usize,
    pub j: usize,
    /// Absolute positions in the sequence.
    pub witness: ShortcutWitness,
}

/// Maps labels to small integers so that label sets fit in a `u128`.
pub(crate) struct Interner {
    ids: BTreeMap<TaxonLabel, u8>,
}

impl Interner {
    pub(crate) fn new<'a>(labels: impl IntoIterator<Item = &'a TaxonLabel>) -> Result<Self> {
        let mut ids = BTreeMap::new();
        for l in labels {
            let next = ids.len();
            if !ids.contains_key(l) {
                if next >= 128 {
                    return Err(Error::TooManyTaxa(next + 1));
                }
                ids.insert(l.clone(), next as u8);
            }
        }
        Ok(Interner { ids })
    }

    pub(crate) fn id(&self, l: &TaxonLabel) -> u8 {
        self.ids[l]
    }
}

fn intern(pairs: &[CherryPick]) -> Result<Vec<(u8, u8)>> {
    if pairs.iter().any(CherryPick::is_end) {
        return Err(Error::MalformedSequence("a terminal pair cannot be part of a shortcut sequence".into()));
    }
    let it = Interner::new(pairs.iter().flat_map(|p| [&p.x, p.y.as_ref().expect("checked")]))?;
    Ok(pairs.iter().map(|p| (it.id(&p.x), it.id(p.y.as_ref().expect("checked")))).collect())
}

fn meets(a: (u8, u8), b: (u8, u8)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Exact witness search on interned pairs; returns 0-based indices.
pub(crate) fn witness_ids(pairs: &[(u8, u8)]) -> Option<Vec<usize>> {
    let s = pairs.len();
    if s < 2 {
        return None;
    }
    let (first, last) = (pairs[0], pairs[s - 1]);
    if first.0 != last.0 {
        return None;
    }
    if first == last {
        return Some(vec![0, s - 1]);
    }
    let x0 = first.0;
    let mut dead: HashSet<(usize, u128)> = HashSet::new();
    let mut path = vec![0];
    fn dfs(
        pairs: &[(u8, u8)],
        x0: u8,
        at: usize,
        used: u128,
        path: &mut Vec<usize>,
        dead: &mut HashSet<(usize, u128)>,
    ) -> bool {
        let s = pairs.len();
        if at != 0 && meets(pairs[at], pairs[s - 1]) {
            path.push(s - 1);
            return true;
        }
        if dead.contains(&(at, used)) {
            return false;
        }
        for k in at + 1..s - 1 {
            let (x, y) = pairs[k];
            if x == x0 || y == x0 || used & (1u128 << x) != 0 || !meets(pairs[at], pairs[k]) {
                continue;
            }
            path.push(k);
            if dfs(pairs, x0, k, used | (1u128 << x), path, dead) {
                return true;
            }
            path.pop();
        }
        dead.insert((at, used));
        false
    }
    dfs(pairs, x0, 0, 0, &mut path, &mut dead).then_some(path)
}

/// Whether the pairs form a shortcut sequence, with a verifying subsequence
/// (1-based positions within `pairs`).
pub fn is_shortcut_sequence(pairs: &[CherryPick]) -> Result<Option<ShortcutWitness>> {
    let ids = intern(pairs)?;
    Ok(witness_ids(&ids).map(|w| ShortcutWitness { indices: w.into_iter().map(|i| i + 1).collect() }))
}

/// First substring `σ[i, j]` (in lexicographic order of `(i, j)`, the
/// terminal pair excluded) that is a shortcut sequence; `None` when the
/// sequence has the normal property.
pub fn check_n(seq: &PickSequence) -> Result<Option<NViolation>> {
    let ids = intern(seq.body())?;
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if ids[i].0 != ids[j].0 {
                continue;
            }
            if let Some(w) = witness_ids(&ids[i..=j]) {
                return Ok(Some(NViolation {
                    i: i + 1,
                    j: j + 1,
                    witness: ShortcutWitness { indices: w.into_iter().map(|k| k + i + 1).collect() },
                }));
            }
        }
    }
    Ok(None)
}

/// Whether appending made the last pair close a shortcut sequence with some
/// earlier pair.
pub(crate) fn violation_ending_at_last(pairs: &[(u8, u8)]) -> bool {
    let j = pairs.len() - 1;
    (0..j).any(|i| pairs[i].0 == pairs[j].0 && witness_ids(&pairs[i..=j]).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pairs: &[(&str, &str)], end: &str) -> PickSequence {
        PickSequence::from_names(pairs, end).unwrap()
    }

    #[test]
    fn caterpillar_sequences() {
        let sigma = seq(&[("l1", "l2"), ("l2", "l3"), ("l3", "l4"), ("l1", "l4")], "l4");
        let w = is_shortcut_sequence(sigma.body()).unwrap().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3, 4]);
        let v = check_n(&sigma).unwrap().unwrap();
        assert_eq!((v.i, v.j), (1, 4));
        assert_eq!(v.witness.indices, vec![1, 2, 3, 4]);

        let sigma2 = seq(&[("l2", "l1"), ("l2", "l3"), ("l3", "l4"), ("l3", "l1"), ("l1", "l4")], "l4");
        assert_eq!(check_n(&sigma2).unwrap(), None);
    }

    #[test]
    fn identical_pairs() {
        let s = seq(&[("a", "b"), ("a", "b")], "b");
        assert_eq!(is_shortcut_sequence(s.body()).unwrap().unwrap().indices, vec![1, 2]);
        let s = seq(&[("a", "b"), ("c", "d"), ("a", "b")], "b");
        assert_eq!(is_shortcut_sequence(s.body()).unwrap().unwrap().indices, vec![1, 3]);
    }

    #[test]
    fn distinct_first_coordinates_never_violate() {
        let s = seq(&[("a", "b"), ("b", "c"), ("c", "d")], "d");
        assert_eq!(check_n(&s).unwrap(), None);
        assert_eq!(is_shortcut_sequence(s.body()).unwrap(), None);
    }

    #[test]
    fn intermediate_properties() {
        // the intermediate pair contains x0
        let s = seq(&[("a", "b"), ("b", "a"), ("a", "c")], "c");
        assert_eq!(is_shortcut_sequence(s.body()).unwrap(), None);
        // repeated intermediate first coordinates are skipped but another chain exists
        let s = seq(&[("a", "b"), ("b", "c"), ("b", "d"), ("c", "e"), ("a", "e")], "e");
        assert_eq!(is_shortcut_sequence(s.body()).unwrap().unwrap().indices, vec![1, 2, 4, 5]);
        // chain broken
        let s = seq(&[("a", "b"), ("c", "d"), ("a", "d")], "d");
        assert_eq!(is_shortcut_sequence(s.body()).unwrap(), None);
    }

    #[test]
    fn terminal_pair_rejected() {
        let s = seq(&[("a", "b")], "b");
        assert!(is_shortcut_sequence(s.pairs()).is_err());
    }
}
