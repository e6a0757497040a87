//! Cherry-picking sequences: the sequence calculus for tree-child and normal
//! networks.
//!
//! A sequence is a list of ordered pairs `(x, y)` ending with `(x, -)`.
//! Positions reported by this module are 1-based.

mod apply;
mod build;
mod construct;
mod search;
mod shortcut;

pub use apply::{apply_sequence, ApplyReport};
pub use build::{sequence_to_network, verify_network_sequence_properties, PropertyCheck, PropertyReport};
pub use construct::construct_sequence;
pub use search::{min_sequence, SearchMode, SearchOutcome};
pub use shortcut::{check_n, is_shortcut_sequence, NViolation, ShortcutWitness};

use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use std::fmt;

/// One ordered pair; `y = None` is the terminal `(x, -)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CherryPick {
    pub x: TaxonLabel,
    pub y: Option<TaxonLabel>,
}

impl CherryPick {
    pub fn pair(x: &TaxonLabel, y: &TaxonLabel) -> Self {
        CherryPick { x: x.clone(), y: Some(y.clone()) }
    }

    pub fn end(x: &TaxonLabel) -> Self {
        CherryPick { x: x.clone(), y: None }
    }

    pub fn is_end(&self) -> bool {
        self.y.is_none()
    }
}

impl fmt::Display for CherryPick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.y {
            Some(y) => write!(f, "{} {}", self.x, y),
            None => write!(f, "{} -", self.x),
        }
    }
}

/// A validated sequence: non-empty, exactly one terminal pair and it is last,
/// and `x != y` in every other pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PickSequence {
    pairs: Vec<CherryPick>,
}

impl PickSequence {
    pub fn new(pairs: Vec<CherryPick>) -> Result<Self> {
        let Some(last) = pairs.last() else {
            return Err(Error::MalformedSequence("empty sequence".into()));
        };
        if !last.is_end() {
            return Err(Error::MalformedSequence("the last pair must be (x, -)".into()));
        }
        for (i, p) in pairs[..pairs.len() - 1].iter().enumerate() {
            match &p.y {
                None => return Err(Error::MalformedSequence(format!("pair {} is terminal but not last", i + 1))),
                Some(y) if *y == p.x => {
                    return Err(Error::MalformedSequence(format!("pair {} has equal coordinates", i + 1)))
                }
                _ => {}
            }
        }
        Ok(PickSequence { pairs })
    }

    /// Builds a sequence from `(x, y)` name pairs and the terminal label.
    pub fn from_names(pairs: &[(&str, &str)], end: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(pairs.len() + 1);
        for (x, y) in pairs {
            out.push(CherryPick::pair(&TaxonLabel::new(x)?, &TaxonLabel::new(y)?));
        }
        out.push(CherryPick::end(&TaxonLabel::new(end)?));
        PickSequence::new(out)
    }

    /// Parses the line format `x y`, with `x -` on the final line; blank
    /// lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [x, y] = fields.as_slice() else {
                return Err(Error::MalformedSequence(format!("line {}: expected two fields", n + 1)));
            };
            let bad = |e: Error| Error::MalformedSequence(format!("line {}: {e}", n + 1));
            let x = TaxonLabel::new(x).map_err(bad)?;
            let y = if *y == "-" { None } else { Some(TaxonLabel::new(y).map_err(bad)?) };
            pairs.push(CherryPick { x, y });
        }
        PickSequence::new(pairs)
    }

    pub fn pairs(&self) -> &[CherryPick] {
        &self.pairs
    }

    /// The pairs before the terminal one.
    pub fn body(&self) -> &[CherryPick] {
        &self.pairs[..self.pairs.len() - 1]
    }

    pub fn end_label(&self) -> &TaxonLabel {
        &self.pairs[self.pairs.len() - 1].x
    }

    /// Number of pairs including the terminal one.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `s + 1 - |X|`, where `s` is the number of non-terminal pairs.
    pub fn weight(&self, leaf_count: usize) -> i64 {
        self.pairs.len() as i64 - leaf_count as i64
    }

    /// The tree-child property: no first coordinate reappears as a later
    /// second coordinate.
    pub fn check_tc(&self) -> bool {
        check_tc_pairs(self.body())
    }

    pub fn to_text(&self) -> String {
        self.pairs.iter().map(|p| format!("{p}\n")).collect()
    }
}

impl fmt::Display for PickSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|p| match &p.y {
                Some(y) => format!("({},{})", p.x, y),
                None => format!("({},-)", p.x),
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

pub(crate) fn check_tc_pairs(body: &[CherryPick]) -> bool {
    let mut later_ys = std::collections::HashSet::new();
    for p in body.iter().rev() {
        if later_ys.contains(&p.x) {
            return false;
        }
        if let Some(y) = &p.y {
            later_ys.insert(y.clone());
        }
    }
    true
}

/// The tree-child property of a sequence.
pub fn check_tc(seq: &PickSequence) -> bool {
    seq.check_tc()
}
