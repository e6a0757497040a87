use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A leaf label. Cheap to clone; ordered lexicographically by its text.
///
/// Labels are restricted to `[A-Za-z0-9_.|-]+`, which keeps them free of the
/// Newick metacharacters `( ) , ; : #` and of whitespace.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaxonLabel(Arc<str>);

impl TaxonLabel {
    pub fn new(name: &str) -> Result<Self> {
        if name.is_empty() || !name.chars().all(is_label_char) {
            return Err(Error::InvalidLabel(name.to_string()));
        }
        Ok(TaxonLabel(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '|' | '-')
}

impl fmt::Display for TaxonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for TaxonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl std::str::FromStr for TaxonLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TaxonLabel::new(s)
    }
}

impl AsRef<str> for TaxonLabel {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Convenience for tests and examples: builds a label, panicking on invalid text.
pub fn taxon(name: &str) -> TaxonLabel {
    TaxonLabel::new(name).expect("valid taxon label")
}
