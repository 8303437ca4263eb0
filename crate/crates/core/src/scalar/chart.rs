use std::sync::Arc;

use crate::error::{Error, Result};

/// A coordinate chart of R^n: an ordered list of distinct coordinate names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Arc<Chart>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) || name == "exp" {
                return Err(Error::InvalidChart(format!("`{name}` is not a valid coordinate name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{name}`")));
            }
        }
        Ok(Arc::new(Chart { names }))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim: self.dim() })
        }
    }

    /// The chart with one more coordinate appended at the end.
    pub fn extended(&self, name: &str) -> Result<Arc<Chart>> {
        if self.index_of(name).is_some() {
            return Err(Error::NameClash(name.to_string()));
        }
        Chart::new(self.names.iter().cloned().chain(std::iter::once(name.to_string())))
    }

    /// The chart with coordinate `index` removed.
    pub fn without(&self, index: usize) -> Result<Arc<Chart>> {
        self.check_index(index)?;
        let names = self
            .names
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, n)| n.clone());
        Chart::new(names)
    }

    /// A coordinate name not yet used by this chart, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|cand| self.index_of(cand).is_none())
            .expect("unbounded search")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Shorthand for tests and examples: `chart(&["x", "y"])`.
pub fn chart(names: &[&str]) -> Arc<Chart> {
    Chart::new(names.iter().copied()).expect("valid chart")
}
