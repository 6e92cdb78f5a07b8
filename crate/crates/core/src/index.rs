//! Multi-indices.
//!
//! Positions inside a tensor are stored zero-based. The textual and
//! serialized forms used by the command line tools and result files are
//! one-based, so `(1, 1, ..., 1)` names the first element. Convert at the
//! boundary with [`MultiIndex::from_one_based`] and [`MultiIndex::to_one_based`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TtError};

/// A (possibly partial) multi-index into a tensor, stored zero-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn from_zero_based(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    /// Builds an index from one-based entries; zero is rejected.
    pub fn from_one_based(entries: &[usize]) -> Result<Self> {
        entries
            .iter()
            .enumerate()
            .map(|(mode, &e)| {
                e.checked_sub(1)
                    .ok_or_else(|| TtError::InvalidArgument(format!("one-based index for mode {} is 0", mode + 1)))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&e| e + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every entry against the given mode sizes. A partial index may
    /// be shorter than `shape`.
    pub fn check_within(&self, shape: &[usize]) -> Result<()> {
        if self.0.len() > shape.len() {
            return Err(TtError::ShapeMismatch(format!(
                "index has {} entries but the tensor has {} modes",
                self.0.len(),
                shape.len()
            )));
        }
        for (mode, (&index, &size)) in self.0.iter().zip(shape).enumerate() {
            if index >= size {
                return Err(TtError::IndexOutOfRange { mode: mode + 1, index: index + 1, size });
            }
        }
        Ok(())
    }

    /// Row-major (last mode fastest) flat offset.
    pub fn flat_offset(&self, shape: &[usize]) -> usize {
        self.0.iter().zip(shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    /// Inverse of [`MultiIndex::flat_offset`].
    pub fn from_flat_offset(mut offset: usize, shape: &[usize]) -> Self {
        let mut entries = vec![0; shape.len()];
        for (slot, &n) in entries.iter_mut().zip(shape).rev() {
            *slot = offset % n;
            offset /= n;
        }
        MultiIndex(entries)
    }

    pub fn reversed(&self) -> Self {
        MultiIndex(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }
}

/// Displays the one-based form, e.g. `(1, 3, 2)`.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, ")")
    }
}
