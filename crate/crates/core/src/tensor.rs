//! Sparse rank-3 tensors holding structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Scalar;
use crate::{Error, Result};

/// Sparse tensor with three indices; absent entries are zero, stored entries
/// are nonzero and within bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseTensor3 {
    dims: [usize; 3],
    entries: BTreeMap<[usize; 3], Scalar>,
}

impl SparseTensor3 {
    pub fn new(dims: [usize; 3]) -> Self {
        SparseTensor3 {
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn set(&mut self, idx: [usize; 3], value: Scalar) -> Result<()> {
        if idx.iter().zip(&self.dims).any(|(i, d)| i >= d) {
            return Err(Error::Shape(format!(
                "tensor index {idx:?} out of bounds {:?}",
                self.dims
            )));
        }
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
        Ok(())
    }

    /// Add to an entry, dropping it if the sum cancels.
    pub fn add_to(&mut self, idx: [usize; 3], value: &Scalar) -> Result<()> {
        if value.is_zero() {
            return Ok(());
        }
        let current = self.get(idx).clone();
        self.set(idx, current + value)
    }

    pub fn get(&self, idx: [usize; 3]) -> &Scalar {
        static ZERO: std::sync::OnceLock<Scalar> = std::sync::OnceLock::new();
        self.entries
            .get(&idx)
            .unwrap_or_else(|| ZERO.get_or_init(Scalar::zero))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn from_entries(dims: [usize; 3], entries: Vec<([usize; 3], Scalar)>) -> Result<Self> {
        let mut t = SparseTensor3::new(dims);
        for (idx, v) in entries {
            t.add_to(idx, &v)?;
        }
        Ok(t)
    }
}
