use crate::error::{Error, Result};

/// Ordered description of a tensor-product register.
///
/// Each subsystem carries a unique label and a local dimension of 2 or 3.
/// The first subsystem is the most significant digit of a basis index, so
/// for dimensions (d0, d1, ...) the basis state |a, b, ...> sits at index
/// a * d1 * d2 * ... + b * d2 * ... + ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl RegisterLayout {
    pub fn new<S: Into<String>>(subsystems: Vec<(S, usize)>) -> Result<Self> {
        let mut labels = Vec::with_capacity(subsystems.len());
        let mut dims = Vec::with_capacity(subsystems.len());
        for (label, dim) in subsystems {
            let label = label.into();
            if !(2..=3).contains(&dim) {
                return Err(Error::UnsupportedDimension(dim));
            }
            if labels.contains(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            labels.push(label);
            dims.push(dim);
        }
        Ok(Self { labels, dims })
    }

    /// Register of `n` qubits with the given labels.
    pub fn qubits(labels: &[&str]) -> Result<Self> {
        Self::new(labels.iter().map(|l| (*l, 2)).collect())
    }

    /// Register of `n` qutrits with the given labels.
    pub fn qutrits(labels: &[&str]) -> Result<Self> {
        Self::new(labels.iter().map(|l| (*l, 3)).collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Product of all local dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Position of a label within the register.
    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Row-major strides, one per subsystem.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Flat index of a multi-index, one digit per subsystem.
    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.dims.len());
        let mut index = 0;
        for (digit, dim) in digits.iter().zip(&self.dims) {
            debug_assert!(digit < dim);
            index = index * dim + digit;
        }
        index
    }

    /// Digits of a flat index, one per subsystem.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            digits[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        digits
    }

    /// Concatenation of two layouts; labels must stay unique.
    pub fn joined(&self, other: &Self) -> Result<Self> {
        let mut subsystems: Vec<(String, usize)> = self
            .labels
            .iter()
            .cloned()
            .zip(self.dims.iter().copied())
            .collect();
        subsystems.extend(other.labels.iter().cloned().zip(other.dims.iter().copied()));
        Self::new(subsystems)
    }

    /// Layout restricted to the given labels, kept in register order.
    pub fn restricted(&self, keep: &[&str]) -> Result<Self> {
        for label in keep {
            self.position(label)?;
        }
        let subsystems: Vec<(String, usize)> = self
            .labels
            .iter()
            .zip(&self.dims)
            .filter(|(l, _)| keep.iter().any(|k| k == l))
            .map(|(l, d)| (l.clone(), *d))
            .collect();
        Self::new(subsystems)
    }

    /// Same dimensions under fresh labels.
    pub fn relabeled(&self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                actual: labels.len(),
            });
        }
        Self::new(labels.iter().zip(&self.dims).map(|(l, d)| (*l, *d)).collect())
    }
}
