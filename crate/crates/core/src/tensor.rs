//! Dense multi-index arrays with per-slot variance bookkeeping.
//!
//! Storage is row-major over slots, leftmost slot slowest. Every component
//! tensor in the crate (metric blocks, connection coefficients, curvature,
//! lifted fields) lives in a [`MultiIndexArray`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    Upper,
    Lower,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variance::Upper => f.write_str("upper"),
            Variance::Lower => f.write_str("lower"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("data length {len} does not match dims {dims:?}")]
    LengthMismatch { len: usize, dims: Vec<usize> },
    #[error("{dims} dims supplied for {variances} variance markers")]
    RankMismatch { dims: usize, variances: usize },
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("dimension mismatch on slots: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variance mismatch: contraction needs one upper and one lower slot, got {left} and {right}")]
    VarianceMismatch { left: Variance, right: Variance },
    #[error("slot pair ({i}, {j}) differs in dimension or variance")]
    SlotMismatch { i: usize, j: usize },
    #[error("zero-sized slot")]
    ZeroDim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiIndexArray {
    dims: Vec<usize>,
    variance: Vec<Variance>,
    data: Vec<f64>,
}

impl MultiIndexArray {
    pub fn new(
        dims: Vec<usize>,
        variance: Vec<Variance>,
        data: Vec<f64>,
    ) -> Result<Self, TensorError> {
        if dims.len() != variance.len() {
            return Err(TensorError::RankMismatch {
                dims: dims.len(),
                variances: variance.len(),
            });
        }
        if dims.contains(&0) {
            return Err(TensorError::ZeroDim);
        }
        let expected: usize = dims.iter().product();
        if data.len() != expected {
            return Err(TensorError::LengthMismatch {
                len: data.len(),
                dims,
            });
        }
        Ok(Self {
            dims,
            variance,
            data,
        })
    }

    pub fn zeros(dims: Vec<usize>, variance: Vec<Variance>) -> Self {
        assert_eq!(dims.len(), variance.len(), "one variance marker per slot");
        let len = dims.iter().product();
        Self {
            dims,
            variance,
            data: vec![0.0; len],
        }
    }

    /// Rank-0 array holding a single value.
    pub fn scalar(value: f64) -> Self {
        Self {
            dims: Vec::new(),
            variance: Vec::new(),
            data: vec![value],
        }
    }

    pub fn vector(variance: Variance, data: Vec<f64>) -> Self {
        Self {
            dims: vec![data.len()],
            variance: vec![variance],
            data,
        }
    }

    /// Square matrix from row-major data; `n*n` must equal `data.len()`.
    pub fn matrix(n: usize, variance: [Variance; 2], data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        Self {
            dims: vec![n, n],
            variance: variance.to_vec(),
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(vec![n, n], vec![Variance::Upper, Variance::Lower]);
        for i in 0..n {
            out.data[i * n + i] = 1.0;
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for s in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.dims[s + 1];
        }
        strides
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        index
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| {
                debug_assert!(i < d);
                acc * d + i
            })
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let at = self.offset(index);
        self.data[at] = value;
    }

    fn unravel(&self, mut flat: usize, out: &mut [usize]) {
        for s in (0..self.dims.len()).rev() {
            out[s] = flat % self.dims[s];
            flat /= self.dims[s];
        }
    }

    /// Largest absolute component; NaN if any component is NaN.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| nan_max(m, v.abs()))
    }

    /// Largest absolute componentwise difference. Shapes must agree.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dims, other.dims, "shape mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| nan_max(m, (a - b).abs()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= factor);
        out
    }

    /// `self + factor * other`, shapes and variances must agree.
    pub fn axpy(&self, factor: f64, other: &Self) -> Result<Self, TensorError> {
        if self.dims != other.dims || self.variance != other.variance {
            return Err(TensorError::DimensionMismatch {
                left: self.data.len(),
                right: other.data.len(),
            });
        }
        let mut out = self.clone();
        for (o, v) in out.data.iter_mut().zip(&other.data) {
            *o += factor * v;
        }
        Ok(out)
    }

    /// Swap two slots, permuting the data accordingly.
    pub fn transpose(&self, i: usize, j: usize) -> Result<Self, TensorError> {
        let rank = self.rank();
        for s in [i, j] {
            if s >= rank {
                return Err(TensorError::SlotOutOfRange { slot: s, rank });
            }
        }
        let mut dims = self.dims.clone();
        let mut variance = self.variance.clone();
        dims.swap(i, j);
        variance.swap(i, j);
        let mut out = Self::zeros(dims, variance);
        let mut idx = vec![0; rank];
        for flat in 0..self.data.len() {
            self.unravel(flat, &mut idx);
            idx.swap(i, j);
            let at = out.offset(&idx);
            out.data[at] = self.data[flat];
        }
        Ok(out)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), TensorError> {
        let rank = self.rank();
        for s in [i, j] {
            if s >= rank {
                return Err(TensorError::SlotOutOfRange { slot: s, rank });
            }
        }
        if i == j || self.dims[i] != self.dims[j] || self.variance[i] != self.variance[j] {
            return Err(TensorError::SlotMismatch { i, j });
        }
        Ok(())
    }

    fn pair_combine(
        &self,
        i: usize,
        j: usize,
        sign: f64,
        scaled: bool,
    ) -> Result<Self, TensorError> {
        self.check_pair(i, j)?;
        let swapped = self.transpose(i, j)?;
        let factor = if scaled { 0.5 } else { 1.0 };
        let mut out = self.clone();
        for (o, t) in out.data.iter_mut().zip(&swapped.data) {
            *o = factor * (*o + sign * t);
        }
        Ok(out)
    }

    /// `A + Aᵀ` over slots `i`, `j`, halved when `scaled`.
    pub fn sym_pair(&self, i: usize, j: usize, scaled: bool) -> Result<Self, TensorError> {
        self.pair_combine(i, j, 1.0, scaled)
    }

    /// `A − Aᵀ` over slots `i`, `j`, halved when `scaled`.
    pub fn antisym_pair(&self, i: usize, j: usize, scaled: bool) -> Result<Self, TensorError> {
        self.pair_combine(i, j, -1.0, scaled)
    }

    /// Contract slot `slot_a` of `self` with slot `slot_b` of `other`.
    ///
    /// The result carries the remaining slots of `self` followed by the
    /// remaining slots of `other`, in their original order.
    pub fn contract(
        &self,
        other: &Self,
        slot_a: usize,
        slot_b: usize,
    ) -> Result<Self, TensorError> {
        if slot_a >= self.rank() {
            return Err(TensorError::SlotOutOfRange {
                slot: slot_a,
                rank: self.rank(),
            });
        }
        if slot_b >= other.rank() {
            return Err(TensorError::SlotOutOfRange {
                slot: slot_b,
                rank: other.rank(),
            });
        }
        let (da, db) = (self.dims[slot_a], other.dims[slot_b]);
        if da != db {
            return Err(TensorError::DimensionMismatch { left: da, right: db });
        }
        let (va, vb) = (self.variance[slot_a], other.variance[slot_b]);
        if va == vb {
            return Err(TensorError::VarianceMismatch { left: va, right: vb });
        }

        let keep_a: Vec<usize> = (0..self.rank()).filter(|&s| s != slot_a).collect();
        let keep_b: Vec<usize> = (0..other.rank()).filter(|&s| s != slot_b).collect();
        let dims: Vec<usize> = keep_a
            .iter()
            .map(|&s| self.dims[s])
            .chain(keep_b.iter().map(|&s| other.dims[s]))
            .collect();
        let variance: Vec<Variance> = keep_a
            .iter()
            .map(|&s| self.variance[s])
            .chain(keep_b.iter().map(|&s| other.variance[s]))
            .collect();

        let mut out = Self::zeros(dims, variance);
        let stride_a = self.strides();
        let stride_b = other.strides();
        let mut idx = vec![0; out.rank()];
        for flat in 0..out.data.len() {
            out.unravel(flat, &mut idx);
            let base_a: usize = keep_a
                .iter()
                .zip(&idx[..keep_a.len()])
                .map(|(&s, &i)| i * stride_a[s])
                .sum();
            let base_b: usize = keep_b
                .iter()
                .zip(&idx[keep_a.len()..])
                .map(|(&s, &i)| i * stride_b[s])
                .sum();
            let mut acc = 0.0;
            for k in 0..da {
                acc += self.data[base_a + k * stride_a[slot_a]]
                    * other.data[base_b + k * stride_b[slot_b]];
            }
            out.data[flat] = acc;
        }
        Ok(out)
    }
}

/// `max` that lets NaN win, so a bad component cannot hide behind a good one.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
