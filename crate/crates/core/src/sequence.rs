//! Validated degree sequences and the derived structures the testers consume.
//!
//! Positions are reported 1-based throughout the crate (position `i` is the
//! `i`-th largest degree), while storage is the usual 0-based `Vec`.

use std::fmt;

use thiserror::Error;

/// Reasons a raw integer list is not a regular (bounded, non-increasing) sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("a degree sequence needs at least one element")]
    Empty,
    #[error("expected {expected} elements, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("sequence is not non-increasing at position {index} ({prev} < {next})")]
    NotMonotone { index: usize, prev: i64, next: i64 },
    #[error("element {value} at position {index} is outside [0, {max}]")]
    OutOfBounds { index: usize, value: i64, max: i64 },
}

/// A non-increasing sequence `b_1 >= ... >= b_n` with `0 <= b_i <= n - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    degrees: Vec<i64>,
}

impl DegreeSequence {
    /// Validates `raw` as an `n`-regular sequence with `n = raw.len()`.
    ///
    /// The input order is checked, never repaired.
    pub fn new(raw: Vec<i64>) -> Result<Self, SequenceError> {
        let n = raw.len();
        if n == 0 {
            return Err(SequenceError::Empty);
        }
        let max = n as i64 - 1;
        for (idx, pair) in raw.windows(2).enumerate() {
            if pair[0] < pair[1] {
                return Err(SequenceError::NotMonotone {
                    index: idx + 1,
                    prev: pair[0],
                    next: pair[1],
                });
            }
        }
        for (idx, &value) in raw.iter().enumerate() {
            if value < 0 || value > max {
                return Err(SequenceError::OutOfBounds {
                    index: idx + 1,
                    value,
                    max,
                });
            }
        }
        Ok(Self { degrees: raw })
    }

    /// Like [`DegreeSequence::new`] but also checks the declared vertex count.
    pub fn with_len(raw: Vec<i64>, n: usize) -> Result<Self, SequenceError> {
        if raw.len() != n {
            return Err(SequenceError::LengthMismatch {
                expected: n,
                actual: raw.len(),
            });
        }
        Self::new(raw)
    }

    /// Caller guarantees the invariants; used by the generators which keep
    /// them by construction.
    pub(crate) fn from_trusted(degrees: Vec<i64>) -> Self {
        debug_assert!(Self::new(degrees.clone()).is_ok());
        Self { degrees }
    }

    pub(crate) fn degrees_mut(&mut self) -> &mut [i64] {
        &mut self.degrees
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    /// Always false: sequences have at least one element.
    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.degrees
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.degrees
    }

    /// The 1-based element `b_i`.
    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i - 1]
    }

    /// The largest element `b_1`.
    pub fn max_degree(&self) -> i64 {
        self.degrees[0]
    }

    pub fn sum(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// Number of positive elements (the length of the zerofree prefix).
    pub fn positive_count(&self) -> usize {
        self.degrees.partition_point(|&d| d > 0)
    }

    pub fn is_zerofree(&self) -> bool {
        self.degrees[self.len() - 1] > 0
    }

    /// Number of distinct values (the rainbow number).
    pub fn distinct_values(&self) -> usize {
        1 + self.degrees.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn prefix_profile(&self) -> PrefixProfile {
        PrefixProfile::of(self)
    }

    pub fn weight_points(&self) -> WeightVector {
        WeightVector::of(self)
    }

    pub fn checkpoints(&self) -> CheckpointSet {
        CheckpointSet::of(self)
    }

    /// Drops trailing zeros. Isolated vertices do not affect graphicality, so
    /// the result is graphical exactly when `self` is. The all-zero sequence
    /// maps to `(0)` rather than to an empty sequence.
    ///
    /// At least `b_1 + 1` elements are kept so the result stays a valid
    /// sequence; this only matters when `b_1` exceeds the number of other
    /// positive elements, which already rules out graphicality.
    pub fn strip_zeros(&self) -> DegreeSequence {
        let keep = self.positive_count().max(self.max_degree() as usize + 1);
        Self {
            degrees: self.degrees[..keep].to_vec(),
        }
    }
}

impl fmt::Debug for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DegreeSequence{:?}", self.degrees)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl TryFrom<Vec<i64>> for DegreeSequence {
    type Error = SequenceError;

    fn try_from(raw: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(raw)
    }
}

impl AsRef<[i64]> for DegreeSequence {
    fn as_ref(&self) -> &[i64] {
        &self.degrees
    }
}

/// Prefix sums `H_0 = 0, H_i = b_1 + ... + b_i`. Tail sums are derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixProfile {
    sums: Vec<i64>,
}

impl PrefixProfile {
    pub fn of(seq: &DegreeSequence) -> Self {
        let mut sums = Vec::with_capacity(seq.len() + 1);
        sums.push(0);
        let mut acc = 0;
        for &d in seq.as_slice() {
            acc += d;
            sums.push(acc);
        }
        Self { sums }
    }

    pub(crate) fn sums_mut(&mut self) -> &mut [i64] {
        &mut self.sums
    }

    /// Length `n` of the owning sequence.
    pub fn len(&self) -> usize {
        self.sums.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `H_i` for `0 <= i <= n`.
    #[inline]
    pub fn head(&self, i: usize) -> i64 {
        self.sums[i]
    }

    /// `T_i = H_n - H_i`, the sum of the last `n - i` elements.
    #[inline]
    pub fn tail(&self, i: usize) -> i64 {
        self.total() - self.sums[i]
    }

    /// `H_n`.
    #[inline]
    pub fn total(&self) -> i64 {
        self.sums[self.sums.len() - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.sums
    }
}

/// Weight points `w_i = max { k : b_k >= i }` for `1 <= i <= n - 1`, zero
/// when no element reaches `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    // slot 0 unused so that w[i] reads naturally
    w: Vec<usize>,
}

impl WeightVector {
    /// One left-to-right pass with the sentinel `b_0 = n - 1`.
    pub fn of(seq: &DegreeSequence) -> Self {
        let mut w = Vec::new();
        fill_weights(seq.as_slice(), &mut w);
        Self { w }
    }

    /// `w_i`, defined for `1 <= i <= n - 1`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.w[i]
    }

    /// Number of stored weights (`n - 1`).
    pub fn len(&self) -> usize {
        self.w.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.w.iter().skip(1).copied().collect()
    }
}

/// Writes the weights of `b` into `w[1..n]` (`w[0]` unused), reusing the buffer.
pub(crate) fn fill_weights(b: &[i64], w: &mut Vec<usize>) {
    let n = b.len();
    w.clear();
    w.resize(n.max(1), 0);
    let mut prev = n as i64 - 1;
    for (idx, &cur) in b.iter().enumerate() {
        let i = idx + 1;
        if cur < prev {
            // every value in (cur, prev] was last reached at position i - 1
            for j in (cur + 1..=prev).rev() {
                w[j as usize] = i - 1;
            }
            if cur > 0 {
                w[cur as usize] = i;
            }
        }
        prev = cur;
    }
    for j in (1..=b[n - 1]).rev() {
        w[j as usize] = n;
    }
}

/// Checking points: positions `i` with `b_i > b_{i+1}`, plus `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointSet {
    indices: Vec<usize>,
}

impl CheckpointSet {
    pub fn of(seq: &DegreeSequence) -> Self {
        let b = seq.as_slice();
        let mut indices: Vec<usize> = b
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(idx, _)| idx + 1)
            .collect();
        indices.push(b.len());
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Number of checking points, equal to the number of distinct values.
    pub fn count(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}
