//! Linear one-sided filters. A rejection proves a sequence non-graphical; a
//! pass only means the filter could not decide.

use std::fmt;

use crate::sequence::{DegreeSequence, PrefixProfile};

/// Which filter produced a rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterId {
    Parity,
    Binomial,
    Positive,
    Headsplitter,
}

impl FilterId {
    pub fn name(self) -> &'static str {
        match self {
            FilterId::Parity => "parity",
            FilterId::Binomial => "binomial",
            FilterId::Positive => "positive",
            FilterId::Headsplitter => "headsplitter",
        }
    }
}

impl fmt::Display for FilterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a filter. `Rejected` always carries its attribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterVerdict {
    Passed,
    Rejected {
        by: FilterId,
        /// 1-based position at which the violated inequality was found.
        index: Option<usize>,
    },
}

impl FilterVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FilterVerdict::Passed)
    }

    pub fn is_rejected(&self) -> bool {
        !self.passed()
    }

    pub fn rejected_by(&self) -> Option<FilterId> {
        match self {
            FilterVerdict::Passed => None,
            FilterVerdict::Rejected { by, .. } => Some(*by),
        }
    }

    pub fn witness_index(&self) -> Option<usize> {
        match self {
            FilterVerdict::Passed => None,
            FilterVerdict::Rejected { index, .. } => *index,
        }
    }
}

/// How the head-splitting bound is assembled from its five edge-class
/// estimates.
///
/// With `h = floor(i/2)`, the head `b_1..b_i` is split into a beginning of
/// `h` vertices and an end of `i - h` vertices, and
///
/// * `X1 = min(H_h, T_i, h(n-i))` bounds beginning-to-tail edges,
/// * `X2 = min(H_i - H_h, T_i, (i-h)(n-i))` bounds end-to-tail edges,
/// * `X3 = min(h(i-h), H_i)` bounds edges between the two parts,
/// * `X4 = C(h,2)`, `X5 = C(i-h,2)` bound edges inside each part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HeadsplitVariant {
    /// Rejects iff `H_i > min(X1 + X2, T_i) + 2 X3 + 2 X4 + 2 X5`.
    /// Every edge between the halves adds two to the head's degree sum, and
    /// the head-to-tail edges together cannot exceed the tail sum.
    #[default]
    Sound,
    /// `Sound` with the additional caps `X4 <= H_h` and `X5 <= H_i - H_h`.
    SoundTight,
    /// The literal reading `H_i > X1 + X2 + X3 + 2 X4 + 2 X5` or
    /// `X1 + X2 > T_i`. Not sound: it rejects graphical sequences such as
    /// `(2,1,1)` and `(2,2,2)`. Kept for comparison only.
    AsPrinted,
}

/// Settings for [`composite_test_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CompositeOptions {
    pub headsplit: HeadsplitVariant,
    /// Enables the `b_1 <= p - 1` check (p = number of positive elements)
    /// between the binomial and head-splitting filters.
    pub positive_check: bool,
}

/// Rejects iff `H_n` is odd.
pub fn parity_test(_seq: &DegreeSequence, profile: &PrefixProfile) -> FilterVerdict {
    parity_of(profile)
}

fn parity_of(profile: &PrefixProfile) -> FilterVerdict {
    if profile.total() % 2 != 0 {
        FilterVerdict::Rejected {
            by: FilterId::Parity,
            index: None,
        }
    } else {
        FilterVerdict::Passed
    }
}

/// Rejects at the first `i < n` with `H_i > i(i-1) + T_i`.
pub fn binomial_test(_seq: &DegreeSequence, profile: &PrefixProfile) -> FilterVerdict {
    binomial_of(profile)
}

pub(crate) fn binomial_of(profile: &PrefixProfile) -> FilterVerdict {
    let n = profile.len();
    let total = profile.total();
    for i in 1..n {
        let head = profile.head(i);
        let ii = i as i64;
        if head > ii * (ii - 1) + (total - head) {
            return FilterVerdict::Rejected {
                by: FilterId::Binomial,
                index: Some(i),
            };
        }
    }
    FilterVerdict::Passed
}

/// Rejects when `b_1` exceeds the number of other positive elements.
pub fn positive_test(seq: &DegreeSequence) -> FilterVerdict {
    let p = seq.positive_count() as i64;
    if seq.max_degree() > 0 && seq.max_degree() > p - 1 {
        FilterVerdict::Rejected {
            by: FilterId::Positive,
            index: Some(1),
        }
    } else {
        FilterVerdict::Passed
    }
}

/// Head-splitting filter with the default [`HeadsplitVariant::Sound`] bound.
pub fn headsplitter_test(seq: &DegreeSequence, profile: &PrefixProfile) -> FilterVerdict {
    headsplitter_test_with(seq, profile, HeadsplitVariant::default())
}

pub fn headsplitter_test_with(
    _seq: &DegreeSequence,
    profile: &PrefixProfile,
    variant: HeadsplitVariant,
) -> FilterVerdict {
    headsplitter_of(profile, variant)
}

#[inline]
fn pairs(k: i64) -> i64 {
    k * (k - 1) / 2
}

pub(crate) fn headsplitter_of(profile: &PrefixProfile, variant: HeadsplitVariant) -> FilterVerdict {
    let n = profile.len();
    let nn = n as i64;
    for i in 2..n {
        let ii = i as i64;
        let h = i / 2;
        let hh = h as i64;
        let head = profile.head(i);
        let begin = profile.head(h);
        let tail = profile.tail(i);
        let x1 = begin.min(tail).min(hh * (nn - ii));
        let x2 = (head - begin).min(tail).min((ii - hh) * (nn - ii));
        let x3 = (hh * (ii - hh)).min(head);
        let mut x4 = pairs(hh);
        let mut x5 = pairs(ii - hh);
        let violated = match variant {
            HeadsplitVariant::Sound => head > (x1 + x2).min(tail) + 2 * (x3 + x4 + x5),
            HeadsplitVariant::SoundTight => {
                x4 = x4.min(begin);
                x5 = x5.min(head - begin);
                head > (x1 + x2).min(tail) + 2 * (x3 + x4 + x5)
            }
            HeadsplitVariant::AsPrinted => head > x1 + x2 + x3 + 2 * x4 + 2 * x5 || x1 + x2 > tail,
        };
        if violated {
            return FilterVerdict::Rejected {
                by: FilterId::Headsplitter,
                index: Some(i),
            };
        }
    }
    FilterVerdict::Passed
}

/// Parity, then binomial, then head-splitting, sharing one prefix profile.
pub fn composite_test(seq: &DegreeSequence) -> FilterVerdict {
    composite_test_with(seq, CompositeOptions::default())
}

pub fn composite_test_with(seq: &DegreeSequence, options: CompositeOptions) -> FilterVerdict {
    let profile = seq.prefix_profile();
    composite_of(seq, &profile, options)
}

pub(crate) fn composite_of(
    seq: &DegreeSequence,
    profile: &PrefixProfile,
    options: CompositeOptions,
) -> FilterVerdict {
    let verdict = parity_of(profile);
    if verdict.is_rejected() {
        return verdict;
    }
    let verdict = binomial_of(profile);
    if verdict.is_rejected() {
        return verdict;
    }
    if options.positive_check {
        let verdict = positive_test(seq);
        if verdict.is_rejected() {
            return verdict;
        }
    }
    headsplitter_of(profile, options.headsplit)
}
