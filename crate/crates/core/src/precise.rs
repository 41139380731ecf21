//! Exact graphicality deciders (three Havel-Hakimi and four Erdős-Gallai
//! variants) and a Havel-Hakimi realizer.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::sequence::{fill_weights, DegreeSequence, PrefixProfile};

/// The precise testers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    /// Havel-Hakimi, re-sorting the residual sequence each round.
    HhSorting,
    /// Havel-Hakimi, decrementing block tails so the residual stays sorted.
    HhShifting,
    /// Parity check followed by [`Algorithm::HhShifting`].
    HhParity,
    /// Erdős-Gallai with the quadratic tail sum.
    Eg,
    /// Erdős-Gallai restricted to `i <= r`, `r = max { s : s(s-1) < H_s }`.
    EgShortened,
    /// Erdős-Gallai at checking points only.
    EgJumping,
    /// Erdős-Gallai with weight points, linear time.
    #[default]
    EgLinear,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::HhSorting,
        Algorithm::HhShifting,
        Algorithm::HhParity,
        Algorithm::Eg,
        Algorithm::EgShortened,
        Algorithm::EgJumping,
        Algorithm::EgLinear,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Algorithm::HhSorting => "HHSo",
            Algorithm::HhShifting => "HHSh",
            Algorithm::HhParity => "HHP",
            Algorithm::Eg => "EG",
            Algorithm::EgShortened => "EGSh",
            Algorithm::EgJumping => "EGJ",
            Algorithm::EgLinear => "EGL",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown algorithm `{0}` (expected one of HHSo, HHSh, HHP, EG, EGSh, EGJ, EGL)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.short_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

/// Result of a precise test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionReport {
    pub graphical: bool,
    pub algorithm: Algorithm,
    /// Havel-Hakimi: reduction rounds started. EGJ: inequality tests at
    /// checking points. Zero for the other Erdős-Gallai variants.
    pub rounds: u64,
    /// Number of Erdős-Gallai inequalities evaluated (all EG variants), or
    /// degree decrements performed (Havel-Hakimi variants).
    pub evaluations: u64,
    /// 1-based position of the failing inequality or reduction, if any.
    pub witness_index: Option<usize>,
}

impl DecisionReport {
    fn new(algorithm: Algorithm) -> Self {
        Self {
            graphical: true,
            algorithm,
            rounds: 0,
            evaluations: 0,
            witness_index: None,
        }
    }

    fn reject(mut self, at: Option<usize>) -> Self {
        self.graphical = false;
        self.witness_index = at;
        self
    }
}

/// Reusable buffers so hot loops avoid per-call allocation.
#[derive(Debug, Default, Clone)]
pub struct Scratch {
    weights: Vec<usize>,
    work: Vec<i64>,
}

/// Dispatches to the named tester.
pub fn is_graphical(seq: &DegreeSequence, algorithm: Algorithm) -> DecisionReport {
    let profile = seq.prefix_profile();
    decide(seq, &profile, algorithm, &mut Scratch::default())
}

/// Like [`is_graphical`] with a precomputed profile and caller-owned buffers.
pub fn decide(
    seq: &DegreeSequence,
    profile: &PrefixProfile,
    algorithm: Algorithm,
    scratch: &mut Scratch,
) -> DecisionReport {
    let b = seq.as_slice();
    match algorithm {
        Algorithm::HhSorting => hh_sorting_impl(b, &mut scratch.work),
        Algorithm::HhShifting => hh_shifting_impl(b, &mut scratch.work, Algorithm::HhShifting),
        Algorithm::HhParity => {
            if profile.total() % 2 != 0 {
                DecisionReport::new(Algorithm::HhParity).reject(None)
            } else {
                hh_shifting_impl(b, &mut scratch.work, Algorithm::HhParity)
            }
        }
        Algorithm::Eg => eg_basic_impl(b, profile),
        Algorithm::EgShortened => eg_shortened_impl(b, profile),
        Algorithm::EgJumping => eg_jumping_impl(b, profile),
        Algorithm::EgLinear => eg_linear_impl(b, profile, &mut scratch.weights),
    }
}

pub fn hh_sorting(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::HhSorting)
}

pub fn hh_shifting(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::HhShifting)
}

pub fn hh_parity(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::HhParity)
}

pub fn eg_basic(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::Eg)
}

pub fn eg_shortened(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::EgShortened)
}

pub fn eg_jumping(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::EgJumping)
}

pub fn eg_linear(seq: &DegreeSequence) -> DecisionReport {
    is_graphical(seq, Algorithm::EgLinear)
}

fn hh_sorting_impl(b: &[i64], work: &mut Vec<i64>) -> DecisionReport {
    let mut report = DecisionReport::new(Algorithm::HhSorting);
    work.clear();
    work.extend_from_slice(b);
    loop {
        work.sort_unstable_by(|x, y| y.cmp(x));
        while work.last() == Some(&0) {
            work.pop();
        }
        if work.is_empty() {
            return report;
        }
        report.rounds += 1;
        let d = work[0] as usize;
        if d >= work.len() {
            return report.reject(Some(report.rounds as usize));
        }
        for x in &mut work[1..=d] {
            *x -= 1;
        }
        report.evaluations += d as u64;
        work.swap_remove(0);
    }
}

fn hh_shifting_impl(b: &[i64], work: &mut Vec<i64>, tag: Algorithm) -> DecisionReport {
    let mut report = DecisionReport::new(tag);
    work.clear();
    work.extend_from_slice(b);
    // work[start..end] is the positive, non-increasing residual sequence
    let mut start = 0;
    let mut end = work.partition_point(|&d| d > 0);
    while start < end {
        let d = work[start] as usize;
        start += 1;
        report.rounds += 1;
        if d > end - start {
            return report.reject(Some(report.rounds as usize));
        }
        let region = &mut work[start..end];
        let v = region[d - 1];
        let block_start = region.partition_point(|&x| x > v);
        let block_end = region.partition_point(|&x| x >= v);
        for x in &mut region[..block_start] {
            *x -= 1;
        }
        let in_block = d - block_start;
        for x in &mut region[block_end - in_block..block_end] {
            *x -= 1;
        }
        report.evaluations += d as u64;
        while end > start && work[end - 1] == 0 {
            end -= 1;
        }
    }
    report
}

fn eg_basic_impl(b: &[i64], profile: &PrefixProfile) -> DecisionReport {
    let mut report = DecisionReport::new(Algorithm::Eg);
    if profile.total() % 2 != 0 {
        return report.reject(None);
    }
    let n = b.len();
    for j in 1..n {
        let jj = j as i64;
        let tail: i64 = b[j..].iter().map(|&d| d.min(jj)).sum();
        report.evaluations += 1;
        if profile.head(j) > jj * (jj - 1) + tail {
            return report.reject(Some(j));
        }
    }
    report
}

fn eg_shortened_impl(b: &[i64], profile: &PrefixProfile) -> DecisionReport {
    let mut report = DecisionReport::new(Algorithm::EgShortened);
    if profile.total() % 2 != 0 {
        return report.reject(None);
    }
    let n = b.len();
    let r = (1..=n)
        .rev()
        .find(|&s| {
            let ss = s as i64;
            ss * (ss - 1) < profile.head(s)
        })
        .unwrap_or(0);
    for i in 1..=r {
        let ii = i as i64;
        let tail: i64 = b[i..].iter().map(|&d| d.min(ii)).sum();
        report.evaluations += 1;
        if profile.head(i) > ii * (ii - 1) + tail {
            return report.reject(Some(i));
        }
    }
    report
}

fn eg_jumping_impl(b: &[i64], profile: &PrefixProfile) -> DecisionReport {
    let mut report = DecisionReport::new(Algorithm::EgJumping);
    if profile.total() % 2 != 0 {
        return report.reject(None);
    }
    let n = b.len();
    let at = |i: usize| if i <= n { b[i - 1] } else { -1 };
    let mut i = 1;
    while i <= n && (i as i64) * (i as i64 - 1) < profile.head(i) {
        while at(i) == at(i + 1) {
            i += 1;
        }
        let ii = i as i64;
        let capacity: i64 = b[i..].iter().map(|&d| d.min(ii)).sum();
        report.rounds += 1;
        report.evaluations += 1;
        if profile.head(i) > ii * (ii - 1) + capacity {
            return report.reject(Some(i));
        }
        i += 1;
    }
    report
}

fn eg_linear_impl(b: &[i64], profile: &PrefixProfile, weights: &mut Vec<usize>) -> DecisionReport {
    let mut report = DecisionReport::new(Algorithm::EgLinear);
    let total = profile.total();
    if total % 2 != 0 {
        return report.reject(None);
    }
    let n = b.len();
    fill_weights(b, weights);
    for i in 1..=n {
        // w_n is never materialised; it behaves as 0
        let w = weights.get(i).copied().unwrap_or(0);
        let ii = i as i64;
        let head = profile.head(i);
        let capacity = if i <= w {
            ii * (w as i64 - ii) + total - profile.head(w)
        } else {
            total - head
        };
        report.evaluations += 1;
        if head > ii * (ii - 1) + capacity {
            return report.reject(Some(i));
        }
    }
    report
}

/// A simple graph on vertices `1..=n`, edges stored as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Degree of each vertex, indexed by vertex id minus one.
    pub fn degrees(&self) -> Vec<i64> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    /// Degrees sorted non-increasingly.
    pub fn degree_sequence(&self) -> Vec<i64> {
        let mut deg = self.degrees();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        deg
    }

    /// True when no loop or repeated pair is present.
    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u < v && v <= self.n)
            && self.edges.windows(2).all(|w| w[0] < w[1])
    }
}

/// Builds a graph with degree sequence `seq` by Havel-Hakimi laying-off:
/// the vertex of largest residual degree is joined to the next highest ones,
/// ties going to the lowest vertex id. Vertex `i` receives degree `b_i`.
///
/// Returns `None` exactly when `seq` is not graphical.
pub fn realize(seq: &DegreeSequence) -> Option<EdgeList> {
    let n = seq.len();
    let mut residual: Vec<(i64, usize)> = seq
        .as_slice()
        .iter()
        .enumerate()
        .map(|(idx, &d)| (d, idx + 1))
        .collect();
    let mut edges = Vec::with_capacity((seq.sum() / 2).max(0) as usize);
    loop {
        residual.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let (d, u) = residual[0];
        if d == 0 {
            break;
        }
        let d = d as usize;
        if d >= n {
            return None;
        }
        for entry in &mut residual[1..=d] {
            if entry.0 == 0 {
                return None;
            }
            entry.0 -= 1;
            edges.push((u.min(entry.1), u.max(entry.1)));
        }
        residual[0].0 = 0;
    }
    edges.sort_unstable();
    Some(EdgeList { n, edges })
}
