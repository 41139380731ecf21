//! Exhaustive generation of regular, even and zerofree even sequences, and
//! the counting pipelines built on it.
//!
//! Sequences are produced in reverse lexicographic order, so fixing the
//! leading elements carves the space into contiguous, disjoint slices that
//! can be processed independently and summed exactly.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use thiserror::Error;

use crate::filters::{binomial_of, composite_of, CompositeOptions};
use crate::precise::{decide, Algorithm, Scratch};
use crate::sequence::{DegreeSequence, PrefixProfile};

/// Which family of `n`-sequences to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// All non-increasing sequences over `[0, n-1]`.
    Regular,
    /// Regular sequences with even sum.
    Even,
    /// Even sequences without zeros.
    ZerofreeEven,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Regular => "regular",
            SequenceKind::Even => "even",
            SequenceKind::ZerofreeEven => "zerofree-even",
        }
    }

    /// Smallest admissible element.
    pub fn lower(self) -> i64 {
        match self {
            SequenceKind::ZerofreeEven => 1,
            _ => 0,
        }
    }

    fn even_only(self) -> bool {
        !matches!(self, SequenceKind::Regular)
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "regular" => Ok(SequenceKind::Regular),
            "even" => Ok(SequenceKind::Even),
            "zerofree-even" => Ok(SequenceKind::ZerofreeEven),
            other => Err(EnumerationError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("reports disagree on {0}")]
    MixedReports(&'static str),
    #[error("prefix {prefix:?} is not admissible for length {n}")]
    BadPrefix { n: usize, prefix: Vec<i64> },
    #[error("unknown sequence kind `{0}`")]
    UnknownKind(String),
    #[error("malformed checkpoint line {line}: {reason}")]
    Checkpoint { line: usize, reason: String },
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A resumable generator positioned on one sequence of its kind.
///
/// Elements before `fixed` never change. Each step decrements the rightmost
/// free element above the lower bound and refills the (all-minimal) suffix,
/// updating prefix sums over the same suffix only, so the amortised work per
/// emitted sequence is constant.
#[derive(Debug, Clone)]
pub struct GeneratorState {
    current: DegreeSequence,
    profile: PrefixProfile,
    kind: SequenceKind,
    fixed: usize,
    exhausted: bool,
}

impl GeneratorState {
    pub fn new(n: usize, kind: SequenceKind) -> Self {
        Self::with_prefix(n, kind, &[]).expect("empty prefix is always admissible")
    }

    /// Generator restricted to sequences starting with `prefix`.
    pub fn with_prefix(
        n: usize,
        kind: SequenceKind,
        prefix: &[i64],
    ) -> Result<Self, EnumerationError> {
        let bad = || EnumerationError::BadPrefix {
            n,
            prefix: prefix.to_vec(),
        };
        if n == 0 || prefix.len() > n {
            return Err(bad());
        }
        let top = n as i64 - 1;
        if prefix.iter().any(|&d| d < 0 || d > top) || prefix.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad());
        }
        let lo = kind.lower();
        let cap = prefix.last().copied().unwrap_or(top);
        let mut exhausted = prefix.iter().any(|&d| d < lo) || (prefix.len() < n && cap < lo);
        let mut degrees = prefix.to_vec();
        degrees.resize(n, cap.max(0));
        if exhausted {
            degrees.iter_mut().for_each(|d| *d = 0);
        }
        let current = DegreeSequence::from_trusted(degrees);
        let profile = current.prefix_profile();
        let mut state = Self {
            current,
            profile,
            kind,
            fixed: prefix.len(),
            exhausted,
        };
        if !exhausted && kind.even_only() && state.profile.total() % 2 != 0 {
            state.step_raw();
            state.skip_odd();
            exhausted = state.exhausted;
        }
        state.exhausted = exhausted;
        Ok(state)
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// The sequence the generator is positioned on, with its prefix sums.
    pub fn current(&self) -> Option<(&DegreeSequence, &PrefixProfile)> {
        (!self.exhausted).then_some((&self.current, &self.profile))
    }

    /// Moves to the next sequence of the kind.
    pub fn advance(&mut self) {
        if self.exhausted {
            return;
        }
        self.step_raw();
        self.skip_odd();
    }

    fn skip_odd(&mut self) {
        if self.kind.even_only() {
            while !self.exhausted && self.profile.total() % 2 != 0 {
                self.step_raw();
            }
        }
    }

    fn step_raw(&mut self) {
        let lo = self.kind.lower();
        let n = self.current.len();
        let b = self.current.degrees_mut();
        let mut p = n;
        while p > self.fixed && b[p - 1] <= lo {
            p -= 1;
        }
        if p == self.fixed {
            self.exhausted = true;
            return;
        }
        let pos = p - 1;
        let value = b[pos] - 1;
        for d in &mut b[pos..] {
            *d = value;
        }
        let sums = self.profile.sums_mut();
        for q in pos..n {
            sums[q + 1] = sums[q] + value;
        }
    }
}

/// Calls `visitor` on every `n`-sequence of `kind`, largest first, and
/// returns how many were visited.
pub fn generate<F>(n: usize, kind: SequenceKind, visitor: F) -> u64
where
    F: FnMut(&DegreeSequence, &PrefixProfile),
{
    generate_from(GeneratorState::new(n, kind), visitor)
}

fn generate_from<F>(mut state: GeneratorState, mut visitor: F) -> u64
where
    F: FnMut(&DegreeSequence, &PrefixProfile),
{
    let mut count = 0;
    while let Some((seq, profile)) = state.current() {
        visitor(seq, profile);
        count += 1;
        state.advance();
    }
    count
}

/// A slice of the enumeration space: all sequences of `kind` and length `n`
/// beginning with `fixed_prefix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SliceTask {
    pub n: usize,
    pub kind: SequenceKind,
    pub fixed_prefix: Vec<i64>,
}

impl SliceTask {
    pub fn generator(&self) -> Result<GeneratorState, EnumerationError> {
        GeneratorState::with_prefix(self.n, self.kind, &self.fixed_prefix)
    }

    /// Visits every sequence of the slice.
    pub fn run<F>(&self, visitor: F) -> Result<u64, EnumerationError>
    where
        F: FnMut(&DegreeSequence, &PrefixProfile),
    {
        Ok(generate_from(self.generator()?, visitor))
    }

    /// `:`-joined prefix, as used in checkpoint files.
    pub fn prefix_label(&self) -> String {
        self.fixed_prefix
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }
}

/// Lengths from which [`slice_plan`] splits the heaviest leading values a
/// second time.
pub const TWO_LEVEL_FROM: usize = 16;

/// One slice per admissible leading element, largest first. From
/// [`TWO_LEVEL_FROM`] on, the two largest leading values (which carry most
/// of the graphical sequences) are split again by the second element.
pub fn slice_plan(n: usize, kind: SequenceKind) -> Vec<SliceTask> {
    slice_plan_with(n, kind, n >= TWO_LEVEL_FROM)
}

pub fn slice_plan_with(n: usize, kind: SequenceKind, two_level: bool) -> Vec<SliceTask> {
    let lo = kind.lower();
    let top = n as i64 - 1;
    let mut tasks = Vec::new();
    for first in (lo..=top).rev() {
        if two_level && n >= 2 && first >= top - 1 {
            for second in (lo..=first).rev() {
                tasks.push(SliceTask {
                    n,
                    kind,
                    fixed_prefix: vec![first, second],
                });
            }
        } else {
            tasks.push(SliceTask {
                n,
                kind,
                fixed_prefix: vec![first],
            });
        }
    }
    tasks
}

/// Totals gathered over (part of) an enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub kind: SequenceKind,
    pub algorithm: Option<Algorithm>,
    pub total_seen: u64,
    pub accepted: u64,
    /// Accepted sequences by leading element, indices `0..n`.
    pub per_b1: Vec<u64>,
    /// Entry `r - 1` counts sequences rejected after exactly `r` rounds.
    pub rounds_histogram: Vec<u64>,
    /// `G(n)` when the report comes from [`count_graphical`].
    pub graphical_total: Option<u64>,
}

impl CountReport {
    pub fn empty(n: usize, kind: SequenceKind, algorithm: Option<Algorithm>) -> Self {
        Self {
            n,
            kind,
            algorithm,
            total_seen: 0,
            accepted: 0,
            per_b1: vec![0; n],
            rounds_histogram: vec![0; n.div_ceil(2) + 1],
            graphical_total: None,
        }
    }

    /// The neutral element of [`CountReport::merge`].
    pub fn zero() -> Self {
        Self::empty(0, SequenceKind::Regular, None)
    }

    fn is_zero(&self) -> bool {
        self.n == 0 && self.total_seen == 0 && self.accepted == 0
    }

    /// Rounds histogram without trailing zeros.
    pub fn trimmed_histogram(&self) -> &[u64] {
        let len = self
            .rounds_histogram
            .iter()
            .rposition(|&c| c != 0)
            .map_or(0, |p| p + 1);
        &self.rounds_histogram[..len]
    }

    fn record_round(&mut self, rounds: u64) {
        let slot = rounds.max(1) as usize - 1;
        if slot >= self.rounds_histogram.len() {
            self.rounds_histogram.resize(slot + 1, 0);
        }
        self.rounds_histogram[slot] += 1;
    }

    /// Component-wise exact sum.
    pub fn merge(&mut self, other: &CountReport) -> Result<(), EnumerationError> {
        if other.is_zero() {
            return Ok(());
        }
        if self.is_zero() {
            *self = other.clone();
            return Ok(());
        }
        if self.n != other.n {
            return Err(EnumerationError::MixedReports("n"));
        }
        if self.kind != other.kind {
            return Err(EnumerationError::MixedReports("kind"));
        }
        if self.algorithm != other.algorithm {
            return Err(EnumerationError::MixedReports("algorithm"));
        }
        self.total_seen += other.total_seen;
        self.accepted += other.accepted;
        for (a, b) in self.per_b1.iter_mut().zip(&other.per_b1) {
            *a += b;
        }
        if other.rounds_histogram.len() > self.rounds_histogram.len() {
            self.rounds_histogram
                .resize(other.rounds_histogram.len(), 0);
        }
        for (a, b) in self
            .rounds_histogram
            .iter_mut()
            .zip(&other.rounds_histogram)
        {
            *a += b;
        }
        self.graphical_total = match (self.graphical_total, other.graphical_total) {
            (Some(a), Some(b)) if a == b => Some(a),
            (a, None) => a,
            (None, b) => b,
            _ => return Err(EnumerationError::MixedReports("graphical_total")),
        };
        Ok(())
    }
}

/// Sums reports; an empty input yields [`CountReport::zero`].
pub fn aggregate<'a, I>(reports: I) -> Result<CountReport, EnumerationError>
where
    I: IntoIterator<Item = &'a CountReport>,
{
    let mut acc = CountReport::zero();
    for r in reports {
        acc.merge(r)?;
    }
    Ok(acc)
}

fn with_pool<R: Send>(
    threads: usize,
    job: impl FnOnce() -> R + Send,
) -> Result<R, EnumerationError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| EnumerationError::Pool(e.to_string()))?;
    Ok(pool.install(job))
}

/// Runs `work` on every task in parallel and returns the per-task results in
/// plan order.
fn run_tasks<R, W>(tasks: &[SliceTask], threads: usize, work: W) -> Result<Vec<R>, EnumerationError>
where
    R: Send,
    W: Fn(&SliceTask) -> Result<R, EnumerationError> + Sync,
{
    with_pool(threads, || tasks.par_iter().map(&work).collect())?
}

fn test_slice(task: &SliceTask, algorithm: Algorithm) -> Result<CountReport, EnumerationError> {
    let mut report = CountReport::empty(task.n, task.kind, Some(algorithm));
    let mut scratch = Scratch::default();
    report.total_seen = task.run(|seq, profile| {
        let verdict = decide(seq, profile, algorithm, &mut scratch);
        if verdict.graphical {
            report.accepted += 1;
            report.per_b1[seq.max_degree() as usize] += 1;
        } else {
            report.record_round(verdict.rounds);
        }
    })?;
    Ok(report)
}

/// Tests every sequence of the given plan with `algorithm`.
pub fn count_with_plan(
    tasks: &[SliceTask],
    algorithm: Algorithm,
    threads: usize,
) -> Result<CountReport, EnumerationError> {
    let parts = run_tasks(tasks, threads, |t| test_slice(t, algorithm))?;
    aggregate(&parts)
}

/// Counts the zerofree graphical `n`-sequences `G_z(n)` and derives `G(n)`
/// from the zerofree counts of all shorter lengths.
pub fn count_graphical(
    n: usize,
    algorithm: Algorithm,
    threads: usize,
) -> Result<CountReport, EnumerationError> {
    count_graphical_resumable(n, algorithm, threads, None)
}

/// [`count_graphical`] that records each finished slice of length `n` in a
/// checkpoint file and skips slices already recorded there.
pub fn count_graphical_resumable(
    n: usize,
    algorithm: Algorithm,
    threads: usize,
    checkpoint: Option<&Path>,
) -> Result<CountReport, EnumerationError> {
    let kind = SequenceKind::ZerofreeEven;
    let mut zerofree = Vec::with_capacity(n);
    for k in 2..n {
        let part = count_with_plan(&slice_plan(k, kind), algorithm, threads)?;
        zerofree.push((k, part.accepted));
    }
    let mut report = match checkpoint {
        Some(path) => checkpointed_count(n, algorithm, threads, path)?,
        None => count_with_plan(&slice_plan(n, kind), algorithm, threads)?,
    };
    if report.is_zero() {
        report = CountReport::empty(n, kind, Some(algorithm));
    }
    zerofree.push((n, report.accepted));
    let table = crate::counting::graphical_recurrence::<u64, _>(zerofree)
        .expect("zerofree table is complete by construction");
    report.graphical_total = Some(table[n - 1]);
    Ok(report)
}

/// One finished slice as stored in a checkpoint file:
/// `n,kind,prefix,accepted,total_seen`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointRecord {
    pub n: usize,
    pub kind: SequenceKind,
    pub prefix: Vec<i64>,
    pub accepted: u64,
    pub total_seen: u64,
}

impl CheckpointRecord {
    pub fn to_line(&self) -> String {
        let prefix = self
            .prefix
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(":");
        format!(
            "{},{},{},{},{}",
            self.n, self.kind, prefix, self.accepted, self.total_seen
        )
    }

    pub fn parse(line: &str, line_no: usize) -> Result<Self, EnumerationError> {
        let err = |reason: &str| EnumerationError::Checkpoint {
            line: line_no,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 5 {
            return Err(err("expected 5 comma-separated fields"));
        }
        let n = fields[0].parse().map_err(|_| err("bad n"))?;
        let kind = fields[1].parse().map_err(|_| err("bad kind"))?;
        let prefix = if fields[2].is_empty() {
            Vec::new()
        } else {
            fields[2]
                .split(':')
                .map(|d| d.parse().map_err(|_| err("bad prefix")))
                .collect::<Result<_, _>>()?
        };
        let accepted = fields[3].parse().map_err(|_| err("bad accepted"))?;
        let total_seen = fields[4].parse().map_err(|_| err("bad total_seen"))?;
        Ok(Self {
            n,
            kind,
            prefix,
            accepted,
            total_seen,
        })
    }
}

/// Reads every record of a checkpoint file; a missing file is empty.
pub fn read_checkpoint(path: &Path) -> Result<Vec<CheckpointRecord>, EnumerationError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(CheckpointRecord::parse(&line, idx + 1)?);
    }
    Ok(out)
}

fn checkpointed_count(
    n: usize,
    algorithm: Algorithm,
    threads: usize,
    path: &Path,
) -> Result<CountReport, EnumerationError> {
    let kind = SequenceKind::ZerofreeEven;
    let done: Vec<CheckpointRecord> = read_checkpoint(path)?
        .into_iter()
        .filter(|r| r.n == n && r.kind == kind)
        .collect();
    let plan = slice_plan(n, kind);
    let pending: Vec<SliceTask> = plan
        .iter()
        .filter(|t| !done.iter().any(|r| r.prefix == t.fixed_prefix))
        .cloned()
        .collect();
    let file = Mutex::new(OpenOptions::new().create(true).append(true).open(path)?);
    let fresh = run_tasks(&pending, threads, |task| {
        let report = test_slice(task, algorithm)?;
        let record = CheckpointRecord {
            n,
            kind,
            prefix: task.fixed_prefix.clone(),
            accepted: report.accepted,
            total_seen: report.total_seen,
        };
        let mut f = file.lock().expect("checkpoint writer poisoned");
        writeln!(f, "{}", record.to_line())?;
        f.flush()?;
        Ok(report)
    })?;
    let mut total = aggregate(&fresh)?;
    if total.is_zero() {
        total = CountReport::empty(n, kind, Some(algorithm));
    }
    for record in done
        .iter()
        .filter(|r| plan.iter().any(|t| t.fixed_prefix == r.prefix))
    {
        total.total_seen += record.total_seen;
        total.accepted += record.accepted;
        total.per_b1[record.prefix[0] as usize] += record.accepted;
    }
    Ok(total)
}

/// Per-length acceptance counts of the filters over zerofree even sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FilterCensus {
    pub n: usize,
    /// Zerofree even sequences examined (`E_z(n)`).
    pub total_seen: u64,
    /// Accepted by the binomial filter.
    pub binomial: u64,
    /// Accepted by the composite filter chain.
    pub composite: u64,
    /// Graphical (`G_z(n)`).
    pub graphical: u64,
}

/// One pass over the zerofree even `n`-sequences counting binomial,
/// composite and exact acceptances.
pub fn filter_census(n: usize, threads: usize) -> Result<FilterCensus, EnumerationError> {
    filter_census_with(n, CompositeOptions::default(), threads)
}

pub fn filter_census_with(
    n: usize,
    options: CompositeOptions,
    threads: usize,
) -> Result<FilterCensus, EnumerationError> {
    let plan = slice_plan(n, SequenceKind::ZerofreeEven);
    let parts = run_tasks(&plan, threads, |task| {
        let mut c = FilterCensus {
            n,
            ..Default::default()
        };
        let mut scratch = Scratch::default();
        c.total_seen = task.run(|seq, profile| {
            if binomial_of(profile).passed() {
                c.binomial += 1;
            }
            if composite_of(seq, profile, options).passed() {
                c.composite += 1;
            }
            if decide(seq, profile, Algorithm::EgLinear, &mut scratch).graphical {
                c.graphical += 1;
            }
        })?;
        Ok(c)
    })?;
    Ok(parts.into_iter().fold(
        FilterCensus {
            n,
            ..Default::default()
        },
        |mut acc, c| {
            acc.total_seen += c.total_seen;
            acc.binomial += c.binomial;
            acc.composite += c.composite;
            acc.graphical += c.graphical;
            acc
        },
    ))
}

/// One row of the cumulative filter table. The cumulative columns follow the
/// same recomposition as `G(n) = 1 + sum_{k=2}^{n} G_z(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub census: FilterCensus,
    pub binomial_cumulative: u64,
    pub composite_cumulative: u64,
    pub graphical_cumulative: u64,
}

/// Census rows for `n = 1..=max_n`.
pub fn census_table(
    max_n: usize,
    options: CompositeOptions,
    threads: usize,
) -> Result<Vec<CensusRow>, EnumerationError> {
    let mut rows = Vec::with_capacity(max_n);
    let (mut b, mut f, mut g) = (1, 1, 1);
    for n in 1..=max_n {
        let census = if n == 1 {
            FilterCensus {
                n,
                ..Default::default()
            }
        } else {
            filter_census_with(n, options, threads)?
        };
        b += census.binomial;
        f += census.composite;
        g += census.graphical;
        rows.push(CensusRow {
            census,
            binomial_cumulative: b,
            composite_cumulative: f,
            graphical_cumulative: g,
        });
    }
    Ok(rows)
}

/// Graphical `n`-sequences (zeros allowed) by leading element. `accepted`
/// is `G(n)`.
pub fn b1_distribution(n: usize, threads: usize) -> Result<CountReport, EnumerationError> {
    count_with_plan(
        &slice_plan(n, SequenceKind::Even),
        Algorithm::EgLinear,
        threads,
    )
    .map(|r| {
        if r.is_zero() {
            CountReport::empty(n, SequenceKind::Even, Some(Algorithm::EgLinear))
        } else {
            r
        }
    })
}

/// Even non-graphical `n`-sequences (zeros allowed) by the number of
/// checking-point tests the jumping tester needs to reject them.
pub fn egj_round_histogram(n: usize, threads: usize) -> Result<CountReport, EnumerationError> {
    count_with_plan(
        &slice_plan(n, SequenceKind::Even),
        Algorithm::EgJumping,
        threads,
    )
    .map(|r| {
        if r.is_zero() {
            CountReport::empty(n, SequenceKind::Even, Some(Algorithm::EgJumping))
        } else {
            r
        }
    })
}
