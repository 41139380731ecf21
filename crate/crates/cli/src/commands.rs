use std::path::PathBuf;
use std::str::FromStr;

use degseq::counting::{count_even, count_regular_n, to_decimal_string};
use degseq::enumeration::{
    b1_distribution, census_table, count_graphical_resumable, egj_round_histogram,
    filter_census_with, EnumerationError,
};
use degseq::filters::{
    binomial_test, composite_test_with, headsplitter_test_with, parity_test, positive_test,
    CompositeOptions, FilterVerdict, HeadsplitVariant,
};
use degseq::precise::UnknownAlgorithm;
use degseq::{
    is_graphical, realize, Algorithm, BigCount, DegreeSequence, ExactRational, SequenceError,
};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::output::{joined, Emitted, Rows};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse `{0}` as an integer")]
    BadInteger(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("{0}")]
    Algorithm(#[from] UnknownAlgorithm),
    #[error("unknown table column `{0}` (expected R, E, Ez, Bz, Fz, Gz, G, ratios)")]
    UnknownColumn(String),
    #[error(
        "n = {n} exceeds the enumeration budget of {budget}; pass --budget-override to run anyway"
    )]
    BudgetExceeded { n: usize, budget: usize },
    #[error("n must be at least {min}")]
    TooSmall { min: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::BadInteger(_) => "BadInteger",
            CliError::Sequence(SequenceError::Empty) => "Empty",
            CliError::Sequence(SequenceError::LengthMismatch { .. }) => "LengthMismatch",
            CliError::Sequence(SequenceError::NotMonotone { .. }) => "NotMonotone",
            CliError::Sequence(SequenceError::OutOfBounds { .. }) => "OutOfBounds",
            CliError::Algorithm(_) => "UnknownAlgorithm",
            CliError::UnknownColumn(_) => "UnknownColumn",
            CliError::BudgetExceeded { .. } => "BudgetExceeded",
            CliError::TooSmall { .. } => "TooSmall",
            CliError::Enumeration(_) => "Enumeration",
        }
    }

    /// 2 for rejected input, 3 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Enumeration(EnumerationError::Io(_) | EnumerationError::Pool(_)) => 3,
            _ => 2,
        }
    }
}

/// Largest `n` the enumerative commands accept without an override.
pub const DEFAULT_BUDGET: usize = 15;

pub fn check_budget(n: usize, overridden: bool) -> Result<(), CliError> {
    if n > DEFAULT_BUDGET {
        if !overridden {
            return Err(CliError::BudgetExceeded {
                n,
                budget: DEFAULT_BUDGET,
            });
        }
        eprintln!("warning: n = {n} is beyond the default budget of {DEFAULT_BUDGET}; this may take a long time");
    }
    Ok(())
}

pub fn parse_sequence(text: &str, sort: bool) -> Result<DegreeSequence, CliError> {
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        values.push(
            part.parse::<i64>()
                .map_err(|_| CliError::BadInteger(part.to_string()))?,
        );
    }
    if sort {
        values.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(DegreeSequence::new(values)?)
}

/// A precise tester or one of the filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Precise(Algorithm),
    Composite,
    Parity,
    Binomial,
    Positive,
    Headsplitter,
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "composite" => Method::Composite,
            "parity" => Method::Parity,
            "binomial" => Method::Binomial,
            "positive" => Method::Positive,
            "headsplitter" => Method::Headsplitter,
            _ => Method::Precise(s.parse()?),
        })
    }
}

impl Method {
    fn name(self) -> String {
        match self {
            Method::Precise(a) => a.short_name().to_string(),
            Method::Composite => "composite".into(),
            Method::Parity => "parity".into(),
            Method::Binomial => "binomial".into(),
            Method::Positive => "positive".into(),
            Method::Headsplitter => "headsplitter".into(),
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn test(seq: &DegreeSequence, method: Method, headsplit: HeadsplitVariant) -> Emitted {
    let profile = seq.prefix_profile();
    let mut rows = Rows::new([
        "sequence",
        "n",
        "algorithm",
        "graphical",
        "rounds",
        "evaluations",
        "witness_index",
        "rejected_by",
        "decided_by",
    ]);
    let (graphical, payload) = match method {
        Method::Precise(alg) => {
            let r = is_graphical(seq, alg);
            rows.push(vec![
                joined(seq.as_slice()),
                seq.len().to_string(),
                alg.short_name().into(),
                r.graphical.to_string(),
                r.rounds.to_string(),
                r.evaluations.to_string(),
                opt(r.witness_index),
                String::new(),
                alg.short_name().into(),
            ]);
            (
                r.graphical,
                json!({
                    "sequence": seq.as_slice(),
                    "n": seq.len(),
                    "algorithm": alg.short_name(),
                    "graphical": r.graphical,
                    "rounds": r.rounds,
                    "evaluations": r.evaluations,
                    "witness_index": r.witness_index,
                }),
            )
        }
        filter => {
            let options = CompositeOptions {
                headsplit,
                positive_check: false,
            };
            let verdict = match filter {
                Method::Composite => composite_test_with(seq, options),
                Method::Parity => parity_test(seq, &profile),
                Method::Binomial => binomial_test(seq, &profile),
                Method::Positive => positive_test(seq),
                _ => headsplitter_test_with(seq, &profile, headsplit),
            };
            // a passing filter proves nothing, so the verdict is settled by
            // the linear tester
            let (graphical, decided_by) = match verdict {
                FilterVerdict::Rejected { .. } => (false, method.name()),
                FilterVerdict::Passed => (
                    is_graphical(seq, Algorithm::EgLinear).graphical,
                    Algorithm::EgLinear.short_name().to_string(),
                ),
            };
            let rejected_by = verdict.rejected_by().map(|f| f.name());
            rows.push(vec![
                joined(seq.as_slice()),
                seq.len().to_string(),
                method.name(),
                graphical.to_string(),
                String::new(),
                String::new(),
                opt(verdict.witness_index()),
                opt(rejected_by),
                decided_by.clone(),
            ]);
            (
                graphical,
                json!({
                    "sequence": seq.as_slice(),
                    "n": seq.len(),
                    "algorithm": method.name(),
                    "graphical": graphical,
                    "filter_passed": verdict.passed(),
                    "rejected_by": rejected_by,
                    "witness_index": verdict.witness_index(),
                    "decided_by": decided_by,
                }),
            )
        }
    };
    Emitted {
        command: "test",
        payload,
        rows,
        exit: if graphical { 0 } else { 1 },
    }
}

pub fn realize_cmd(seq: &DegreeSequence) -> Emitted {
    let graph = realize(seq);
    let edges: Option<Vec<String>> = graph
        .as_ref()
        .map(|g| g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect());
    let mut rows = Rows::new(["sequence", "n", "graphical", "edges"]);
    rows.push(vec![
        joined(seq.as_slice()),
        seq.len().to_string(),
        graph.is_some().to_string(),
        edges.as_ref().map(|e| e.join(" ")).unwrap_or_default(),
    ]);
    Emitted {
        command: "realize",
        payload: json!({
            "sequence": seq.as_slice(),
            "n": seq.len(),
            "graphical": graph.is_some(),
            "edges": edges,
        }),
        rows,
        exit: if graph.is_some() { 0 } else { 1 },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    R,
    E,
    Ez,
    Bz,
    Fz,
    Gz,
    G,
    Ratios,
}

impl FromStr for Column {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "R" => Column::R,
            "E" => Column::E,
            "Ez" => Column::Ez,
            "Bz" => Column::Bz,
            "Fz" => Column::Fz,
            "Gz" => Column::Gz,
            "G" => Column::G,
            "ratios" => Column::Ratios,
            other => return Err(CliError::UnknownColumn(other.to_string())),
        })
    }
}

impl Column {
    fn enumerative(self) -> bool {
        matches!(
            self,
            Column::Ez | Column::Bz | Column::Fz | Column::Gz | Column::G
        )
    }

    fn label(self) -> &'static str {
        match self {
            Column::R => "R",
            Column::E => "E",
            Column::Ez => "Ez",
            Column::Bz => "Bz",
            Column::Fz => "Fz",
            Column::Gz => "Gz",
            Column::G => "G",
            Column::Ratios => "ratios",
        }
    }
}

pub fn parse_columns(text: &str) -> Result<Vec<Column>, CliError> {
    let mut cols: Vec<Column> = Vec::new();
    for c in text.split(',').filter(|c| !c.trim().is_empty()) {
        let c: Column = c.parse()?;
        if !cols.contains(&c) {
            cols.push(c);
        }
    }
    Ok(cols)
}

fn ratio_string(num: BigInt, den: BigInt) -> String {
    to_decimal_string(&ExactRational::new(num, den), 13)
}

/// Rows `1..=max_n`. `Bz`, `Fz` and `G` are cumulative (`X(n) = 1 + sum of
/// zerofree acceptances over lengths 2..=n`); `Ez` and `Gz` are per length.
/// `ratios` adds `E/R` and `X/R` for every enumerative column present.
pub fn table(
    max_n: usize,
    columns: &[Column],
    threads: usize,
    overridden: bool,
) -> Result<Emitted, CliError> {
    if max_n == 0 {
        return Err(CliError::TooSmall { min: 1 });
    }
    let census = if columns.iter().any(|c| c.enumerative()) {
        check_budget(max_n, overridden)?;
        Some(census_table(max_n, CompositeOptions::default(), threads)?)
    } else {
        None
    };

    let mut header = vec!["n".to_string()];
    let mut ratio_labels = Vec::new();
    for &c in columns {
        if c != Column::Ratios {
            header.push(c.label().to_string());
        }
    }
    if columns.contains(&Column::Ratios) {
        ratio_labels.push("E/R".to_string());
        for &c in columns {
            if c.enumerative() {
                ratio_labels.push(format!("{}/R", c.label()));
            }
        }
        header.extend(ratio_labels.iter().cloned());
    }

    let mut rows = Rows::new(header.clone());
    let mut json_rows = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let r = count_regular_n::<BigCount>(n as u64);
        let rb = BigInt::from(r.clone());
        let mut values: Vec<(String, String)> = Vec::new();
        let mut ratios = Vec::new();
        if columns.contains(&Column::Ratios) {
            ratios.push((
                "E/R".to_string(),
                ratio_string(count_even::<BigCount>(n as u64).into(), rb.clone()),
            ));
        }
        for &c in columns {
            let value: BigCount = match c {
                Column::Ratios => continue,
                Column::R => r.clone(),
                Column::E => count_even(n as u64),
                other => {
                    let row = &census.as_ref().expect("census computed")[n - 1];
                    BigCount::from(match other {
                        Column::Ez => row.census.total_seen,
                        Column::Bz => row.binomial_cumulative,
                        Column::Fz => row.composite_cumulative,
                        Column::Gz => row.census.graphical,
                        _ => row.graphical_cumulative,
                    })
                }
            };
            if c.enumerative() && columns.contains(&Column::Ratios) {
                ratios.push((
                    format!("{}/R", c.label()),
                    ratio_string(value.clone().into(), rb.clone()),
                ));
            }
            values.push((c.label().to_string(), value.to_string()));
        }
        values.extend(ratios);

        let mut record = serde_json::Map::new();
        record.insert("n".into(), json!(n));
        let mut csv_row = vec![n.to_string()];
        for (k, v) in values {
            csv_row.push(v.clone());
            record.insert(k, Value::String(v));
        }
        rows.push(csv_row);
        json_rows.push(Value::Object(record));
    }
    Ok(Emitted {
        command: "table",
        payload: json!({ "max_n": max_n, "columns": header, "rows": json_rows }),
        rows,
        exit: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Metric {
    EgjRounds,
    B1,
}

pub fn histogram(
    n: usize,
    metric: Metric,
    threads: usize,
    overridden: bool,
) -> Result<Emitted, CliError> {
    if n == 0 {
        return Err(CliError::TooSmall { min: 1 });
    }
    check_budget(n, overridden)?;
    let (name, values) = match metric {
        Metric::EgjRounds => (
            "egj-rounds",
            egj_round_histogram(n, threads)?
                .trimmed_histogram()
                .to_vec(),
        ),
        Metric::B1 => ("b1", b1_distribution(n, threads)?.per_b1),
    };
    let mut rows = Rows::new(["n", "metric", "index", "count"]);
    let first = if metric == Metric::B1 { 0 } else { 1 };
    for (i, v) in values.iter().enumerate() {
        rows.push(vec![
            n.to_string(),
            name.into(),
            (i + first).to_string(),
            v.to_string(),
        ]);
    }
    Ok(Emitted {
        command: "histogram",
        payload: json!({ "n": n, "metric": name, "histogram": values }),
        rows,
        exit: 0,
    })
}

pub fn count(
    n: usize,
    algorithm: Algorithm,
    threads: usize,
    checkpoint: Option<PathBuf>,
    overridden: bool,
) -> Result<Emitted, CliError> {
    if n < 2 {
        return Err(CliError::TooSmall { min: 2 });
    }
    check_budget(n, overridden)?;
    let r = count_graphical_resumable(n, algorithm, threads, checkpoint.as_deref())?;
    let total = r.graphical_total.expect("set by count_graphical");
    let mut rows = Rows::new([
        "n",
        "algorithm",
        "zerofree_even",
        "zerofree_graphical",
        "graphical",
    ]);
    rows.push(vec![
        n.to_string(),
        algorithm.short_name().into(),
        r.total_seen.to_string(),
        r.accepted.to_string(),
        total.to_string(),
    ]);
    Ok(Emitted {
        command: "count",
        payload: json!({
            "n": n,
            "algorithm": algorithm.short_name(),
            "zerofree_even": r.total_seen.to_string(),
            "zerofree_graphical": r.accepted.to_string(),
            "graphical": total.to_string(),
            "zerofree_graphical_by_b1": r.per_b1.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
        rows,
        exit: 0,
    })
}

pub fn filter_census(
    n: usize,
    options: CompositeOptions,
    threads: usize,
    overridden: bool,
) -> Result<Emitted, CliError> {
    if n < 2 {
        return Err(CliError::TooSmall { min: 2 });
    }
    check_budget(n, overridden)?;
    let c = filter_census_with(n, options, threads)?;
    let mut rows = Rows::new(["n", "zerofree_even", "binomial", "composite", "graphical"]);
    rows.push(vec![
        n.to_string(),
        c.total_seen.to_string(),
        c.binomial.to_string(),
        c.composite.to_string(),
        c.graphical.to_string(),
    ]);
    Ok(Emitted {
        command: "filter-census",
        payload: json!({
            "n": n,
            "zerofree_even": c.total_seen.to_string(),
            "binomial": c.binomial.to_string(),
            "composite": c.composite.to_string(),
            "graphical": c.graphical.to_string(),
        }),
        rows,
        exit: 0,
    })
}
