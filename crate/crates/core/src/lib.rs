//! Degree sequences of simple graphs: linear filters, exact graphicality
//! testers, closed-form counts and exhaustive enumeration.
//!
//! ```
//! use degseq::{is_graphical, Algorithm, DegreeSequence};
//!
//! let seq = DegreeSequence::new(vec![3, 3, 2, 2, 1, 1]).unwrap();
//! assert!(is_graphical(&seq, Algorithm::EgLinear).graphical);
//! ```

pub mod counting;
pub mod enumeration;
pub mod filters;
pub mod precise;
pub mod sequence;

pub use counting::{CountError, ExactInt, ExactSigned};
pub use enumeration::{
    aggregate, count_graphical, generate, slice_plan, CountReport, EnumerationError, FilterCensus,
    GeneratorState, SequenceKind, SliceTask,
};
pub use filters::{
    binomial_test, composite_test, composite_test_with, headsplitter_test, headsplitter_test_with,
    parity_test, positive_test, CompositeOptions, FilterId, FilterVerdict, HeadsplitVariant,
};
pub use precise::{decide, is_graphical, realize, Algorithm, DecisionReport, EdgeList, Scratch};
pub use sequence::{CheckpointSet, DegreeSequence, PrefixProfile, SequenceError, WeightVector};

/// Exact non-negative count.
pub type BigCount = num_bigint::BigUint;
/// Exact signed rational.
pub type ExactRational = num_rational::Ratio<num_bigint::BigInt>;
