//! Period canonicalization, minimal complexity, the reduction census and the
//! frequency ratio experiment.

mod census;
mod complexity;
mod ratio;
mod words;

pub use census::{
    census, census_label, census_label_display, enumerate_sl2, enumerate_sl2_bruteforce, trace_of_label,
    CensusOptions, CensusReport, Checkpoint,
};
pub use complexity::{min_complexity, ComplexityResult};
pub use ratio::{ratio_experiment, RatioRow};
pub use words::{canonical_period, canonical_word, minimal_period_len, period_equivalent, same_sequence, CanonicalPeriod};
