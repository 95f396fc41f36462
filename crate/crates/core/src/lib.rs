//! Exact success probabilities for concentrating `N` copies of a two-qubit
//! pure state `sqrt(alpha)|00> + sqrt(1-alpha)|11>` into a Bell pair, with
//! and without an entangled catalyst.
//!
//! * [`spectrum`]: ordered Schmidt spectra, majorization and the generic
//!   optimal conversion probability. This is the reference route every
//!   closed form is checked against.
//! * [`closed_form`]: the analytic ratio system, the optimal two-qubit
//!   catalyst and its probability.
//! * [`search`]: numerical catalyst search on explicit spectra, including
//!   higher-rank catalysts.
//! * [`strategy`]: planning multi-Bell extraction (pairwise vs. partition).
//! * [`verify`]: the closed-form vs. explicit cross-validation suite.

pub mod closed_form;
pub mod error;
pub mod search;
pub(crate) mod serde_inf;
mod simplex;
pub mod spectrum;
pub mod strategy;
pub mod verify;

#[cfg(test)]
mod oracle;

pub use closed_form::{
    boost_sweep, catalyzed_probability, final_monotones, initial_monotones, lqcc_probability,
    optimal_catalyst, ratio_profile, ratio_sweep, BoostRow, Branch, CatalystResult,
    ConcentrationInstance, RatioProfile,
};
pub use error::{Error, Result};
pub use search::{
    evaluate_catalyst, grid_search_rank2, simplex_search_rank_k, RankKCatalyst, SearchConfig,
};
pub use spectrum::{
    binary_entropy, majorizes, n_copy_spectrum, remains_incommensurate, vidal_probability, Level,
    SchmidtSpectrum, TransformPair,
};
pub use strategy::{
    best_partition, compare_strategies, pairwise_distribution, PairwiseOutcome, PartitionPlan,
    Strategy, StrategyReport,
};
