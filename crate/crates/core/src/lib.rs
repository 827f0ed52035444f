//! Synergy analysis for two equally weighted binary voters.
//!
//! Two agents each compare a good and a bad action and either favor the good
//! one, stay neutral, or favor the bad one. Under the `+1 / 0 / -1` payoff
//! schema an agent's expected payoff is `P(favor) − P(oppose)`, which is
//! `2·AUC − 1` for the agent viewed as a scoring rule. The averaged decision
//! is synergistic when its payoff is at least the mean of the individual
//! payoffs; that gap equals half of
//! `j(neutral, favor) − j(neutral, oppose) + j(favor, neutral) − j(oppose, neutral)`,
//! so two agents that are never neutral can never gain from averaging.
//!
//! - [`dist`]: marginal, joint and conditional distributions
//! - [`synergy`]: closed-form payoffs, synergy conditions and reports
//! - [`votemodel`]: brute-force ground truth over the 16 vote tuples
//! - [`roc`]: ROC curves and tie-corrected AUC
//! - [`montecarlo`]: seeded simulation and verification sweeps

pub mod category;
pub mod dist;
pub mod error;
pub mod montecarlo;
pub mod rng;
pub mod roc;
pub mod synergy;
pub mod votemodel;

pub use category::{OutcomeCategory, PayoffSchema};
pub use dist::{Conditioning, ConditionalTable, JointDist, MarginalDist};
pub use error::{Error, Result};
pub use synergy::{analyze, SynergyReport};

/// Allowed deviation of an ingested distribution's total from 1.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Tolerance for exact identities and for the synergy booleans.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Neutral probability at or below which an agent is opinion-loaded.
pub const NEUTRAL_TOLERANCE: f64 = 1e-12;
