//! Seeded sampling from category joints, empirical payoff estimates, random
//! instance generation and bulk verification sweeps.
//!
//! Randomness comes from [`crate::rng`]. Sweep trial `i` uses the sub-seed
//! `split_seed(master, i)`, and the joint for constraint `k` within that
//! trial uses `split_seed(trial_seed, k)`, so any reported failure can be
//! regenerated in isolation with [`random_joint`].

use crate::category::OutcomeCategory;
use crate::dist::{JointDist, MarginalDist};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, simplex, split_seed};
use crate::synergy::{bayes_residual, collective_payoff, synergy_condition_dependent, SynergyReport};
use crate::votemodel::{collective_payoff_bruteforce, VoteJoint};
use crate::IDENTITY_TOLERANCE;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    n_samples: u64,
    seed: u64,
}

impl SimConfig {
    pub fn new(n_samples: u64, seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::EmptySimulation);
        }
        Ok(Self { n_samples, seed })
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Inverse-CDF sampler over the nine cells of a joint in row-major order.
#[derive(Debug, Clone)]
pub struct CategorySampler {
    cumulative: [f64; 9],
    last_positive: usize,
}

impl CategorySampler {
    pub fn new(j: &JointDist) -> Self {
        let mut cumulative = [0.0; 9];
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (k, &p) in j.cells().iter().flatten().enumerate() {
            acc += p;
            cumulative[k] = acc;
            if p > 0.0 {
                last_positive = k;
            }
        }
        Self {
            cumulative,
            last_positive,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (OutcomeCategory, OutcomeCategory) {
        let u: f64 = rng.gen();
        // rounding can leave the final cumulative just under 1
        let k = self
            .cumulative
            .iter()
            .position(|&c| u < c)
            .map_or(self.last_positive, |k| k.min(self.last_positive));
        (
            OutcomeCategory::ALL[k / 3],
            OutcomeCategory::ALL[k % 3],
        )
    }
}

/// One draw of a category pair from `j`.
pub fn sample_category_pair<R: Rng + ?Sized>(
    j: &JointDist,
    rng: &mut R,
) -> (OutcomeCategory, OutcomeCategory) {
    CategorySampler::new(j).sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub v1_hat: f64,
    pub v2_hat: f64,
    pub vbar_hat: f64,
    pub gap_hat: f64,
    /// Plug-in standard error of `gap_hat`.
    pub std_err_gap: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Empirical payoffs from `cfg.n_samples()` draws of `j`.
pub fn estimate(j: &JointDist, cfg: &SimConfig) -> EstimateReport {
    let sampler = CategorySampler::new(j);
    let mut rng = rng_from_seed(cfg.seed);
    let (mut s1, mut s2, mut sbar) = (0.0, 0.0, 0.0);
    // Welford accumulators for the per-draw gap contribution
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 1..=cfg.n_samples {
        let (x, y) = sampler.sample(&mut rng);
        let p1 = x.payoff();
        let p2 = y.payoff();
        let pbar = OutcomeCategory::from_margin(x.margin() as i32 + y.margin() as i32).payoff();
        s1 += p1;
        s2 += p2;
        sbar += pbar;
        let d = pbar - (p1 + p2) / 2.0;
        let delta = d - mean;
        mean += delta / i as f64;
        m2 += delta * (d - mean);
    }
    let n = cfg.n_samples as f64;
    let var = if cfg.n_samples > 1 { m2 / (n - 1.0) } else { 0.0 };
    EstimateReport {
        v1_hat: s1 / n,
        v2_hat: s2 / n,
        vbar_hat: sbar / n,
        gap_hat: mean,
        std_err_gap: (var.max(0.0) / n).sqrt(),
        n_samples: cfg.n_samples,
        seed: cfg.seed,
    }
}

/// Families of random joints used by the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JointConstraint {
    /// Uniform on the 9-cell simplex.
    #[serde(rename = "none")]
    Unconstrained,
    /// Outer product of two simplex-uniform marginals.
    Independent,
    /// Mass only where both agents favor or oppose.
    OpinionLoadedBoth,
    /// Mixed with a point mass at (neutral, neutral) of weight in
    /// `[0.25, 0.75)`, so both neutral marginals are at least 0.25.
    NeutralHeavy,
}

impl JointConstraint {
    pub const ALL: [JointConstraint; 4] = [
        Self::Unconstrained,
        Self::Independent,
        Self::OpinionLoadedBoth,
        Self::NeutralHeavy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Unconstrained => "none",
            Self::Independent => "independent",
            Self::OpinionLoadedBoth => "opinion_loaded_both",
            Self::NeutralHeavy => "neutral_heavy",
        }
    }
}

impl fmt::Display for JointConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown constraint {0:?} (expected none, independent, opinion_loaded_both or neutral_heavy)")]
pub struct UnknownConstraint(pub String);

impl FromStr for JointConstraint {
    type Err = UnknownConstraint;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownConstraint(s.to_owned()))
    }
}

/// Random joint from the given family, deterministic in `(seed, constraint)`.
pub fn random_joint(seed: u64, constraint: JointConstraint) -> JointDist {
    let mut rng = rng_from_seed(seed);
    let cells = match constraint {
        JointConstraint::Unconstrained => {
            let p: [f64; 9] = simplex(&mut rng);
            std::array::from_fn(|x| std::array::from_fn(|y| p[3 * x + y]))
        }
        JointConstraint::Independent => {
            let m1 = MarginalDist::from_array(simplex(&mut rng)).expect("simplex point");
            let m2 = MarginalDist::from_array(simplex(&mut rng)).expect("simplex point");
            return JointDist::independent(&m1, &m2);
        }
        JointConstraint::OpinionLoadedBoth => {
            let p: [f64; 4] = simplex(&mut rng);
            [[p[0], 0.0, p[1]], [0.0; 3], [p[2], 0.0, p[3]]]
        }
        JointConstraint::NeutralHeavy => {
            let p: [f64; 9] = simplex(&mut rng);
            let w = 0.25 + 0.5 * rng.gen::<f64>();
            let mut cells: [[f64; 3]; 3] =
                std::array::from_fn(|x| std::array::from_fn(|y| (1.0 - w) * p[3 * x + y]));
            cells[1][1] += w;
            cells
        }
    };
    JointDist::new(cells).expect("generated joint is a valid distribution")
}

/// Outcome of checking one joint against every identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCheck {
    pub gap_identity_residual: f64,
    pub bayes_residual: f64,
    pub oracle_residual: f64,
    /// `|gap|` when both agents are opinion-loaded.
    pub theorem_residual: Option<f64>,
    pub theorem_violated: bool,
}

impl JointCheck {
    pub fn gap_identity_ok(&self) -> bool {
        self.gap_identity_residual <= IDENTITY_TOLERANCE
    }

    pub fn bayes_ok(&self) -> bool {
        self.bayes_residual <= IDENTITY_TOLERANCE
    }

    pub fn oracle_ok(&self) -> bool {
        self.oracle_residual <= IDENTITY_TOLERANCE
    }

    pub fn passed(&self) -> bool {
        self.gap_identity_ok() && self.bayes_ok() && self.oracle_ok() && !self.theorem_violated
    }

    pub fn max_residual(&self) -> f64 {
        self.gap_identity_residual
            .max(self.bayes_residual)
            .max(self.oracle_residual)
            .max(self.theorem_residual.unwrap_or(0.0))
    }
}

/// Checks the gap identity (with `condition` as the condition value), the
/// opinion-loaded theorem, the Bayes identity and the vote-space oracle.
pub fn check_joint(j: &JointDist, condition: impl Fn(&JointDist) -> f64) -> JointCheck {
    let report = SynergyReport::compute_with(j, condition);
    let (theorem_residual, theorem_violated) = if report.both_opinion_loaded() {
        let r = report.gap.abs();
        (Some(r), r > IDENTITY_TOLERANCE || report.positive_synergy)
    } else {
        (None, false)
    };
    JointCheck {
        gap_identity_residual: report.identity_residual(),
        bayes_residual: bayes_residual(j),
        oracle_residual: (collective_payoff_bruteforce(&VoteJoint::lift(j)) - collective_payoff(j)).abs(),
        theorem_residual,
        theorem_violated,
    }
}

/// Where a sweep first failed. `random_joint(joint_seed, constraint)`
/// regenerates the offending joint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub trial: u64,
    pub joint_seed: u64,
    pub constraint: JointConstraint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_trials: u64,
    pub seed: u64,
    /// Joints checked; each trial draws one per constraint.
    pub n_joints: u64,
    pub n_gap_identity_violations: u64,
    pub n_theorem_violations: u64,
    pub n_bayes_violations: u64,
    pub n_oracle_violations: u64,
    pub max_abs_residual: f64,
    pub first_failure: Option<SweepFailure>,
}

impl SweepReport {
    pub fn total_violations(&self) -> u64 {
        self.n_gap_identity_violations
            + self.n_theorem_violations
            + self.n_bayes_violations
            + self.n_oracle_violations
    }

    pub fn clean(&self) -> bool {
        self.total_violations() == 0
    }
}

/// Runs `n_trials` trials of [`check_joint`], one joint per constraint
/// family per trial. Violation counts are per trial.
pub fn verify_sweep(n_trials: u64, seed: u64) -> SweepReport {
    verify_sweep_with(n_trials, seed, synergy_condition_dependent)
}

/// [`verify_sweep`] with a substitute condition function, for checking that
/// the sweep detects a wrong formula.
pub fn verify_sweep_with(
    n_trials: u64,
    seed: u64,
    condition: impl Fn(&JointDist) -> f64,
) -> SweepReport {
    let mut report = SweepReport {
        n_trials,
        seed,
        n_joints: 0,
        n_gap_identity_violations: 0,
        n_theorem_violations: 0,
        n_bayes_violations: 0,
        n_oracle_violations: 0,
        max_abs_residual: 0.0,
        first_failure: None,
    };
    for trial in 0..n_trials {
        let trial_seed = split_seed(seed, trial);
        let (mut gap_bad, mut theorem_bad, mut bayes_bad, mut oracle_bad) = (false, false, false, false);
        for (k, constraint) in JointConstraint::ALL.into_iter().enumerate() {
            let joint_seed = split_seed(trial_seed, k as u64);
            let j = random_joint(joint_seed, constraint);
            let check = check_joint(&j, &condition);
            report.n_joints += 1;
            report.max_abs_residual = report.max_abs_residual.max(check.max_residual());
            gap_bad |= !check.gap_identity_ok();
            theorem_bad |= check.theorem_violated;
            bayes_bad |= !check.bayes_ok();
            oracle_bad |= !check.oracle_ok();
            if !check.passed() && report.first_failure.is_none() {
                report.first_failure = Some(SweepFailure {
                    trial,
                    joint_seed,
                    constraint,
                });
            }
        }
        report.n_gap_identity_violations += gap_bad as u64;
        report.n_theorem_violations += theorem_bad as u64;
        report.n_bayes_violations += bayes_bad as u64;
        report.n_oracle_violations += oracle_bad as u64;
    }
    report
}
