//! Closed-form payoffs, the Bayes link between the conditional tables, and
//! the if-and-only-if synergy conditions for two equally weighted voters.

use crate::category::OutcomeCategory::{self, Favor, Neutral, Oppose};
use crate::dist::{ConditionalTable, JointDist, MarginalDist};
use crate::error::{Error, Result};
use crate::{IDENTITY_TOLERANCE, NEUTRAL_TOLERANCE};
use serde::{Deserialize, Serialize};

/// `V(h) = (+1)·P(favor) + 0·P(neutral) + (-1)·P(oppose)`.
pub fn expected_payoff(m: &MarginalDist) -> f64 {
    OutcomeCategory::ALL
        .iter()
        .map(|&c| c.payoff() * m.get(c))
        .sum()
}

/// `V = 2·AUC − 1`.
pub fn payoff_from_auc(auc: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&auc) {
        return Err(Error::OutOfRange {
            what: "auc",
            value: auc,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(2.0 * auc - 1.0)
}

/// `AUC = (V + 1) / 2`.
pub fn auc_from_payoff(v: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&v) {
        return Err(Error::OutOfRange {
            what: "payoff",
            value: v,
            lo: -1.0,
            hi: 1.0,
        });
    }
    Ok((v + 1.0) / 2.0)
}

/// Expected payoff of the averaged decision `(h1 + h2) / 2`.
///
/// The average favors the good action exactly when one agent favors it and
/// the other favors it or is neutral; it opposes symmetrically and ties
/// otherwise.
pub fn collective_payoff(j: &JointDist) -> f64 {
    let win = j.get(Favor, Favor) + j.get(Favor, Neutral) + j.get(Neutral, Favor);
    let lose = j.get(Oppose, Oppose) + j.get(Oppose, Neutral) + j.get(Neutral, Oppose);
    win - lose
}

/// `b1 (a2 - c2) + b2 (a1 - c1)`; synergy for independent agents holds iff
/// this is nonnegative.
pub fn synergy_condition_independent(m1: &MarginalDist, m2: &MarginalDist) -> f64 {
    m1.neutral() * (m2.favor() - m2.oppose()) + m2.neutral() * (m1.favor() - m1.oppose())
}

/// `b (P_bA - P_bC) + B (Q_Ba - Q_Bc)` evaluated through joint cells, so
/// that `b·P_bA = j(b, A)` and `B·Q_Ba = j(a, B)` stay defined when a
/// conditioning probability is zero.
pub fn synergy_condition_dependent(j: &JointDist) -> f64 {
    (j.get(Neutral, Favor) - j.get(Neutral, Oppose)) + (j.get(Favor, Neutral) - j.get(Oppose, Neutral))
}

/// The dependent-case condition evaluated from marginals and conditional
/// tables. Undefined rows have zero weight and contribute nothing.
pub fn synergy_condition_from_tables(
    m1: &MarginalDist,
    m2: &MarginalDist,
    p: &ConditionalTable,
    q: &ConditionalTable,
) -> f64 {
    let p_term = p
        .row(Neutral)
        .map_or(0.0, |r| m1.neutral() * (r[Favor.index()] - r[Oppose.index()]));
    let q_term = q
        .row(Neutral)
        .map_or(0.0, |r| m2.neutral() * (r[Favor.index()] - r[Oppose.index()]));
    p_term + q_term
}

/// Largest `|x·P_xY − Y·Q_Yx|` over the nine cells, with `m1`/`p` describing
/// agent 1's side and `m2`/`q` agent 2's. An undefined row contributes a
/// zero product; cells where both conditioning rows are undefined are
/// skipped.
pub fn bayes_residual_tables(
    m1: &MarginalDist,
    m2: &MarginalDist,
    p: &ConditionalTable,
    q: &ConditionalTable,
) -> f64 {
    let mut worst: f64 = 0.0;
    for x in OutcomeCategory::ALL {
        for y in OutcomeCategory::ALL {
            let lhs = p.get(x, y).map(|v| m1.get(x) * v);
            let rhs = q.get(y, x).map(|v| m2.get(y) * v);
            if lhs.is_none() && rhs.is_none() {
                continue;
            }
            worst = worst.max((lhs.unwrap_or(0.0) - rhs.unwrap_or(0.0)).abs());
        }
    }
    worst
}

/// Bayes residual of the tables derived from `j`.
pub fn bayes_residual(j: &JointDist) -> f64 {
    let (m1, m2) = j.marginals();
    let (p, q) = j.conditionals();
    bayes_residual_tables(&m1, &m2, &p, &q)
}

/// True when the probability of being neutral is zero (up to
/// [`NEUTRAL_TOLERANCE`]).
pub fn is_opinion_loaded(m: &MarginalDist) -> bool {
    m.neutral() <= NEUTRAL_TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynergyReport {
    pub v1: f64,
    pub v2: f64,
    pub v_bar: f64,
    /// `v_bar − (v1 + v2) / 2`
    pub gap: f64,
    /// Dependent-case condition; the gap is half of it.
    pub condition_value: f64,
    pub synergistic: bool,
    pub positive_synergy: bool,
    pub opinion_loaded_1: bool,
    pub opinion_loaded_2: bool,
}

impl SynergyReport {
    /// Computes every field without checking the gap identity.
    pub fn compute(j: &JointDist) -> Self {
        Self::compute_with(j, synergy_condition_dependent)
    }

    /// Like [`compute`](Self::compute) but with a caller-supplied condition.
    /// Used to show that the identity checks can fail.
    pub fn compute_with(j: &JointDist, condition: impl Fn(&JointDist) -> f64) -> Self {
        let (m1, m2) = j.marginals();
        let v1 = expected_payoff(&m1);
        let v2 = expected_payoff(&m2);
        let v_bar = collective_payoff(j);
        let gap = v_bar - (v1 + v2) / 2.0;
        Self {
            v1,
            v2,
            v_bar,
            gap,
            condition_value: condition(j),
            synergistic: gap >= -IDENTITY_TOLERANCE,
            positive_synergy: gap > IDENTITY_TOLERANCE,
            opinion_loaded_1: is_opinion_loaded(&m1),
            opinion_loaded_2: is_opinion_loaded(&m2),
        }
    }

    /// `|gap − condition_value / 2|`
    pub fn identity_residual(&self) -> f64 {
        (self.gap - self.condition_value / 2.0).abs()
    }

    pub fn both_opinion_loaded(&self) -> bool {
        self.opinion_loaded_1 && self.opinion_loaded_2
    }
}

/// Full synergy analysis of a joint distribution.
///
/// Fails only if the gap identity or the no-positive-synergy property for
/// two opinion-loaded agents is violated, which would indicate a bug.
pub fn analyze(j: &JointDist) -> Result<SynergyReport> {
    let report = SynergyReport::compute(j);
    let residual = report.identity_residual();
    if residual > IDENTITY_TOLERANCE {
        return Err(Error::InvariantViolation {
            what: "gap = condition_value / 2",
            residual,
        });
    }
    if report.both_opinion_loaded() && report.positive_synergy {
        return Err(Error::InvariantViolation {
            what: "no positive synergy between opinion-loaded agents",
            residual: report.gap,
        });
    }
    Ok(report)
}
