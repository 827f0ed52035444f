//! Relation categories and the fixed `+1 / 0 / -1` payoff schema.

use serde::{Deserialize, Serialize};
use std::fmt;

/// How an agent's scores for the good and bad action compare.
///
/// The declaration order (`Favor < Neutral < Oppose`) is the row and column
/// order of every 3x3 table in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeCategory {
    /// `h(G) > h(B)`
    Favor,
    /// `h(G) = h(B)`
    Neutral,
    /// `h(G) < h(B)`
    Oppose,
}

impl OutcomeCategory {
    pub const ALL: [OutcomeCategory; 3] = [Self::Favor, Self::Neutral, Self::Oppose];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    /// Category of the comparison `score_good` vs `score_bad`.
    pub fn of_scores<T: PartialOrd>(score_good: T, score_bad: T) -> Self {
        if score_good > score_bad {
            Self::Favor
        } else if score_good < score_bad {
            Self::Oppose
        } else {
            Self::Neutral
        }
    }

    /// Vote margin `h(G) - h(B)` of a binary voter in this category.
    #[inline]
    pub const fn margin(self) -> i8 {
        match self {
            Self::Favor => 1,
            Self::Neutral => 0,
            Self::Oppose => -1,
        }
    }

    /// Category of an integer vote margin, classified by sign.
    pub const fn from_margin(margin: i32) -> Self {
        if margin > 0 {
            Self::Favor
        } else if margin < 0 {
            Self::Oppose
        } else {
            Self::Neutral
        }
    }

    #[inline]
    pub const fn payoff(self) -> f64 {
        PayoffSchema::STANDARD.payoff(self)
    }
}

impl fmt::Display for OutcomeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Favor => "favor",
            Self::Neutral => "neutral",
            Self::Oppose => "oppose",
        })
    }
}

/// Payoffs for favoring the good action, staying neutral and favoring the
/// bad action. Only the standard schema exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffSchema {
    favor: f64,
    neutral: f64,
    oppose: f64,
}

impl PayoffSchema {
    pub const STANDARD: PayoffSchema = PayoffSchema {
        favor: 1.0,
        neutral: 0.0,
        oppose: -1.0,
    };

    pub const fn favor_payoff(&self) -> f64 {
        self.favor
    }

    pub const fn neutral_payoff(&self) -> f64 {
        self.neutral
    }

    pub const fn oppose_payoff(&self) -> f64 {
        self.oppose
    }

    pub const fn payoff(&self, category: OutcomeCategory) -> f64 {
        match category {
            OutcomeCategory::Favor => self.favor,
            OutcomeCategory::Neutral => self.neutral,
            OutcomeCategory::Oppose => self.oppose,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order_matches_table_layout() {
        assert_eq!(OutcomeCategory::Favor.index(), 0);
        assert_eq!(OutcomeCategory::Neutral.index(), 1);
        assert_eq!(OutcomeCategory::Oppose.index(), 2);
        assert!(OutcomeCategory::Favor < OutcomeCategory::Neutral);
        assert!(OutcomeCategory::Neutral < OutcomeCategory::Oppose);
        for c in OutcomeCategory::ALL {
            assert_eq!(OutcomeCategory::from_index(c.index()), Some(c));
        }
        assert_eq!(OutcomeCategory::from_index(3), None);
    }

    #[test]
    fn standard_schema() {
        let s = PayoffSchema::STANDARD;
        assert_eq!(s.favor_payoff(), 1.0);
        assert_eq!(s.neutral_payoff(), 0.0);
        assert_eq!(s.oppose_payoff(), -1.0);
        for c in OutcomeCategory::ALL {
            assert_eq!(c.payoff(), c.margin() as f64);
        }
    }

    #[test]
    fn scores_and_margins() {
        assert_eq!(OutcomeCategory::of_scores(2.0, 1.0), OutcomeCategory::Favor);
        assert_eq!(OutcomeCategory::of_scores(1, 1), OutcomeCategory::Neutral);
        assert_eq!(OutcomeCategory::of_scores(0, 1), OutcomeCategory::Oppose);
        assert_eq!(OutcomeCategory::from_margin(2), OutcomeCategory::Favor);
        assert_eq!(OutcomeCategory::from_margin(0), OutcomeCategory::Neutral);
        assert_eq!(OutcomeCategory::from_margin(-1), OutcomeCategory::Oppose);
    }
}
