//! Marginal, joint and conditional distributions over relation categories.
//!
//! [`JointDist`] is the canonical representation of two agents' behavior.
//! Marginals and both conditional tables are always derived from it.

use crate::category::OutcomeCategory;
use crate::error::{Error, Result};
use crate::{IDENTITY_TOLERANCE, SUM_TOLERANCE};
use serde::{Deserialize, Serialize};

/// Probabilities that one agent favors, is neutral about, or opposes the
/// good action.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMarginal")]
pub struct MarginalDist {
    favor: f64,
    neutral: f64,
    oppose: f64,
}

#[derive(Deserialize)]
struct RawMarginal {
    favor: f64,
    neutral: f64,
    oppose: f64,
}

impl TryFrom<RawMarginal> for MarginalDist {
    type Error = Error;

    /// Validates without rescaling, so serialized values come back bit-exact.
    fn try_from(raw: RawMarginal) -> Result<Self> {
        let p = [raw.favor, raw.neutral, raw.oppose];
        MarginalDist::validate(p)?;
        Ok(Self {
            favor: p[0],
            neutral: p[1],
            oppose: p[2],
        })
    }
}

impl MarginalDist {
    /// Validates and renormalizes `(favor, neutral, oppose)`.
    pub fn new(favor: f64, neutral: f64, oppose: f64) -> Result<Self> {
        Self::from_array([favor, neutral, oppose])
    }

    pub fn from_array(p: [f64; 3]) -> Result<Self> {
        let sum = Self::validate(p)?;
        Ok(Self {
            favor: p[0] / sum,
            neutral: p[1] / sum,
            oppose: p[2] / sum,
        })
    }

    /// Checks the components and returns their sum.
    fn validate(p: [f64; 3]) -> Result<f64> {
        for (i, &v) in p.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: 0, col: i, value: v });
            }
            if v < 0.0 {
                return Err(Error::Negative { row: 0, col: i, value: v });
            }
            if v > 1.0 + SUM_TOLERANCE {
                return Err(Error::AboveOne { index: i, value: v });
            }
        }
        let sum = p[0] + p[1] + p[2];
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: SUM_TOLERANCE,
            });
        }
        Ok(sum)
    }

    /// Uniform over the three categories.
    pub fn uniform() -> Self {
        let third = 1.0 / 3.0;
        Self {
            favor: third,
            neutral: third,
            oppose: third,
        }
    }

    /// All mass on one category.
    pub fn point(category: OutcomeCategory) -> Self {
        let mut p = [0.0; 3];
        p[category.index()] = 1.0;
        Self {
            favor: p[0],
            neutral: p[1],
            oppose: p[2],
        }
    }

    pub fn favor(&self) -> f64 {
        self.favor
    }

    pub fn neutral(&self) -> f64 {
        self.neutral
    }

    pub fn oppose(&self) -> f64 {
        self.oppose
    }

    pub fn get(&self, category: OutcomeCategory) -> f64 {
        self.to_array()[category.index()]
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.favor, self.neutral, self.oppose]
    }
}

/// Joint distribution of both agents' categories. Row is agent 1, column is
/// agent 2, both indexed in [`OutcomeCategory`] order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 3]; 3]", into = "[[f64; 3]; 3]")]
pub struct JointDist {
    cells: [[f64; 3]; 3],
}

impl TryFrom<[[f64; 3]; 3]> for JointDist {
    type Error = Error;

    /// Validates without rescaling, so serialized values come back bit-exact.
    fn try_from(cells: [[f64; 3]; 3]) -> Result<Self> {
        JointDist::validate(&cells)?;
        Ok(Self { cells })
    }
}

impl From<JointDist> for [[f64; 3]; 3] {
    fn from(j: JointDist) -> Self {
        j.cells
    }
}

impl JointDist {
    /// Validates the matrix (finite, nonnegative, sums to 1 within
    /// [`SUM_TOLERANCE`]) and renormalizes it.
    pub fn new(cells: [[f64; 3]; 3]) -> Result<Self> {
        let sum = Self::validate(&cells)?;
        Ok(Self {
            cells: cells.map(|r| r.map(|v| v / sum)),
        })
    }

    fn validate(cells: &[[f64; 3]; 3]) -> Result<f64> {
        let mut sum = 0.0;
        for (row, r) in cells.iter().enumerate() {
            for (col, &v) in r.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row, col, value: v });
                }
                if v < 0.0 {
                    return Err(Error::Negative { row, col, value: v });
                }
                sum += v;
            }
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: SUM_TOLERANCE,
            });
        }
        Ok(sum)
    }

    /// Outer product `m1 ⊗ m2`: the joint of two independent agents.
    pub fn independent(m1: &MarginalDist, m2: &MarginalDist) -> Self {
        let (a, b) = (m1.to_array(), m2.to_array());
        Self {
            cells: std::array::from_fn(|x| std::array::from_fn(|y| a[x] * b[y])),
        }
    }

    pub fn uniform() -> Self {
        Self {
            cells: [[1.0 / 9.0; 3]; 3],
        }
    }

    /// All mass on `(agent1, agent2)`.
    pub fn point(agent1: OutcomeCategory, agent2: OutcomeCategory) -> Self {
        let mut cells = [[0.0; 3]; 3];
        cells[agent1.index()][agent2.index()] = 1.0;
        Self { cells }
    }

    #[inline]
    pub fn get(&self, agent1: OutcomeCategory, agent2: OutcomeCategory) -> f64 {
        self.cells[agent1.index()][agent2.index()]
    }

    pub fn cells(&self) -> &[[f64; 3]; 3] {
        &self.cells
    }

    fn row_sums(&self) -> [f64; 3] {
        self.cells.map(|r| r[0] + r[1] + r[2])
    }

    fn col_sums(&self) -> [f64; 3] {
        std::array::from_fn(|y| self.cells[0][y] + self.cells[1][y] + self.cells[2][y])
    }

    /// Row sums (agent 1) and column sums (agent 2).
    pub fn marginals(&self) -> (MarginalDist, MarginalDist) {
        let to_marginal = |s: [f64; 3]| MarginalDist {
            favor: s[0],
            neutral: s[1],
            oppose: s[2],
        };
        (to_marginal(self.row_sums()), to_marginal(self.col_sums()))
    }

    /// The P table (agent 2 given agent 1) and the Q table (agent 1 given
    /// agent 2). Rows whose conditioning probability is zero are undefined.
    pub fn conditionals(&self) -> (ConditionalTable, ConditionalTable) {
        let rows = self.row_sums();
        let cols = self.col_sums();
        let p = std::array::from_fn(|x| {
            (rows[x] > 0.0).then(|| self.cells[x].map(|v| v / rows[x]))
        });
        let q = std::array::from_fn(|y| {
            (cols[y] > 0.0).then(|| std::array::from_fn(|x| self.cells[x][y] / cols[y]))
        });
        (
            ConditionalTable {
                direction: Conditioning::Agent2GivenAgent1,
                rows: p,
            },
            ConditionalTable {
                direction: Conditioning::Agent1GivenAgent2,
                rows: q,
            },
        )
    }

    /// Swaps the roles of the two agents.
    pub fn transpose(&self) -> Self {
        Self {
            cells: std::array::from_fn(|x| std::array::from_fn(|y| self.cells[y][x])),
        }
    }
}

/// Which agent a [`ConditionalTable`] conditions on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conditioning {
    /// `P[x][Y] = P(agent 2 is Y | agent 1 is x)`
    #[serde(rename = "p")]
    Agent2GivenAgent1,
    /// `Q[Y][x] = P(agent 1 is x | agent 2 is Y)`
    #[serde(rename = "q")]
    Agent1GivenAgent2,
}

/// Row-stochastic 3x3 table of conditional category probabilities.
///
/// `rows[k]` is `None` when the conditioning category `k` has probability
/// zero, in which case the conditional distribution is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalTable {
    direction: Conditioning,
    rows: [Option<[f64; 3]>; 3],
}

impl ConditionalTable {
    /// Builds a table from explicit rows. Each defined row must be
    /// nonnegative and sum to 1 within [`IDENTITY_TOLERANCE`].
    pub fn new(direction: Conditioning, rows: [Option<[f64; 3]>; 3]) -> Result<Self> {
        for (row, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (col, &v) in r.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row, col, value: v });
                }
                if v < 0.0 {
                    return Err(Error::Negative { row, col, value: v });
                }
            }
            let sum = r[0] + r[1] + r[2];
            if (sum - 1.0).abs() > IDENTITY_TOLERANCE {
                return Err(Error::NotNormalized {
                    sum,
                    tolerance: IDENTITY_TOLERANCE,
                });
            }
        }
        Ok(Self { direction, rows })
    }

    pub fn direction(&self) -> Conditioning {
        self.direction
    }

    pub fn row(&self, given: OutcomeCategory) -> Option<&[f64; 3]> {
        self.rows[given.index()].as_ref()
    }

    /// Conditional probability of `outcome` given `given`, `None` when the
    /// conditioning row is undefined.
    pub fn get(&self, given: OutcomeCategory, outcome: OutcomeCategory) -> Option<f64> {
        self.row(given).map(|r| r[outcome.index()])
    }

    pub fn rows(&self) -> &[Option<[f64; 3]>; 3] {
        &self.rows
    }

    pub fn is_defined(&self, given: OutcomeCategory) -> bool {
        self.rows[given.index()].is_some()
    }
}
