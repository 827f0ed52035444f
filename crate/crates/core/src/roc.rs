//! Empirical ROC curves and tie-corrected AUC.
//!
//! Positives are the class expected to score high (healthy patients, the
//! good action); negatives the class expected to score low. A threshold `c`
//! classifies a score as positive when `score >= c`, which is the
//! "sick if below `c`" rule read from the positive side. The curve is swept
//! from `c = +inf` (nothing positive, point `(0, 0)`) down to `c = -inf`
//! (everything positive, point `(1, 1)`).

use crate::error::{Error, Result};
use crate::synergy::payoff_from_auc;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Labeled scores. Both classes must be non-empty and every score finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSample {
    positives: Vec<f64>,
    negatives: Vec<f64>,
}

impl ScoreSample {
    pub fn new(positives: Vec<f64>, negatives: Vec<f64>) -> Result<Self> {
        if let Some(&value) = positives.iter().chain(&negatives).find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteScore { value });
        }
        if positives.is_empty() {
            return Err(Error::InsufficientData("no positive scores"));
        }
        if negatives.is_empty() {
            return Err(Error::InsufficientData("no negative scores"));
        }
        Ok(Self {
            positives,
            negatives,
        })
    }

    pub fn positives(&self) -> &[f64] {
        &self.positives
    }

    pub fn negatives(&self) -> &[f64] {
        &self.negatives
    }

    /// Same scores with the class labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            positives: self.negatives.clone(),
            negatives: self.positives.clone(),
        }
    }

    /// Applies `f` to every score. `f` must return finite values.
    pub fn map_scores(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.positives.iter().map(|&x| f(x)).collect(),
            self.negatives.iter().map(|&x| f(x)).collect(),
        )
    }

    /// Scores tagged `true` for positives, sorted descending.
    fn sorted_desc(&self) -> Vec<(f64, bool)> {
        let mut all: Vec<(f64, bool)> = self
            .positives
            .iter()
            .map(|&s| (s, true))
            .chain(self.negatives.iter().map(|&s| (s, false)))
            .collect();
        all.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
        all
    }

    /// Tie blocks in descending score order as `(positives, negatives)` counts.
    fn tie_blocks(&self) -> Vec<(u64, u64)> {
        let sorted = self.sorted_desc();
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let score = sorted[i].0;
            let (mut pos, mut neg) = (0, 0);
            while i < sorted.len() && sorted[i].0 == score {
                if sorted[i].1 {
                    pos += 1;
                } else {
                    neg += 1;
                }
                i += 1;
            }
            blocks.push((pos, neg));
        }
        blocks
    }
}

/// Exact pair counts behind the AUC: over all `(positive, negative)` pairs,
/// how many the positive wins and how many tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCounts {
    pub wins: u64,
    pub ties: u64,
    pub pairs: u64,
}

impl PairCounts {
    /// `(wins + ties / 2) / pairs`
    pub fn auc(&self) -> f64 {
        (2 * self.wins + self.ties) as f64 / (2 * self.pairs) as f64
    }

    pub fn losses(&self) -> u64 {
        self.pairs - self.wins - self.ties
    }
}

/// Pair counts by sorting and walking tie blocks, `O(n log n)`.
pub fn pair_counts(s: &ScoreSample) -> PairCounts {
    let mut wins = 0;
    let mut ties = 0;
    let mut negatives_below = s.negatives.len() as u64;
    for (pos, neg) in s.tie_blocks() {
        negatives_below -= neg;
        wins += pos * negatives_below;
        ties += pos * neg;
    }
    PairCounts {
        wins,
        ties,
        pairs: (s.positives.len() * s.negatives.len()) as u64,
    }
}

/// Probability that a random positive outscores a random negative, with
/// ties counted as one half.
pub fn empirical_auc(s: &ScoreSample) -> f64 {
    pair_counts(s).auc()
}

/// `2·AUC − 1`.
pub fn payoff_estimate(s: &ScoreSample) -> f64 {
    payoff_from_auc(empirical_auc(s)).expect("AUC lies in [0, 1]")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    points: Vec<RocPoint>,
}

impl RocCurve {
    /// Requires a path from `(0, 0)` to `(1, 1)` with both coordinates in
    /// `[0, 1]` and non-decreasing.
    pub fn new(points: Vec<RocPoint>) -> Result<Self> {
        let in_unit = |v: f64| (0.0..=1.0).contains(&v);
        let ok = points.first() == Some(&RocPoint { fpr: 0.0, tpr: 0.0 })
            && points.last() == Some(&RocPoint { fpr: 1.0, tpr: 1.0 })
            && points.iter().all(|p| in_unit(p.fpr) && in_unit(p.tpr))
            && points
                .windows(2)
                .all(|w| w[0].fpr <= w[1].fpr && w[0].tpr <= w[1].tpr);
        if !ok {
            return Err(Error::InsufficientData(
                "ROC points must run monotonically from (0, 0) to (1, 1)",
            ));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[RocPoint] {
        &self.points
    }
}

/// Sweeps the threshold down through every distinct score. A tie block
/// moves both rates at once, giving a diagonal segment.
pub fn roc_curve(s: &ScoreSample) -> RocCurve {
    let n_pos = s.positives.len() as f64;
    let n_neg = s.negatives.len() as f64;
    let mut points = vec![RocPoint { fpr: 0.0, tpr: 0.0 }];
    let (mut tp, mut fp) = (0u64, 0u64);
    for (pos, neg) in s.tie_blocks() {
        tp += pos;
        fp += neg;
        points.push(RocPoint {
            fpr: fp as f64 / n_neg,
            tpr: tp as f64 / n_pos,
        });
    }
    RocCurve { points }
}

/// Trapezoidal area under TPR as a function of FPR.
pub fn trapezoid_area(curve: &RocCurve) -> f64 {
    curve
        .points
        .windows(2)
        .map(|w| (w[1].fpr - w[0].fpr) * (w[0].tpr + w[1].tpr) / 2.0)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(p: &[f64], n: &[f64]) -> ScoreSample {
        ScoreSample::new(p.to_vec(), n.to_vec()).unwrap()
    }

    /// Quadratic pairwise estimator.
    fn auc_double_loop(s: &ScoreSample) -> f64 {
        let mut total = 0.0;
        for &g in s.positives() {
            for &b in s.negatives() {
                total += if g > b {
                    1.0
                } else if g == b {
                    0.5
                } else {
                    0.0
                };
            }
        }
        total / (s.positives().len() * s.negatives().len()) as f64
    }

    fn pts(v: &[(f64, f64)]) -> Vec<RocPoint> {
        v.iter().map(|&(fpr, tpr)| RocPoint { fpr, tpr }).collect()
    }

    #[test]
    fn auc_examples() {
        assert_eq!(empirical_auc(&sample(&[3.0, 2.0], &[1.0])), 1.0);
        assert_eq!(empirical_auc(&sample(&[1.0], &[1.0])), 0.5);
        let s = sample(&[2.0, 1.0], &[2.0, 0.0]);
        assert_eq!(auc_double_loop(&s), 0.625);
        assert_eq!(empirical_auc(&s), 0.625);
        assert_eq!(
            pair_counts(&s),
            PairCounts {
                wins: 2,
                ties: 1,
                pairs: 4
            }
        );
    }

    #[test]
    fn empty_or_non_finite_samples_are_rejected() {
        assert_eq!(
            ScoreSample::new(vec![], vec![1.0]),
            Err(Error::InsufficientData("no positive scores"))
        );
        assert_eq!(
            ScoreSample::new(vec![1.0], vec![]),
            Err(Error::InsufficientData("no negative scores"))
        );
        assert!(matches!(
            ScoreSample::new(vec![f64::NAN], vec![1.0]),
            Err(Error::NonFiniteScore { .. })
        ));
    }

    #[test]
    fn curve_examples() {
        assert_eq!(
            roc_curve(&sample(&[1.0], &[0.0])).points(),
            pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)])
        );
        assert_eq!(
            roc_curve(&sample(&[4.0, 4.0], &[4.0, 4.0, 4.0])).points(),
            pts(&[(0.0, 0.0), (1.0, 1.0)])
        );
        let c = roc_curve(&sample(&[2.0, 1.0], &[2.0, 0.0]));
        assert_eq!(c.points(), pts(&[(0.0, 0.0), (0.5, 0.5), (0.5, 1.0), (1.0, 1.0)]));
        assert_eq!(trapezoid_area(&c), 0.625);
    }

    #[test]
    fn trapezoid_examples() {
        let diag = RocCurve::new(pts(&[(0.0, 0.0), (1.0, 1.0)])).unwrap();
        assert_eq!(trapezoid_area(&diag), 0.5);
        let perfect = RocCurve::new(pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)])).unwrap();
        assert_eq!(trapezoid_area(&perfect), 1.0);
        assert!(RocCurve::new(pts(&[(0.0, 0.0), (0.6, 0.5), (0.5, 1.0), (1.0, 1.0)])).is_err());
        assert!(RocCurve::new(pts(&[(0.0, 0.0), (0.5, 0.5)])).is_err());
    }

    #[test]
    fn payoff_examples() {
        assert_eq!(payoff_estimate(&sample(&[5.0, 6.0], &[1.0, 2.0])), 1.0);
        assert_eq!(payoff_estimate(&sample(&[3.0, 3.0], &[3.0])), 0.0);
        assert_eq!(payoff_estimate(&sample(&[2.0, 1.0], &[2.0, 0.0])), 0.25);
    }

    #[test]
    fn swap_reverses_counts() {
        let s = sample(&[2.0, 1.0, 1.0, 5.0], &[2.0, 0.0, 1.0]);
        let c = pair_counts(&s);
        let w = pair_counts(&s.swapped());
        assert_eq!(w.wins, c.losses());
        assert_eq!(w.ties, c.ties);
        assert_eq!(auc_double_loop(&s), empirical_auc(&s));
    }
}
