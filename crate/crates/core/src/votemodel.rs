//! The full 16-outcome space of two binary voters.
//!
//! Each agent casts a 0/1 vote on the good action and on the bad action.
//! This is the finest description of the two-voter setup and serves as the
//! ground truth for the category-level formulas in [`crate::synergy`].

use crate::category::OutcomeCategory;
use crate::dist::JointDist;
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, simplex};
use crate::SUM_TOLERANCE;

/// Category of a binary voter from its votes on the good and bad action.
pub fn category_of(vote_good: bool, vote_bad: bool) -> OutcomeCategory {
    OutcomeCategory::from_margin(vote_margin(vote_good, vote_bad))
}

#[inline]
fn vote_margin(vote_good: bool, vote_bad: bool) -> i32 {
    vote_good as i32 - vote_bad as i32
}

/// Votes `(h1(G), h1(B), h2(G), h2(B))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VoteTuple {
    pub agent1_good: bool,
    pub agent1_bad: bool,
    pub agent2_good: bool,
    pub agent2_bad: bool,
}

impl VoteTuple {
    /// Bit `3` is `h1(G)`, bit `2` is `h1(B)`, bit `1` is `h2(G)`, bit `0` is `h2(B)`.
    pub const fn from_index(index: usize) -> Self {
        Self {
            agent1_good: index & 0b1000 != 0,
            agent1_bad: index & 0b0100 != 0,
            agent2_good: index & 0b0010 != 0,
            agent2_bad: index & 0b0001 != 0,
        }
    }

    pub const fn index(self) -> usize {
        (self.agent1_good as usize) << 3
            | (self.agent1_bad as usize) << 2
            | (self.agent2_good as usize) << 1
            | self.agent2_bad as usize
    }

    pub fn all() -> impl Iterator<Item = VoteTuple> {
        (0..16).map(Self::from_index)
    }

    pub fn margins(self) -> (i32, i32) {
        (
            vote_margin(self.agent1_good, self.agent1_bad),
            vote_margin(self.agent2_good, self.agent2_bad),
        )
    }

    pub fn categories(self) -> (OutcomeCategory, OutcomeCategory) {
        (
            category_of(self.agent1_good, self.agent1_bad),
            category_of(self.agent2_good, self.agent2_bad),
        )
    }

    /// Category of the averaged vote, decided by the sign of the summed
    /// integer margins.
    pub fn collective_category(self) -> OutcomeCategory {
        let (m1, m2) = self.margins();
        OutcomeCategory::from_margin(m1 + m2)
    }
}

/// Probability distribution over the 16 vote tuples, indexed by
/// [`VoteTuple::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoteJoint {
    p: [f64; 16],
}

impl VoteJoint {
    pub fn new(p: [f64; 16]) -> Result<Self> {
        let mut sum = 0.0;
        for (i, &v) in p.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: 0, col: i, value: v });
            }
            if v < 0.0 {
                return Err(Error::Negative { row: 0, col: i, value: v });
            }
            sum += v;
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: SUM_TOLERANCE,
            });
        }
        Ok(Self { p: p.map(|v| v / sum) })
    }

    pub fn uniform() -> Self {
        Self { p: [1.0 / 16.0; 16] }
    }

    pub fn point(t: VoteTuple) -> Self {
        let mut p = [0.0; 16];
        p[t.index()] = 1.0;
        Self { p }
    }

    pub fn prob(&self, t: VoteTuple) -> f64 {
        self.p[t.index()]
    }

    pub fn probs(&self) -> &[f64; 16] {
        &self.p
    }

    /// Embeds a category joint into vote space. Favor maps to votes (1, 0),
    /// oppose to (0, 1), and neutral mass is split evenly between (0, 0)
    /// and (1, 1).
    pub fn lift(j: &JointDist) -> Self {
        let mut p = [0.0; 16];
        for t in VoteTuple::all() {
            let (x, y) = t.categories();
            let share = |c: OutcomeCategory| if c == OutcomeCategory::Neutral { 0.5 } else { 1.0 };
            p[t.index()] = j.get(x, y) * share(x) * share(y);
        }
        Self { p }
    }
}

/// Marginalizes vote tuples onto the 3x3 category joint.
pub fn reduce_to_categories(vj: &VoteJoint) -> JointDist {
    let mut cells = [[0.0; 3]; 3];
    for t in VoteTuple::all() {
        let (x, y) = t.categories();
        cells[x.index()][y.index()] += vj.prob(t);
    }
    JointDist::new(cells).expect("a vote joint reduces to a valid category joint")
}

/// `P(average favors good) − P(average favors bad)` by direct enumeration of
/// all 16 vote tuples.
pub fn collective_payoff_bruteforce(vj: &VoteJoint) -> f64 {
    VoteTuple::all()
        .map(|t| t.collective_category().margin() as f64 * vj.prob(t))
        .sum()
}

/// Simplex-uniform vote joint, deterministic in `seed`.
pub fn random_vote_joint(seed: u64) -> VoteJoint {
    let mut rng = rng_from_seed(seed);
    VoteJoint { p: simplex(&mut rng) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synergy::collective_payoff;
    use OutcomeCategory::*;

    fn t(g1: u8, b1: u8, g2: u8, b2: u8) -> VoteTuple {
        VoteTuple {
            agent1_good: g1 == 1,
            agent1_bad: b1 == 1,
            agent2_good: g2 == 1,
            agent2_bad: b2 == 1,
        }
    }

    #[test]
    fn categories_of_votes() {
        assert_eq!(category_of(true, false), Favor);
        assert_eq!(category_of(true, true), Neutral);
        assert_eq!(category_of(false, false), Neutral);
        assert_eq!(category_of(false, true), Oppose);
    }

    #[test]
    fn tuple_indexing_is_a_bijection() {
        let all: std::collections::HashSet<VoteTuple> = VoteTuple::all().collect();
        assert_eq!(all.len(), 16);
        for i in 0..16 {
            assert_eq!(VoteTuple::from_index(i).index(), i);
        }
        assert_eq!(t(1, 0, 1, 0).index(), 0b1010);
    }

    #[test]
    fn favor_set_is_exactly_the_three_listed_cases() {
        let favor_margins = [(1, 1), (1, 0), (0, 1)];
        let oppose_margins = [(-1, -1), (-1, 0), (0, -1)];
        for tuple in VoteTuple::all() {
            let m = tuple.margins();
            let c = tuple.collective_category();
            assert_eq!(c == Favor, favor_margins.contains(&m), "{tuple:?}");
            assert_eq!(c == Oppose, oppose_margins.contains(&m), "{tuple:?}");
        }
    }

    #[test]
    fn reduce_point_and_uniform() {
        let j = reduce_to_categories(&VoteJoint::point(t(1, 0, 1, 0)));
        assert_eq!(j, JointDist::point(Favor, Favor));

        let j = reduce_to_categories(&VoteJoint::uniform());
        let m = [0.25, 0.5, 0.25];
        for x in OutcomeCategory::ALL {
            for y in OutcomeCategory::ALL {
                assert!((j.get(x, y) - m[x.index()] * m[y.index()]).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn reduce_random_joint_by_direct_summation() {
        let vj = random_vote_joint(11);
        let j = reduce_to_categories(&vj);
        // (Neutral, Neutral) collects the four tuples with both agents at
        // (0,0) or (1,1)
        let nn = [t(0, 0, 0, 0), t(0, 0, 1, 1), t(1, 1, 0, 0), t(1, 1, 1, 1)]
            .iter()
            .map(|&x| vj.prob(x))
            .sum::<f64>();
        assert!((j.get(Neutral, Neutral) - nn).abs() <= 1e-15);
        let fn_ = vj.prob(t(1, 0, 0, 0)) + vj.prob(t(1, 0, 1, 1));
        assert!((j.get(Favor, Neutral) - fn_).abs() <= 1e-15);
        assert!((j.get(Oppose, Favor) - vj.prob(t(0, 1, 1, 0))).abs() <= 1e-15);
        let total: f64 = j.cells().iter().flatten().sum();
        assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(collective_payoff_bruteforce(&VoteJoint::point(t(1, 0, 0, 0))), 1.0);
        assert_eq!(collective_payoff_bruteforce(&VoteJoint::point(t(1, 0, 0, 1))), 0.0);
        assert_eq!(collective_payoff_bruteforce(&VoteJoint::point(t(0, 1, 1, 1))), -1.0);
    }

    #[test]
    fn bruteforce_matches_category_formula() {
        for seed in 0..2000 {
            let vj = random_vote_joint(seed);
            let brute = collective_payoff_bruteforce(&vj);
            let formula = collective_payoff(&reduce_to_categories(&vj));
            assert!((brute - formula).abs() <= 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn random_vote_joint_is_deterministic_and_normalized() {
        assert_eq!(random_vote_joint(5), random_vote_joint(5));
        assert_ne!(random_vote_joint(5), random_vote_joint(6));
        let s: f64 = random_vote_joint(5).probs().iter().sum();
        assert!((s - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn random_vote_joint_cell_means() {
        let n = 1000;
        let mut mean = [0.0; 16];
        for seed in 0..n {
            for (m, p) in mean.iter_mut().zip(random_vote_joint(seed).probs()) {
                *m += p / n as f64;
            }
        }
        let bound = 3.0 / (n as f64).sqrt() * (1.0 / 16.0) * 4.0;
        for m in mean {
            assert!((m - 1.0 / 16.0).abs() <= bound, "mean {m}");
        }
    }

    #[test]
    fn lift_round_trips_and_preserves_payoff() {
        let j = JointDist::new([[0.30, 0.05, 0.05], [0.00, 0.05, 0.25], [0.10, 0.05, 0.15]]).unwrap();
        let vj = VoteJoint::lift(&j);
        let back = reduce_to_categories(&vj);
        for x in OutcomeCategory::ALL {
            for y in OutcomeCategory::ALL {
                assert!((back.get(x, y) - j.get(x, y)).abs() <= 1e-15);
            }
        }
        assert!((collective_payoff_bruteforce(&vj) - collective_payoff(&j)).abs() <= 1e-12);
    }

    #[test]
    fn vote_joint_validation() {
        let mut p = [1.0 / 16.0; 16];
        p[3] = -p[3];
        assert!(matches!(VoteJoint::new(p), Err(Error::Negative { .. })));
        assert!(matches!(VoteJoint::new([0.1; 16]), Err(Error::NotNormalized { .. })));
    }
}
