use proptest::prelude::*;
use synergy_core::dist::{JointDist, MarginalDist};
use synergy_core::roc::{empirical_auc, pair_counts, roc_curve, trapezoid_area, ScoreSample};
use synergy_core::synergy::{
    analyze, auc_from_payoff, bayes_residual, collective_payoff, expected_payoff,
    payoff_from_auc, synergy_condition_dependent, synergy_condition_independent,
};
use synergy_core::votemodel::{collective_payoff_bruteforce, reduce_to_categories, VoteJoint};
use synergy_core::OutcomeCategory::*;

const TOL: f64 = 1e-12;

/// Nonnegative weights with a good chance of exact zeros, normalized.
fn weights<const N: usize>() -> impl Strategy<Value = [f64; N]> {
    proptest::collection::vec(prop_oneof![1 => Just(0.0), 3 => 0.0..1.0f64], N)
        .prop_filter("some mass", |w| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|w| {
            let s: f64 = w.iter().sum();
            std::array::from_fn(|i| w[i] / s)
        })
}

fn joint() -> impl Strategy<Value = JointDist> {
    weights::<9>().prop_map(|p| {
        JointDist::new(std::array::from_fn(|x| std::array::from_fn(|y| p[3 * x + y]))).unwrap()
    })
}

fn marginal() -> impl Strategy<Value = MarginalDist> {
    weights::<3>().prop_map(|p| MarginalDist::from_array(p).unwrap())
}

fn loaded_joint() -> impl Strategy<Value = JointDist> {
    weights::<4>().prop_map(|p| JointDist::new([[p[0], 0.0, p[1]], [0.0; 3], [p[2], 0.0, p[3]]]).unwrap())
}

fn scores() -> impl Strategy<Value = ScoreSample> {
    let score = prop_oneof![(0..6i32).prop_map(f64::from), -10.0..10.0f64];
    (
        proptest::collection::vec(score.clone(), 1..40),
        proptest::collection::vec(score, 1..40),
    )
        .prop_map(|(p, n)| ScoreSample::new(p, n).unwrap())
}

proptest! {
    #[test]
    fn gap_is_half_the_condition(j in joint()) {
        let r = analyze(&j).unwrap();
        prop_assert!((r.gap - synergy_condition_dependent(&j) / 2.0).abs() <= TOL);
        prop_assert_eq!(r.synergistic, r.gap >= -TOL);
        prop_assert_eq!(r.positive_synergy, r.gap > TOL);
    }

    #[test]
    fn dependent_condition_specializes(m1 in marginal(), m2 in marginal()) {
        let j = JointDist::independent(&m1, &m2);
        prop_assert!(
            (synergy_condition_dependent(&j) - synergy_condition_independent(&m1, &m2)).abs() <= TOL
        );
    }

    #[test]
    fn opinion_loaded_agents_gain_nothing(j in loaded_joint()) {
        let r = analyze(&j).unwrap();
        prop_assert!(r.opinion_loaded_1 && r.opinion_loaded_2);
        prop_assert!(r.gap.abs() <= TOL);
        prop_assert!(!r.positive_synergy);
    }

    #[test]
    fn no_worse_than_random_agents_are_synergistic(m1 in marginal(), m2 in marginal()) {
        let fix = |m: MarginalDist| {
            let [a, b, c] = m.to_array();
            MarginalDist::new(a.max(c), b, a.min(c)).unwrap()
        };
        let (m1, m2) = (fix(m1), fix(m2));
        prop_assert!(synergy_condition_independent(&m1, &m2) >= -TOL);
    }

    #[test]
    fn neutral_rows_leaning_good_are_synergistic(j in joint()) {
        let mut c = *j.cells();
        let (n, f, o) = (Neutral.index(), Favor.index(), Oppose.index());
        if c[n][f] < c[n][o] {
            c[n].swap(f, o);
        }
        if c[f][n] < c[o][n] {
            let t = c[f][n];
            c[f][n] = c[o][n];
            c[o][n] = t;
        }
        let j = JointDist::new(c).unwrap();
        prop_assert!(synergy_condition_dependent(&j) >= -TOL);
    }

    #[test]
    fn bayes_identity_holds(j in joint()) {
        prop_assert!(bayes_residual(&j) <= TOL);
    }

    #[test]
    fn payoffs_stay_in_range(j in joint()) {
        let (m1, m2) = j.marginals();
        for v in [expected_payoff(&m1), expected_payoff(&m2), collective_payoff(&j)] {
            prop_assert!((-1.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn auc_payoff_round_trip(v in -1.0..=1.0f64, auc in 0.0..=1.0f64) {
        prop_assert!((payoff_from_auc(auc_from_payoff(v).unwrap()).unwrap() - v).abs() <= 1e-15);
        prop_assert!((auc_from_payoff(payoff_from_auc(auc).unwrap()).unwrap() - auc).abs() <= 1e-15);
    }

    #[test]
    fn independent_joint_recovers_marginals(m1 in marginal(), m2 in marginal()) {
        let (r1, r2) = JointDist::independent(&m1, &m2).marginals();
        for (a, b) in r1.to_array().iter().chain(&r2.to_array()).zip(m1.to_array().iter().chain(&m2.to_array())) {
            prop_assert!((a - b).abs() <= TOL);
        }
    }

    #[test]
    fn lifted_vote_joint_agrees(j in joint()) {
        let vj = VoteJoint::lift(&j);
        prop_assert!((collective_payoff_bruteforce(&vj) - collective_payoff(&j)).abs() <= TOL);
        let back = reduce_to_categories(&vj);
        for (a, b) in back.cells().iter().flatten().zip(j.cells().iter().flatten()) {
            prop_assert!((a - b).abs() <= TOL);
        }
    }

    #[test]
    fn trapezoid_equals_rank_estimator(s in scores()) {
        prop_assert!((trapezoid_area(&roc_curve(&s)) - empirical_auc(&s)).abs() <= TOL);
    }

    #[test]
    fn roc_curve_is_monotone_path(s in scores()) {
        let c = roc_curve(&s);
        let pts = c.points();
        prop_assert_eq!((pts[0].fpr, pts[0].tpr), (0.0, 0.0));
        let last = pts[pts.len() - 1];
        prop_assert_eq!((last.fpr, last.tpr), (1.0, 1.0));
        for w in pts.windows(2) {
            prop_assert!(w[0].fpr <= w[1].fpr && w[0].tpr <= w[1].tpr);
        }
    }

    #[test]
    fn label_swap_complements_auc(s in scores()) {
        let c = pair_counts(&s);
        let w = pair_counts(&s.swapped());
        prop_assert_eq!(w.wins, c.losses());
        prop_assert_eq!(w.ties, c.ties);
        prop_assert!((empirical_auc(&s.swapped()) - (1.0 - empirical_auc(&s))).abs() <= f64::EPSILON);
    }

    #[test]
    fn scaling_keeps_auc(s in scores()) {
        // multiplication by a power of two is exact, so order is preserved
        let t = s.map_scores(|x| 4.0 * x).unwrap();
        prop_assert_eq!(empirical_auc(&t), empirical_auc(&s));
    }

    #[test]
    fn increasing_transforms_keep_auc(
        p in proptest::collection::vec(-20..20i32, 1..40),
        n in proptest::collection::vec(-20..20i32, 1..40),
    ) {
        let s = ScoreSample::new(p.into_iter().map(f64::from).collect(), n.into_iter().map(f64::from).collect()).unwrap();
        for f in [|x: f64| x * x * x + 3.0 * x - 1.0, |x: f64| (x / 7.0).exp(), |x: f64| x.atan()] {
            prop_assert_eq!(empirical_auc(&s.map_scores(f).unwrap()), empirical_auc(&s));
        }
    }
}
