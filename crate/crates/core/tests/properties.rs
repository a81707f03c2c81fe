mod common;

use gmfineq::gmf::{determinant, gmf, gmf_naive, gmf_tensor_oracle, permanent_ryser, GmfSpec};
use gmfineq::inequality::{
    self as ineq, decompose_subset_weights, finite_difference_f, subset_values, ConvexFn, Levels,
    Verdict,
};
use gmfineq::linalg::{kron, loewner_geq, random_psd, Field, PsdMatrix, RandomInstanceConfig};
use gmfineq::majorization::{power_sum, weak_majorizes};
use gmfineq::matrix::Matrix;
use gmfineq::permchar::{GroupCharacter, PermutationGroup};
use gmfineq::search::{self, InequalityId, RGrid, SearchConfig, SuiteParams};
use proptest::prelude::*;

use common::*;

fn psd(n: usize, m: usize, seed: u64) -> Vec<PsdMatrix> {
    random_psd(&RandomInstanceConfig {
        n,
        m,
        seed,
        scale: 1.0,
        field: Field::Complex,
    })
}

fn spec_strategy() -> impl Strategy<Value = GmfSpec> {
    (1usize..=3, 0usize..4).prop_map(|(n, kind)| match kind {
        0 => GmfSpec::Det(n),
        1 => GmfSpec::Per(n),
        2 => GmfSpec::cyclic(n, 0).unwrap(),
        _ => GmfSpec::cyclic(n, n - 1).unwrap(),
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree_with_leibniz(n in 1usize..=6, seed in any::<u64>()) {
        let a = random_complex(n, seed);
        let bound = row_sum_bound(&a);
        let per = per_oracle(&a);
        let det = det_oracle(&a);
        let r = permanent_ryser(&a).unwrap();
        prop_assert!((r.value - per.re).abs() <= 1e-12 * bound);
        let d = determinant(&a);
        prop_assert!((d.value - det.re).abs() <= 1e-12 * bound);
        prop_assert!((gmf_naive(&GmfSpec::Per(n), &a).unwrap().value - per.re).abs() <= 1e-12 * bound);
    }

    #[test]
    fn tensor_oracle_matches_on_psd(spec in spec_strategy(), seed in any::<u64>()) {
        let a = &psd(spec.degree(), 1, seed)[0];
        let direct = gmf(&spec, a).unwrap().value;
        let t = gmf_tensor_oracle(&spec, a).unwrap();
        prop_assert!(close(t.value, direct, 1e-10));
    }

    #[test]
    fn tensor_oracle_matches_naive_on_general_input(spec in spec_strategy(), seed in any::<u64>()) {
        let a = random_complex(spec.degree(), seed);
        let naive = gmf_naive(&spec, &a).unwrap();
        let t = gmf_tensor_oracle(&spec, &a).unwrap();
        let bound = row_sum_bound(&a);
        prop_assert!((t.value - naive.value).abs() <= 1e-12 * bound);
        prop_assert!((t.imag_residue - naive.imag_residue).abs() <= 1e-12 * bound);
    }

    #[test]
    fn gmf_nonnegative_and_superadditive(spec in spec_strategy(), seed in any::<u64>()) {
        let mats = psd(spec.degree(), 2, seed);
        let d = subset_values(&spec, &mats).unwrap();
        for v in &d[1..] {
            prop_assert!(v.value >= -v.tol);
        }
        prop_assert!(d[3].value >= d[1].value + d[2].value - 1e-9 * (1.0 + d[3].value));
    }

    #[test]
    fn subset_weights_match_mobius(spec in spec_strategy(), m in 1usize..=5, seed in any::<u64>()) {
        let mats = psd(spec.degree(), m, seed);
        let w = decompose_subset_weights(&spec, &mats).unwrap();
        let values: Vec<f64> = subset_values(&spec, &mats).unwrap().iter().map(|d| d.value).collect();
        let oracle = mobius(m, &values);
        for j in 1..(1usize << m) {
            prop_assert!((w.get(j as u32) - oracle[j]).abs() <= 1e-9 * (1.0 + w.scale));
            // Reconstruction: d(A_J) = Σ_{L⊆J} x_L.
            let recon: f64 = (1..(1usize << m)).filter(|l| l & !j == 0).map(|l| w.get(l as u32)).sum();
            prop_assert!((recon - values[j]).abs() <= 1e-8 * (1.0 + values[j].abs()));
            prop_assert!(w.get(j as u32) >= -1e-8 * w.scale.max(1e-300) - 1e-12);
        }
    }

    #[test]
    fn alternating_pairwise_and_three_matrix_agree_at_r1(spec in spec_strategy(), seed in any::<u64>()) {
        let mats = psd(spec.degree(), 3, seed);
        let alt = ineq::slack_alternating(&spec, &mats, 1.0).unwrap();
        let pair = ineq::slack_pairwise(&spec, &mats).unwrap();
        let three = ineq::slack_theorem_2_1(&spec, &mats[0], &mats[1], &mats[2], 1.0).unwrap();
        prop_assert!((alt.slack - pair.slack).abs() <= 1e-10 * (1.0 + alt.lhs.abs()));
        prop_assert!((alt.slack - three.slack).abs() <= 1e-10 * (1.0 + alt.lhs.abs()));
    }

    #[test]
    fn three_level_is_a_third_of_three_matrix(spec in spec_strategy(), seed in any::<u64>(), r in 0.5f64..6.0) {
        let mats = psd(spec.degree(), 3, seed);
        let t = ineq::slack_three_level(&spec, &mats, Levels::new(1, 2, 3), r).unwrap();
        let e = ineq::slack_theorem_2_1(&spec, &mats[0], &mats[1], &mats[2], r).unwrap();
        prop_assert!((t.slack - e.slack / 3.0).abs() <= 1e-10 * (1.0 + e.lhs.abs()));
    }

    #[test]
    fn scalar_three_matrix_slack_is_finite_difference(r in 0.1f64..8.0) {
        let one = PsdMatrix::identity(1);
        let s = ineq::slack_theorem_2_1(&GmfSpec::Det(1), &one, &one, &one, r).unwrap();
        let closed = 3f64.powf(r) + 3.0 - 3.0 * 2f64.powf(r);
        prop_assert!((s.slack - finite_difference_f(3, r)).abs() <= 1e-12 * (1.0 + closed.abs()));
        prop_assert!((s.slack - closed).abs() <= 1e-12 * (1.0 + closed.abs()));
    }

    #[test]
    fn verdict_matches_slack(slack in -1.0f64..1.0, tol in 1e-12f64..1e-1) {
        let v = Verdict::classify(slack, tol);
        prop_assert_eq!(v == Verdict::Violated, slack < -tol);
        prop_assert_eq!(v == Verdict::Equality, slack.abs() <= tol);
    }

    #[test]
    fn guaranteed_ranges_hold(spec in spec_strategy(), seed in any::<u64>(), pick in 0usize..4) {
        let r = [1.0, 2.0, 2.7, 5.0][pick];
        let mats = psd(spec.degree(), 4, seed);
        let three = ineq::slack_theorem_2_1(&spec, &mats[0], &mats[1], &mats[2], r).unwrap();
        prop_assert!(!three.is_violated(), "{:?}", three);
        let r4 = [1.0, 2.0, 3.0, 4.5][pick];
        let alt = ineq::slack_alternating(&spec, &mats, r4).unwrap();
        prop_assert!(!alt.is_violated(), "{:?}", alt);
        let lv = ineq::slack_three_level(&spec, &mats, Levels::new(2, 3, 4), 2.0 + r).unwrap();
        prop_assert!(!lv.is_violated(), "{:?}", lv);
        let phi = ["x", "x^1.5", "x^2", "exp"][pick].parse::<ConvexFn>().unwrap();
        let cv = ineq::slack_convex_three_level(&spec, &mats, Levels::new(1, 2, 4), &phi).unwrap();
        prop_assert!(!cv.is_violated(), "{:?}", cv);
        let basic = ineq::slack_three_term_phi(&spec, &mats[0], &mats[1], &mats[2], &phi).unwrap();
        prop_assert!(!basic.is_violated(), "{:?}", basic);
        let part = ineq::slack_partition_schur(&spec, &mats, &[vec![0, 2], vec![1], vec![3]], 1.5).unwrap();
        prop_assert!(!part.is_violated(), "{:?}", part);
        let root = ineq::slack_root_superadditivity(&spec, &mats[0], &mats[1], 1.0 + r).unwrap();
        prop_assert!(!root.is_violated(), "{:?}", root);
    }

    #[test]
    fn weak_majorization_implies_power_sum_order(
        v in prop::collection::vec(0.0f64..10.0, 1..7),
        shrink in prop::collection::vec(0.0f64..=1.0, 7),
        shift in 0usize..7,
        p in 1.0f64..5.0,
    ) {
        // u = a cyclic shift of v, shrunk entrywise, is weakly majorized by v.
        let k = v.len();
        let u: Vec<f64> = (0..k).map(|i| v[(i + shift) % k] * shrink[i]).collect();
        prop_assert!(weak_majorizes(&v, &u));
        let su = sorted_partial_sums(&u, k);
        let sv = sorted_partial_sums(&v, k);
        prop_assert!(su.iter().zip(&sv).all(|(a, b)| *a <= *b + 1e-12));
        prop_assert!(power_sum(&u, p).unwrap() <= power_sum(&v, p).unwrap() * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn kron_of_psd_is_psd(seed in any::<u64>()) {
        let m = psd(2, 2, seed);
        let k = kron(&m[0], &m[1]).unwrap();
        let (ok, _) = loewner_geq(&k, &Matrix::zeros(4), 1e-10).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn tensor_two_term_is_psd(n in 1usize..=3, power in 1usize..=3, seed in any::<u64>()) {
        let m = psd(n, 2, seed);
        let r = ineq::slack_tensor_two(&m[0], &m[1], power).unwrap();
        prop_assert!(!r.is_violated(), "{:?}", r);
    }

    #[test]
    fn group_closure_is_a_group(n in 1usize..=5, pick in 0usize..3) {
        let g = match pick {
            0 => PermutationGroup::symmetric(n).unwrap(),
            1 => PermutationGroup::cyclic(n).unwrap(),
            _ => PermutationGroup::trivial(n),
        };
        prop_assert!(g.elements()[g.identity_index()].is_identity());
        for a in g.elements() {
            prop_assert!(g.position(&a.inverse()).is_some());
            for b in g.elements() {
                prop_assert!(g.position(&a.compose(b)).is_some());
            }
        }
    }

    #[test]
    fn cyclic_characters_are_homomorphisms(n in 1usize..=6, k in 0usize..6) {
        let gc = GroupCharacter::cyclic(n, k % n).unwrap();
        let g = &gc.group;
        for (i, a) in g.elements().iter().enumerate() {
            for (j, b) in g.elements().iter().enumerate() {
                let ab = g.position(&a.compose(b)).unwrap();
                let lhs = gc.character.value(ab);
                let rhs = gc.character.value(i) * gc.character.value(j);
                prop_assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn search_is_deterministic_and_worst_is_min(seed in any::<u64>(), pick in 0usize..3) {
        let (id, spec, m, r) = [
            (InequalityId::Theorem2_1, GmfSpec::Per(2), 3, Some(1.4)),
            (InequalityId::Theorem3_3, GmfSpec::Det(2), 4, Some(2.5)),
            (InequalityId::Lemma3_2, GmfSpec::Per(2), 4, None),
        ][pick].clone();
        let config = SearchConfig {
            inequality: id,
            instance: RandomInstanceConfig { n: spec.degree(), m, seed, scale: 1.0, field: Field::Complex },
            spec,
            r_grid: r.map(RGrid::single),
            trials: 16,
            suite: SuiteParams::default(),
        };
        let a = search::random_search(&config).unwrap();
        let b = search::random_search(&config).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let min = a.reports.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(a.worst.slack, min);
        prop_assert_eq!(a.evaluated as usize, a.reports.len());
    }

    #[test]
    fn halving_the_step_never_raises_the_minimum(steps in 1u32..6, lo in 1.0f64..2.0) {
        let one = PsdMatrix::identity(1);
        let inst = search::Instance::new(vec![one; 4]);
        let step = 0.5f64.powi(steps as i32);
        let coarse = RGrid::Range { min: lo, max: lo + 2.0, step };
        let fine = RGrid::Range { min: lo, max: lo + 2.0, step: step / 2.0 };
        let run = |g: &RGrid| search::scan_r(
            InequalityId::Theorem3_3, &GmfSpec::Det(1), &SuiteParams::default(), &inst, g,
        ).unwrap();
        let (c, f) = (run(&coarse), run(&fine));
        prop_assert!(f.worst.slack <= c.worst.slack);
        let fine_pts = fine.points();
        for p in coarse.points() {
            prop_assert!(fine_pts.contains(&p));
        }
    }
}
