use ktz::enumerate::{enumerate_labeled_filter, enumerate_labeled_growth, enumerate_unlabeled};
use ktz::extremal::{local_search, verify_extremal_theorems, FixedPointClass, Goal, Objective};
use ktz::indices::{closed_form_path, closed_form_star, index_value};
use ktz::{compare_values, gen_kpath, gen_kstar, IndexMode, Params};

fn objectives(c: f64) -> [(Objective<f64>, FixedPointClass); 4] {
    let pi1 = Params::pi1c(c).unwrap();
    let pi2 = Params::pi2();
    [
        (Objective::new(pi1, Goal::Minimize), FixedPointClass::Star),
        (Objective::new(pi1, Goal::Maximize), FixedPointClass::Path),
        (Objective::new(pi2, Goal::Minimize), FixedPointClass::Path),
        (Objective::new(pi2, Goal::Maximize), FixedPointClass::Star),
    ]
}

#[test]
fn every_class_reaches_its_extremal_graph() {
    let grid = [(1, 9), (2, 7), (3, 7), (4, 7)];
    for (k, max_n) in grid {
        for n in k + 1..=max_n {
            let census = enumerate_unlabeled(k, n).unwrap();
            for r in &census.representatives {
                for (obj, want) in objectives(2.0) {
                    let report = local_search(&r.tree, obj);
                    assert_eq!(report.fixed_point_class, want, "k={k} n={n} {obj}\n{}", report.to_trace());
                    for s in &report.steps {
                        assert!(s.ratio_error() <= 1e-9);
                        if !s.neutral {
                            let gain = if obj.goal == Goal::Minimize { s.before - s.after } else { s.after - s.before };
                            assert!(gain > 0.0);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn bounds_hold_over_small_censuses() {
    for (k, n) in [(1, 7), (2, 6), (2, 7), (3, 7)] {
        let report = verify_extremal_theorems(k, n, &[0.5f64, 1.0, 2.0, 3.0]).unwrap();
        assert!(!report.falsified(), "k={k} n={n}");
        assert_eq!(report.checks.len(), 5);
    }
}

#[test]
fn ties_are_allowed_only_in_the_degenerate_range() {
    let report = verify_extremal_theorems(3, 5, &[1.0f64]).unwrap();
    assert!(report.degenerate);
    assert!(!report.falsified());
    assert_eq!(report.census.representatives.len(), 1);
}

#[test]
fn growth_and_filter_agree() {
    for (k, n) in [(1, 5), (2, 5), (2, 6), (3, 6)] {
        let a = enumerate_labeled_growth(k, n).unwrap();
        let b = enumerate_labeled_filter(k, n).unwrap();
        assert_eq!(a.labeled_count, b.labeled_count, "k={k} n={n}");
        assert_eq!(a.labeled, b.labeled);
    }
}

#[test]
fn labeled_counts_follow_the_product_formula() {
    // C(n,k) (k(n-k)+1)^(n-k-2)
    for (k, n, want) in [(1, 5, 125u128), (1, 6, 1296), (2, 4, 6), (2, 5, 70), (2, 6, 1215), (3, 6, 200)] {
        assert_eq!(enumerate_labeled_growth(k, n).unwrap().labeled_count, want, "k={k} n={n}");
        assert_eq!(enumerate_unlabeled(k, n).unwrap().labeled_count, want, "k={k} n={n}");
    }
}

#[test]
fn unlabeled_counts_match_known_sequences() {
    let trees = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    for n in 2..=10 {
        assert_eq!(enumerate_unlabeled(1, n).unwrap().representatives.len(), trees[n - 1], "n={n}");
    }
    for (n, want) in [(5, 2), (6, 5), (7, 12), (8, 39)] {
        assert_eq!(enumerate_unlabeled(2, n).unwrap().representatives.len(), want, "n={n}");
    }
}

#[test]
fn closed_forms_equal_direct_values() {
    for k in 1..=5 {
        for n in k + 1..=k + 12 {
            for p in [Params::pi1c(1.0).unwrap(), Params::pi1c(3.0).unwrap(), Params::pi2(), Params::nk()] {
                let star = index_value(gen_kstar(k, n).unwrap().graph(), p, IndexMode::Both).unwrap();
                let path = index_value(gen_kpath(k, n).unwrap().graph(), p, IndexMode::Both).unwrap();
                assert_eq!(star.exact, closed_form_star(k, n, p).unwrap().exact, "star k={k} n={n}");
                assert_eq!(path.exact, closed_form_path(k, n, p).unwrap().exact, "path k={k} n={n}");
            }
        }
    }
}

#[test]
fn fractional_exponents_compare_in_log_domain() {
    let p = Params::pi1c(0.5).unwrap();
    let star = index_value(gen_kstar(2, 8).unwrap().graph(), p, IndexMode::Both).unwrap();
    let path = index_value(gen_kpath(2, 8).unwrap().graph(), p, IndexMode::Both).unwrap();
    assert!(star.exact.is_none());
    assert_eq!(compare_values(&star, &path), std::cmp::Ordering::Less);
}
