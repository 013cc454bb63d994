//! Cross-checks of the grouped checker against a naive all-pairs search, plus
//! frozen regression values.

use std::collections::BTreeSet;

use shufflecheck::{
    check_left_shuffle_compatible, check_shuffle_compatible, group_multisets, pair_summary,
    witness_reproduces, CheckConfig, Mode, Permutation, StatValue, Statistic, Verdict, Witness,
};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// All orderings of `values`, by recursion.
fn orderings(values: &[i64]) -> Vec<Vec<i64>> {
    if values.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let mut rest = values.to_vec();
        rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

/// Shuffles by recursive merging.
fn merges(a: &[i64], b: &[i64]) -> Vec<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return vec![[a, b].concat()];
    }
    let mut out = Vec::new();
    for mut tail in merges(&a[1..], b) {
        tail.insert(0, a[0]);
        out.push(tail);
    }
    for mut tail in merges(a, &b[1..]) {
        tail.insert(0, b[0]);
        out.push(tail);
    }
    out
}

struct NaivePair {
    key: (StatValue, StatValue, usize, usize),
    multiset: Vec<StatValue>,
}

/// Every pair partitioning `1..=total` for every total up to `bound`,
/// compared against every other pair directly.
fn naive_violated(st: &Statistic, bound: usize, left: bool) -> bool {
    let eval = |v: &[i64]| st.eval(&Permutation::new(v.to_vec()).unwrap()).unwrap();
    for total in 0..=bound {
        let mut pairs = Vec::new();
        for mask in 0u32..(1 << total) {
            let a_vals: Vec<i64> = (1..=total as i64).filter(|v| mask & (1 << (v - 1)) != 0).collect();
            let b_vals: Vec<i64> = (1..=total as i64).filter(|v| mask & (1 << (v - 1)) == 0).collect();
            if left && a_vals.is_empty() {
                continue;
            }
            for a in orderings(&a_vals) {
                for b in orderings(&b_vals) {
                    let mut multiset: Vec<StatValue> = merges(&a, &b)
                        .into_iter()
                        .filter(|g| !left || g[0] == a[0])
                        .map(|g| eval(&g))
                        .collect();
                    multiset.sort();
                    pairs.push(NaivePair {
                        key: (eval(&a), eval(&b), a.len(), b.len()),
                        multiset,
                    });
                }
            }
        }
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if pairs[i].key == pairs[j].key && pairs[i].multiset != pairs[j].multiset {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn grouped_checker_agrees_with_naive_search() {
    let cfg = CheckConfig::with_jobs(2);
    for st in [Statistic::des(), Statistic::inv(), Statistic::psi(), Statistic::one()] {
        for bound in 0..=5 {
            let grouped = check_shuffle_compatible(&st, bound, &cfg).unwrap().is_violated();
            assert_eq!(grouped, naive_violated(&st, bound, false), "{} at {bound}", st.name());
        }
    }
    for st in [Statistic::des(), Statistic::psi()] {
        for bound in 0..=5 {
            let grouped = check_left_shuffle_compatible(&st, bound, &cfg)
                .unwrap()
                .is_violated();
            assert_eq!(grouped, naive_violated(&st, bound, true), "left {} at {bound}", st.name());
        }
    }
}

#[test]
fn naive_search_sanity() {
    assert!(naive_violated(&Statistic::inv(), 3, false));
    assert!(!naive_violated(&Statistic::inv(), 2, false));
    assert!(naive_violated(&Statistic::psi(), 4, true));
    assert!(!naive_violated(&Statistic::psi(), 5, false));
}

#[test]
fn frozen_inv_witness() {
    let r = check_shuffle_compatible(&Statistic::inv(), 6, &CheckConfig::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Violated);
    let Some(Witness::Pairs { key, first, second }) = &r.witness else {
        panic!("expected a pair witness");
    };
    assert_eq!(key.to_string(), "({}, {}, 1, 2)");
    assert_eq!((first.sigma.to_string(), first.phi.to_string()), ("1".into(), "23".into()));
    assert_eq!((second.sigma.to_string(), second.phi.to_string()), ("2".into(), "13".into()));
    assert_eq!(first.multiset.to_string(), "{{{},{(1,2)},{(1,3),(2,3)}}}");
    assert_eq!(second.multiset.to_string(), "{{{},{(1,2)},{(2,3)}}}");
    assert!(witness_reproduces(&Statistic::inv(), Mode::Shuffle, r.witness.as_ref().unwrap()).unwrap());
}

#[test]
fn witnesses_are_sound() {
    let cfg = CheckConfig::default();
    for (st, mode, bound) in [
        (Statistic::inv(), Mode::Shuffle, 5),
        (Statistic::psi(), Mode::LeftShuffle, 4),
        (Statistic::inv(), Mode::LeftShuffle, 4),
        (Statistic::psi(), Mode::Descent, 4),
        (Statistic::inv(), Mode::Descent, 3),
    ] {
        let r = shufflecheck::check(&st, mode, bound, &cfg).unwrap();
        let w = r.witness.as_ref().expect("violation expected");
        assert!(witness_reproduces(&st, mode, w).unwrap(), "{} {mode}", st.name());
    }
}

#[test]
fn violations_persist_at_larger_bounds() {
    let cfg = CheckConfig::default();
    let base = check_shuffle_compatible(&Statistic::inv(), 3, &cfg).unwrap();
    for bound in 4..=6 {
        let r = check_shuffle_compatible(&Statistic::inv(), bound, &cfg).unwrap();
        assert_eq!(r.witness, base.witness);
    }
    let base = check_left_shuffle_compatible(&Statistic::psi(), 4, &cfg).unwrap();
    for bound in 5..=6 {
        let r = check_left_shuffle_compatible(&Statistic::psi(), bound, &cfg).unwrap();
        assert_eq!(r.witness, base.witness);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for (st, mode, bound) in [
        (Statistic::inv(), Mode::Shuffle, 6),
        (Statistic::psi(), Mode::LeftShuffle, 5),
        (Statistic::psi(), Mode::Shuffle, 7),
        (Statistic::des(), Mode::Shuffle, 6),
    ] {
        let runs: Vec<_> = [1, 2, 4]
            .iter()
            .map(|&jobs| {
                let r = shufflecheck::check(&st, mode, bound, &CheckConfig::with_jobs(jobs)).unwrap();
                (r.verdict, r.witness, r.groups_examined, r.items_examined)
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{} {mode}", st.name());
    }
}

#[test]
fn des_left_shuffle_violated_at_total_two() {
    // With no condition relating sigma's and phi's first entries, (1,2) and
    // (2,1) share a key but their single left shuffles 12 and 21 differ.
    // Confirmed by the naive search above.
    let r = check_left_shuffle_compatible(&Statistic::des(), 4, &CheckConfig::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Violated);
    let Some(Witness::Pairs { key, first, second }) = &r.witness else {
        panic!("expected a pair witness");
    };
    assert_eq!(key.to_string(), "({}, {}, 1, 1)");
    assert_eq!((first.sigma.to_string(), first.phi.to_string()), ("1".into(), "2".into()));
    assert_eq!((second.sigma.to_string(), second.phi.to_string()), ("2".into(), "1".into()));
    assert_eq!(first.multiset.to_string(), "{{{}}}");
    assert_eq!(second.multiset.to_string(), "{{{1}}}");
}

#[test]
fn psi_case_multisets() {
    let psi = Statistic::psi();
    let one_class = |m, n| -> BTreeSet<String> {
        group_multisets(&psi, m, n, false)
            .unwrap()
            .values()
            .flat_map(|s| s.iter().map(|ms| ms.to_string()))
            .collect()
    };
    assert_eq!(one_class(3, 1), BTreeSet::from(["{{-1,-1,1,1}}".to_string()]));
    assert_eq!(one_class(1, 3), BTreeSet::from(["{{-1,-1,1,1}}".to_string()]));
    assert_eq!(one_class(2, 2), BTreeSet::from(["{{-1,-1,-1,1,1,1}}".to_string()]));
    // Off total size 4 every group holds one multiset of binomial(m+n, m) ones.
    for (m, n, count) in [(1, 1, 2), (2, 1, 3), (4, 1, 5), (3, 2, 10), (4, 0, 1), (0, 5, 1)] {
        let ones = format!("{{{{{}}}}}", vec!["1"; count].join(","));
        let groups = group_multisets(&psi, m, n, false).unwrap();
        for (key, sets) in &groups {
            if m + n == 4 {
                // (4, 0): psi(sigma) varies, each group still sees one multiset.
                assert_eq!(sets.len(), 1, "{key}");
                continue;
            }
            assert_eq!(sets, &BTreeSet::from([shufflecheck::ValueMultiset::new(vec![StatValue::Int(1); count])]), "{key}");
            assert_eq!(sets.iter().next().unwrap().to_string(), ones);
        }
    }
}

#[test]
fn left_group_of_the_closing_example() {
    let psi = Statistic::psi();
    let (k1, a) = pair_summary(&psi, &p("12"), &p("34"), true).unwrap();
    let (k2, b) = pair_summary(&psi, &p("34"), &p("12"), true).unwrap();
    assert_eq!(k1, k2);
    assert_eq!(k1.to_string(), "(1, 1, 2, 2)");
    assert_eq!(a.to_string(), "{{-1,1,1}}");
    assert_eq!(b.to_string(), "{{-1,-1,1}}");
    let groups = group_multisets(&psi, 2, 2, true).unwrap();
    assert!(groups[&k1].contains(&a) && groups[&k1].contains(&b));
}
