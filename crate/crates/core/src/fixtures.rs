//! Fixed computations behind the counterexample: the `psi` split of every
//! size-4 shuffle class, and the size-3 multiset identities that force a
//! shuffle compatible statistic to be a descent statistic below size 4.

use serde::Serialize;

use crate::error::Result;
use crate::perm::Permutation;
use crate::shuffle::{shuffle, ValueMultiset};
use crate::stats::{StatValue, Statistic};

/// Expected split, one row per line: `sigma phi | psi = +1 | psi = -1`.
/// Rows 1-6 have sizes (3, 1), rows 7-12 sizes (2, 2).
pub const TABLE1: &str = "\
134 2 | 1234,1342 | 1324,2134
314 2 | 2314,3214 | 3124,3142
341 2 | 3412,3241 | 3421,2341
234 1 | 1234,2314 | 2341,2134
324 1 | 3241,3214 | 3124,1324
342 1 | 3412,1342 | 3421,3142
12 34 | 1234,1342,3412 | 1324,3124,3142
13 24 | 1234,1243,2413 | 2134,2143,1324
13 42 | 4213,1432,1342 | 4132,4123,1423
21 34 | 2314,3241,3214 | 2134,2341,3421
23 14 | 2314,1243,1234 | 1423,2134,2143
23 41 | 4213,2413,4231 | 4123,2341,2431
";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub sigma: Permutation,
    pub phi: Permutation,
    pub plus: Vec<Permutation>,
    pub minus: Vec<Permutation>,
}

fn parse_list(s: &str) -> Vec<Permutation> {
    s.split(',')
        .map(|t| t.trim().parse().expect("embedded table entry"))
        .collect()
}

/// The embedded table, parsed.
pub fn table1_rows() -> Vec<TableRow> {
    TABLE1
        .lines()
        .map(|line| {
            let mut cols = line.split('|');
            let pair = cols.next().expect("pair column");
            let mut pair = pair.split_whitespace();
            let sigma = pair.next().expect("sigma").parse().expect("sigma");
            let phi = pair.next().expect("phi").parse().expect("phi");
            TableRow {
                sigma,
                phi,
                plus: parse_list(cols.next().expect("plus column")),
                minus: parse_list(cols.next().expect("minus column")),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDiscrepancy {
    pub sigma: Permutation,
    pub phi: Permutation,
    pub expected_plus: Vec<Permutation>,
    pub computed_plus: Vec<Permutation>,
    pub expected_minus: Vec<Permutation>,
    pub computed_minus: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub rows_checked: usize,
    pub permutations_classified: usize,
    pub discrepancies: Vec<RowDiscrepancy>,
}

impl TableCheck {
    pub fn matches(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Recomputes each row's split of `sigma ⧢ phi` by `psi` value and compares
/// with the expected classes as sets.
pub fn verify_table(rows: &[TableRow]) -> Result<TableCheck> {
    let psi = Statistic::psi();
    let mut discrepancies = Vec::new();
    let mut classified = 0;
    for row in rows {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for g in shuffle(&row.sigma, &row.phi)? {
            classified += 1;
            if psi.eval(&g)? == StatValue::Int(1) {
                plus.push(g);
            } else {
                minus.push(g);
            }
        }
        plus.sort();
        minus.sort();
        let mut expected_plus = row.plus.clone();
        let mut expected_minus = row.minus.clone();
        expected_plus.sort();
        expected_minus.sort();
        if plus != expected_plus || minus != expected_minus {
            discrepancies.push(RowDiscrepancy {
                sigma: row.sigma.clone(),
                phi: row.phi.clone(),
                expected_plus,
                computed_plus: plus,
                expected_minus,
                computed_minus: minus,
            });
        }
    }
    Ok(TableCheck {
        rows_checked: rows.len(),
        permutations_classified: classified,
        discrepancies,
    })
}

pub fn verify_table1() -> Result<TableCheck> {
    verify_table(&table1_rows())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub statistic: String,
    /// Multisets over `12 ⧢ 3`, `13 ⧢ 2`, `23 ⧢ 1`.
    pub multisets: [ValueMultiset; 3],
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub shuffle_sets_match: bool,
    pub outcomes: Vec<IdentityOutcome>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.shuffle_sets_match && self.outcomes.iter().all(|o| o.holds)
    }
}

fn perms(list: &[&str]) -> Vec<Permutation> {
    let mut v: Vec<Permutation> = list.iter().map(|s| s.parse().expect("literal")).collect();
    v.sort();
    v
}

/// For each statistic, checks that the multisets over `12 ⧢ 3` and `23 ⧢ 1`
/// both equal the one over `13 ⧢ 2`. Together these force
/// `st(213) = st(312)` and `st(231) = st(132)`. Also checks the three shuffle
/// sets themselves and that their descent-set multisets coincide.
pub fn verify_size3_identities(stats: &[Statistic]) -> Result<IdentityCheck> {
    let pairs = [("12", "3"), ("13", "2"), ("23", "1")];
    let sets = pairs
        .iter()
        .map(|(a, b)| shuffle(&a.parse()?, &b.parse()?))
        .collect::<Result<Vec<_>>>()?;

    let expected = [
        perms(&["123", "132", "312"]),
        perms(&["132", "123", "213"]),
        perms(&["231", "213", "123"]),
    ];
    let des = Statistic::des();
    let des_sets = sets
        .iter()
        .map(|s| s.value_multiset(&des))
        .collect::<Result<Vec<_>>>()?;
    let shuffle_sets_match = sets.iter().zip(&expected).all(|(s, e)| s.sorted() == *e)
        && des_sets.windows(2).all(|w| w[0] == w[1]);

    let mut outcomes = Vec::new();
    for st in stats {
        let ms: Vec<ValueMultiset> = sets
            .iter()
            .map(|s| s.value_multiset(st))
            .collect::<Result<_>>()?;
        let holds = ms[0] == ms[1] && ms[2] == ms[1];
        outcomes.push(IdentityOutcome {
            statistic: st.name().to_string(),
            multisets: [ms[0].clone(), ms[1].clone(), ms[2].clone()],
            holds,
        });
    }
    Ok(IdentityCheck {
        shuffle_sets_match,
        outcomes,
    })
}

/// The identities for `one`, `des` and `psi`.
pub fn verify_prop1_identities() -> Result<IdentityCheck> {
    verify_size3_identities(&[Statistic::one(), Statistic::des(), Statistic::psi()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_to_twelve_balanced_rows() {
        let rows = table1_rows();
        assert_eq!(rows.len(), 12);
        for r in &rows {
            assert_eq!(r.plus.len(), r.minus.len());
            assert!(r.sigma.is_disjoint(&r.phi));
        }
        let first = &rows[6];
        assert_eq!(first.sigma.to_string(), "12");
        assert_eq!(first.phi.to_string(), "34");
    }

    #[test]
    fn table_matches() {
        let check = verify_table1().unwrap();
        assert!(check.matches(), "{:?}", check.discrepancies);
        assert_eq!(check.rows_checked, 12);
        assert_eq!(check.permutations_classified, 6 * 4 + 6 * 6);
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut rows = table1_rows();
        rows[0].plus.swap_remove(0);
        let moved = rows[0].minus.pop().unwrap();
        rows[0].plus.push(moved);
        let check = verify_table(&rows).unwrap();
        assert_eq!(check.discrepancies.len(), 1);
        assert_eq!(check.discrepancies[0].sigma.to_string(), "134");
    }

    #[test]
    fn identities_hold() {
        let check = verify_prop1_identities().unwrap();
        assert!(check.holds(), "{check:?}");
        let one = &check.outcomes[0];
        for m in &one.multisets {
            assert_eq!(m.to_string(), "{{1,1,1}}");
        }
        assert_eq!(check.outcomes[1].multisets[0].to_string(), "{{{},{1},{2}}}");
    }

    #[test]
    fn identities_fail_for_inv() {
        let check = verify_size3_identities(&[Statistic::inv()]).unwrap();
        assert!(!check.holds());
    }
}
