//! Pseudo-polynomial subset sum over multisets of positive integers,
//! with index-level witness extraction.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetSumError {
    #[error("item {0} is zero; items must be positive")]
    ZeroItem(usize),
}

/// Decide whether some index subset of `items` sums exactly to `target`
/// and return one such subset (indices in increasing order). Items may
/// repeat; witnesses address indices, not values. Time and memory are
/// O(target * |items|).
pub fn subset_sum(items: &[u64], target: u64) -> Result<Option<Vec<usize>>, SubsetSumError> {
    for (i, &x) in items.iter().enumerate() {
        if x == 0 {
            return Err(SubsetSumError::ZeroItem(i));
        }
    }
    let t = target as usize;
    if target > items.iter().sum::<u64>() {
        return Ok(None);
    }
    // rows[i][s]: sum s reachable using items[..i]
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(items.len() + 1);
    let mut row = vec![false; t + 1];
    row[0] = true;
    rows.push(row);
    for &x in items {
        let prev = rows.last().unwrap();
        let mut next = prev.clone();
        let x = x as usize;
        if x <= t {
            for s in x..=t {
                if prev[s - x] {
                    next[s] = true;
                }
            }
        }
        rows.push(next);
    }
    if !rows[items.len()][t] {
        return Ok(None);
    }
    let mut witness = Vec::new();
    let mut s = t;
    for i in (0..items.len()).rev() {
        if !rows[i][s] {
            let x = items[i] as usize;
            debug_assert!(s >= x && rows[i][s - x]);
            witness.push(i);
            s -= x;
        }
    }
    debug_assert_eq!(s, 0);
    witness.reverse();
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(items: &[u64], target: u64) -> Option<Vec<usize>> {
        let got = subset_sum(items, target).unwrap();
        if let Some(ref s) = got {
            let sum: u64 = s.iter().map(|&i| items[i]).sum();
            assert_eq!(sum, target, "witness does not sum to target");
        }
        got
    }

    #[test]
    fn basic_yes() {
        let w = check(&[3, 5, 7], 12).unwrap();
        assert_eq!(w, vec![1, 2]);
    }

    #[test]
    fn basic_no() {
        assert_eq!(check(&[3, 5, 7], 4), None);
    }

    #[test]
    fn multiset_case() {
        let w = check(&[2, 2, 3], 4).unwrap();
        assert_eq!(w, vec![0, 1]);
    }

    #[test]
    fn target_zero_is_empty_subset() {
        assert_eq!(check(&[], 0), Some(vec![]));
        assert_eq!(check(&[4, 9], 0), Some(vec![]));
    }

    #[test]
    fn rejects_zero_items() {
        assert_eq!(subset_sum(&[1, 0], 1), Err(SubsetSumError::ZeroItem(1)));
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        // all instances with |items| <= 12 would be slow to list here; a
        // dense sweep over small shapes plus the acceptance suite covers it
        let pools: &[&[u64]] = &[
            &[1, 2, 3, 4],
            &[5, 5, 5],
            &[2, 4, 8, 16, 32],
            &[7, 3, 3, 9, 1, 1],
        ];
        for items in pools {
            let total: u64 = items.iter().sum();
            for target in 0..=total + 2 {
                let expect = (0..1u32 << items.len()).any(|mask| {
                    let s: u64 = items
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &x)| x)
                        .sum();
                    s == target
                });
                assert_eq!(check(items, target).is_some(), expect);
            }
        }
    }
}
