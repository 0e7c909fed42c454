//! Naive reference for `k_max`.
//!
//! Tries every non-empty zero-sum sub-multiset as a block, with no zero
//! peeling and no restriction to minimal blocks. Only an exact-state memo is
//! used. Slow, but shares no search logic with [`crate::packing`], so the
//! engines re-verify their witnesses against it.

use std::collections::HashMap;

use crate::error::Result;
use crate::sequence::Sequence;
use crate::table::GroupTable;

pub fn naive_k_max(seq: &Sequence) -> Result<usize> {
    let table = GroupTable::new(seq.group())?;
    let mut memo = HashMap::new();
    Ok(rec(&table, seq.counts(), &mut memo))
}

fn rec(table: &GroupTable, counts: &[u32], memo: &mut HashMap<Vec<u32>, usize>) -> usize {
    if let Some(&v) = memo.get(counts) {
        return v;
    }
    let mut best = 0;
    let mut sub = vec![0u32; counts.len()];
    // odometer over all sub-multisets
    loop {
        let mut i = 0;
        while i < counts.len() {
            if sub[i] < counts[i] {
                sub[i] += 1;
                break;
            }
            sub[i] = 0;
            i += 1;
        }
        if i == counts.len() {
            break;
        }
        if table.sum_counts(&sub) == 0 {
            let rest: Vec<u32> = counts.iter().zip(&sub).map(|(c, s)| c - s).collect();
            best = best.max(1 + rec(table, &rest, memo));
        }
    }
    memo.insert(counts.to_vec(), best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    #[test]
    fn small_cases() {
        let z3 = AbelianGroup::cyclic(3).unwrap();
        let s = Sequence::from_residues(&z3, &[1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(naive_k_max(&s).unwrap(), 2);
        let s = Sequence::from_residues(&z3, &[1, 1]).unwrap();
        assert_eq!(naive_k_max(&s).unwrap(), 0);
        let s = Sequence::from_residues(&z3, &[0, 0, 1, 2]).unwrap();
        assert_eq!(naive_k_max(&s).unwrap(), 3);
    }
}
