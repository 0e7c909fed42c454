//! Sequences (multisets) over a finite abelian group.
//!
//! A [`Sequence`] stores one multiplicity per group element, indexed by the
//! group's dense element indexing. Its canonical encoding is the sorted list
//! of element indices with repetition; all orderings in this crate compare
//! those encodings lexicographically.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Automorphism, GroupElement};
use crate::table::{ElementSet, GroupTable};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence {
    group: AbelianGroup,
    counts: Vec<u32>,
}

impl Sequence {
    pub fn empty(group: &AbelianGroup) -> Self {
        Sequence {
            group: group.clone(),
            counts: vec![0; group.order() as usize],
        }
    }

    pub fn from_elements<'a>(
        group: &AbelianGroup,
        elements: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut s = Self::empty(group);
        for x in elements {
            s.push(x)?;
        }
        Ok(s)
    }

    pub fn from_indices(
        group: &AbelianGroup,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in indices {
            if i >= s.counts.len() {
                return Err(Error::Validation(format!(
                    "element index {i} out of range for {group}"
                )));
            }
            s.counts[i] += 1;
        }
        Ok(s)
    }

    /// Convenience for cyclic groups: entries given as residues.
    pub fn from_residues(group: &AbelianGroup, residues: &[u64]) -> Result<Self> {
        let els = residues
            .iter()
            .map(|&r| group.element(&[r]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(group, &els)
    }

    pub(crate) fn from_counts(group: &AbelianGroup, counts: Vec<u32>) -> Self {
        debug_assert_eq!(counts.len() as u64, group.order());
        Sequence {
            group: group.clone(),
            counts,
        }
    }

    pub fn push(&mut self, x: &GroupElement) -> Result<()> {
        let x = self.group.element(x.coords())?;
        let i = self.group.index_of(&x);
        self.counts[i] += 1;
        Ok(())
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn multiplicity(&self, x: &GroupElement) -> u32 {
        if x.coords().len() != self.group.rank() {
            return 0;
        }
        self.counts
            .get(self.group.index_of(x))
            .copied()
            .unwrap_or(0)
    }

    /// `(element, multiplicity)` pairs in index order.
    pub fn entries(&self) -> impl Iterator<Item = (GroupElement, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (self.group.element_at(i), c))
    }

    /// Distinct elements occurring in the sequence.
    pub fn support(&self) -> Vec<GroupElement> {
        self.entries().map(|(x, _)| x).collect()
    }

    /// Sorted element indices with repetition.
    pub fn encoding(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for (i, &c) in self.counts.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, c as usize));
        }
        out
    }

    /// All entries in encoding order.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.encoding()
            .into_iter()
            .map(|i| self.group.element_at(i))
            .collect()
    }

    pub fn sum(&self) -> GroupElement {
        let mut acc = self.group.zero();
        for (x, c) in self.entries() {
            let cx = self.group.scale(c as u64, &x).expect("same group");
            acc = self.group.add(&acc, &cx).expect("same group");
        }
        acc
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sum() == self.group.zero()
    }

    fn same_group(&self, other: &Sequence) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Structural(format!(
                "sequences over different groups {} and {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        self.same_group(other)?;
        Ok(Sequence {
            group: self.group.clone(),
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Whether `self` is a sub-multiset of `other`.
    pub fn divides(&self, other: &Sequence) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b))
    }

    /// `self` with the entries of `part` removed; `part` must divide `self`.
    pub fn remove(&self, part: &Sequence) -> Result<Sequence> {
        if !part.divides(self)? {
            return Err(Error::Domain(format!("{part} does not divide {self}")));
        }
        Ok(Sequence {
            group: self.group.clone(),
            counts: self
                .counts
                .iter()
                .zip(&part.counts)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Image under an automorphism of the underlying group.
    pub fn apply(&self, aut: &Automorphism) -> Sequence {
        let mut counts = vec![0; self.counts.len()];
        for (i, &c) in self.counts.iter().enumerate() {
            counts[aut.apply_index(i)] += c;
        }
        Sequence {
            group: self.group.clone(),
            counts,
        }
    }
}

impl Ord for Sequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encoding()
            .cmp(&other.encoding())
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.elements().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Compares two equal-length count vectors by their encodings.
pub(crate) fn cmp_counts(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            // more copies of the smaller index means a smaller encoding
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Lexicographically least image of `seq` under `auts`.
pub fn canonical_form(seq: &Sequence, auts: &[Automorphism]) -> Sequence {
    let mut best = seq.counts.clone();
    let mut image = vec![0u32; best.len()];
    for aut in auts {
        image.iter_mut().for_each(|c| *c = 0);
        for (i, &c) in seq.counts.iter().enumerate() {
            if c > 0 {
                image[aut.apply_index(i)] += c;
            }
        }
        if cmp_counts(&image, &best) == Ordering::Less {
            best.copy_from_slice(&image);
        }
    }
    Sequence::from_counts(&seq.group, best)
}

/// Whether no automorphism maps `counts` to a smaller encoding.
pub(crate) fn is_canonical_counts(
    counts: &[u32],
    auts: &[Automorphism],
    scratch: &mut Vec<u32>,
) -> bool {
    scratch.clear();
    scratch.resize(counts.len(), 0);
    for aut in auts {
        scratch.iter_mut().for_each(|c| *c = 0);
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                scratch[aut.apply_index(i)] += c;
            }
        }
        if cmp_counts(scratch, counts) == Ordering::Less {
            return false;
        }
    }
    true
}

/// Calls `emit` for every zero-sum-free `w` drawn from `avail` (indices
/// `>= start`) whose sum equals `target`.
///
/// Appending `x` with `x + sum(w) = 0` to such a `w` yields exactly the
/// minimal zero-sum blocks containing `x` whose other entries are `>= start`.
pub(crate) fn for_each_completion(
    table: &GroupTable,
    avail: &[u32],
    start: usize,
    target: usize,
    emit: &mut dyn FnMut(&[u32]),
) {
    let n = table.len();
    let mut w = vec![0u32; n];
    fn rec(
        table: &GroupTable,
        avail: &[u32],
        j: usize,
        sum: usize,
        reach: &ElementSet,
        target: usize,
        w: &mut Vec<u32>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if j == table.len() {
            if sum == target {
                emit(w);
            }
            return;
        }
        rec(table, avail, j + 1, sum, reach, target, w, emit);
        if j == 0 {
            return;
        }
        let mut cur = reach.clone();
        let mut s = sum;
        let cap = avail[j].min(table.order_of(j) as u32 - 1);
        for c in 1..=cap {
            cur = cur.extended_by(table, j);
            if cur.contains(0) {
                break;
            }
            s = table.add(s, j);
            w[j] = c;
            rec(table, avail, j + 1, s, &cur, target, w, emit);
        }
        w[j] = 0;
    }
    let reach = ElementSet::empty(n);
    rec(table, avail, start, 0, &reach, target, &mut w, emit);
}

/// All minimal non-empty zero-sum sub-multisets of `seq`, deduplicated and
/// sorted by encoding.
pub fn minimal_zero_sum_subsequences(seq: &Sequence) -> Result<Vec<Sequence>> {
    let table = GroupTable::new(&seq.group)?;
    Ok(minimal_blocks(&table, &seq.counts)
        .into_iter()
        .map(|c| Sequence::from_counts(&seq.group, c))
        .collect())
}

pub(crate) fn minimal_blocks(table: &GroupTable, counts: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for x in 0..table.len() {
        if counts[x] == 0 {
            continue;
        }
        if x == 0 {
            let mut b = vec![0; table.len()];
            b[0] = 1;
            out.push(b);
            continue;
        }
        let mut avail = counts.to_vec();
        avail[x] -= 1;
        // x is the least entry of the block
        for_each_completion(table, &avail, x, table.neg(x), &mut |w| {
            let mut b = w.to_vec();
            b[x] += 1;
            out.push(b);
        });
    }
    out.sort_by(|a, b| encoding_cmp(a, b));
    out.dedup();
    out
}

/// Encoding order for count vectors of possibly different lengths.
pub(crate) fn encoding_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let ea = a
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize));
    let eb = b
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize));
    ea.cmp(eb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::automorphism_group;

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn seq(n: u64, r: &[u64]) -> Sequence {
        Sequence::from_residues(&z(n), r).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(seq(3, &[1, 2]).sum().coords(), &[0]);
        assert_eq!(seq(3, &[1, 1, 1]).sum().coords(), &[0]);
        assert_eq!(seq(5, &[]).sum().coords(), &[0]);
        assert_eq!(seq(5, &[4, 4]).sum().coords(), &[3]);
    }

    #[test]
    fn concat_and_divides() {
        assert_eq!(
            seq(3, &[1]).concat(&seq(3, &[1, 2])).unwrap(),
            seq(3, &[1, 1, 2])
        );
        let s = seq(3, &[1, 2]);
        assert_eq!(s.concat(&seq(3, &[])).unwrap(), s);
        assert_eq!(seq(2, &[1, 1]).concat(&seq(2, &[1, 1])).unwrap().len(), 4);

        assert!(seq(3, &[1]).divides(&s).unwrap());
        assert!(!seq(3, &[1, 1]).divides(&s).unwrap());
        assert!(seq(3, &[]).divides(&s).unwrap());
        assert!(matches!(seq(2, &[1]).concat(&s), Err(Error::Structural(_))));
        assert!(matches!(
            seq(2, &[1]).divides(&s),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn minimal_examples() {
        assert_eq!(
            minimal_zero_sum_subsequences(&seq(3, &[1, 1, 1])).unwrap(),
            vec![seq(3, &[1, 1, 1])]
        );
        assert_eq!(
            minimal_zero_sum_subsequences(&seq(3, &[1, 2, 0])).unwrap(),
            vec![seq(3, &[0]), seq(3, &[1, 2])]
        );
        assert!(minimal_zero_sum_subsequences(&seq(2, &[1]))
            .unwrap()
            .is_empty());
    }

    /// Brute force over all sub-multisets.
    fn minimal_brute(s: &Sequence) -> Vec<Sequence> {
        let mut subs = vec![Sequence::empty(s.group())];
        for (x, c) in s.entries() {
            let mut next = Vec::new();
            for t in &subs {
                let mut u = t.clone();
                next.push(u.clone());
                for _ in 0..c {
                    u.push(&x).unwrap();
                    next.push(u.clone());
                }
            }
            subs = next;
        }
        let zs: Vec<_> = subs
            .into_iter()
            .filter(|t| !t.is_empty() && t.is_zero_sum())
            .collect();
        let mut out: Vec<Sequence> = zs
            .iter()
            .filter(|t| !zs.iter().any(|u| u != *t && u.divides(t).unwrap()))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn minimal_matches_brute_force() {
        let a = AbelianGroup::new(vec![2, 4]).unwrap();
        let cases = [
            vec![1usize, 1, 2, 3, 5, 7],
            vec![0, 4, 4, 6, 2],
            vec![1, 3, 5, 7, 6, 6],
        ];
        for idx in cases {
            let s = Sequence::from_indices(&a, idx).unwrap();
            assert_eq!(
                minimal_zero_sum_subsequences(&s).unwrap(),
                minimal_brute(&s)
            );
        }
        let s = seq(6, &[1, 1, 2, 3, 4, 5, 5]);
        assert_eq!(
            minimal_zero_sum_subsequences(&s).unwrap(),
            minimal_brute(&s)
        );
    }

    #[test]
    fn canonical_examples() {
        let g = z(3);
        let auts = automorphism_group(&g).unwrap();
        assert_eq!(canonical_form(&seq(3, &[2, 2]), &auts), seq(3, &[1, 1]));
        let s = seq(3, &[2, 0, 2, 1]);
        let c = canonical_form(&s, &auts);
        assert_eq!(canonical_form(&c, &auts), c);
        let zero = Sequence::from_elements(&g, &[g.zero()]).unwrap();
        assert_eq!(canonical_form(&zero, &auts), zero);
    }

    #[test]
    fn ordering_and_display() {
        assert!(seq(3, &[0]) < seq(3, &[1, 2]));
        assert!(seq(3, &[1, 1]) < seq(3, &[1, 2]));
        assert_eq!(seq(3, &[2, 1, 1]).to_string(), "[1,1,2]");
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let s = Sequence::from_indices(&a, [1, 2]).unwrap();
        assert_eq!(s.to_string(), "[(0,1),(1,0)]");
    }
}
