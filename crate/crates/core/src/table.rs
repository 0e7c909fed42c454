//! Dense Cayley table over element indices, used by the combinatorial engines.

use crate::error::{Error, Result};
use crate::group::AbelianGroup;

/// Largest group order for which a dense table is built.
pub const TABLE_ORDER_LIMIT: u64 = 1024;

#[derive(Clone, Debug)]
pub struct GroupTable {
    group: AbelianGroup,
    n: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    order: Vec<u16>,
}

impl GroupTable {
    pub fn new(group: &AbelianGroup) -> Result<Self> {
        let order = group.order();
        if order > TABLE_ORDER_LIMIT {
            return Err(Error::capacity(
                format!("dense table for {group} of order {order}"),
                TABLE_ORDER_LIMIT,
            ));
        }
        let n = order as usize;
        let els: Vec<_> = group.elements().collect();
        let mut add = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let s = group.add(&els[i], &els[j]).expect("same group");
                add[i * n + j] = group.index_of(&s) as u16;
            }
        }
        let neg = els
            .iter()
            .map(|x| group.index_of(&group.neg(x).unwrap()) as u16)
            .collect();
        let ord = els
            .iter()
            .map(|x| group.element_order(x).unwrap() as u16)
            .collect();
        Ok(GroupTable {
            group: group.clone(),
            n,
            add,
            neg,
            order: ord,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn order_of(&self, a: usize) -> usize {
        self.order[a] as usize
    }

    pub fn sum_counts(&self, counts: &[u32]) -> usize {
        let mut s = 0;
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..(c as usize % self.order_of(i)) {
                s = self.add(s, i);
            }
        }
        s
    }
}

/// Set of group elements as a bitset over indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub(crate) fn empty(n: usize) -> Self {
        ElementSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self ∪ (self + g) ∪ {g}`: subset sums after appending `g`.
    pub(crate) fn extended_by(&self, table: &GroupTable, g: usize) -> Self {
        let mut out = self.clone();
        out.insert(g);
        for i in 0..table.len() {
            if self.contains(i) {
                out.insert(table.add(i, g));
            }
        }
        out
    }
}
