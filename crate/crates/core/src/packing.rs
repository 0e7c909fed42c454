//! Maximum number of disjoint non-empty zero-sum blocks in a sequence.
//!
//! The engine peels zero entries (each is a block of its own), then runs a
//! memoized recursion over the remaining multiset: the least present entry
//! `x` is either left out of every block, or it lies in some minimal
//! zero-sum block. Restricting to minimal blocks loses nothing because every
//! zero-sum block splits into minimal ones.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::sequence::{for_each_completion, minimal_blocks, Sequence};
use crate::table::GroupTable;

/// Memo key: run-length pairs `(index, multiplicity)` of the non-zero part.
type Key = Box<[u16]>;

const DEADLINE_POLL: u64 = 1 << 12;

/// Disjoint zero-sum blocks extracted from a sequence, plus what is left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPacking {
    pub blocks: Vec<Sequence>,
    pub remainder: Sequence,
}

impl BlockPacking {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Checks the packing against the sequence it claims to split.
    pub fn verify(&self, original: &Sequence) -> Result<()> {
        let mut acc = self.remainder.clone();
        for b in &self.blocks {
            if b.is_empty() || !b.is_zero_sum() {
                return Err(Error::Verification(format!(
                    "block {b} is empty or not zero-sum"
                )));
            }
            acc = acc.concat(b)?;
        }
        if &acc != original {
            return Err(Error::Verification(format!(
                "blocks and remainder do not reassemble {original}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PackingStats {
    pub nodes: u64,
    pub memo_hits: u64,
}

pub struct PackingEngine {
    table: GroupTable,
    memo: HashMap<Key, u16>,
    stats: PackingStats,
    deadline: Option<Instant>,
}

impl PackingEngine {
    pub fn new(group: &AbelianGroup) -> Result<Self> {
        Ok(PackingEngine {
            table: GroupTable::new(group)?,
            memo: HashMap::new(),
            stats: PackingStats::default(),
            deadline: None,
        })
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn set_deadline(&mut self, deadline: Option<Instant>) {
        self.deadline = deadline;
    }

    pub fn group(&self) -> &AbelianGroup {
        self.table.group()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn stats(&self) -> PackingStats {
        self.stats
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn check_group(&self, seq: &Sequence) -> Result<()> {
        if seq.group() != self.table.group() {
            return Err(Error::Structural(format!(
                "engine for {} queried with a sequence over {}",
                self.table.group(),
                seq.group()
            )));
        }
        Ok(())
    }

    pub fn k_max(&mut self, seq: &Sequence) -> Result<usize> {
        self.check_group(seq)?;
        self.k_max_counts(seq.counts())
    }

    /// `k_max` of a raw count vector over the engine's group.
    pub(crate) fn k_max_counts(&mut self, counts: &[u32]) -> Result<usize> {
        let zeros = counts[0] as usize;
        let mut rest: Vec<u32> = counts.to_vec();
        rest[0] = 0;
        Ok(zeros + self.search(&mut rest)? as usize)
    }

    fn key(counts: &[u32]) -> Key {
        let mut k = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                k.push(i as u16);
                k.push(c as u16);
            }
        }
        k.into_boxed_slice()
    }

    fn search(&mut self, counts: &mut Vec<u32>) -> Result<u16> {
        let Some(x) = counts.iter().position(|&c| c > 0) else {
            return Ok(0);
        };
        let key = Self::key(counts);
        if let Some(&v) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(DEADLINE_POLL) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Budget("k_max search".into()));
                }
            }
        }

        counts[x] -= 1;
        let skip = self.search(counts)?;
        let mut best = skip;

        let mut completions: Vec<Vec<u32>> = Vec::new();
        for_each_completion(&self.table, counts, x, self.table.neg(x), &mut |w| {
            completions.push(w.to_vec())
        });
        for w in completions {
            for (c, d) in counts.iter_mut().zip(&w) {
                *c -= d;
            }
            let with = 1 + self.search(counts)?;
            for (c, d) in counts.iter_mut().zip(&w) {
                *c += d;
            }
            best = best.max(with);
            // removing one entry costs at most one block
            if best == skip + 1 {
                break;
            }
        }
        counts[x] += 1;
        self.memo.insert(key, best);
        Ok(best)
    }

    /// `k_max` together with a packing attaining it. Blocks are chosen
    /// greedily as the least minimal block (by encoding) that keeps the
    /// optimum reachable.
    pub fn k_max_with_witness(&mut self, seq: &Sequence) -> Result<(usize, BlockPacking)> {
        self.check_group(seq)?;
        let total = self.k_max(seq)?;
        let mut rest = seq.counts().to_vec();
        let mut blocks = Vec::new();
        let mut need = total;
        while need > 0 {
            let candidates = minimal_blocks(&self.table, &rest);
            let mut chosen = None;
            for b in candidates {
                let after: Vec<u32> = rest.iter().zip(&b).map(|(r, c)| r - c).collect();
                if self.k_max_counts(&after)? + 1 == need {
                    chosen = Some((b, after));
                    break;
                }
            }
            let (b, after) = chosen.ok_or_else(|| {
                Error::Verification(
                    "no block attains the optimum during witness reconstruction".into(),
                )
            })?;
            blocks.push(Sequence::from_counts(seq.group(), b));
            rest = after;
            need -= 1;
        }
        let packing = BlockPacking {
            blocks,
            remainder: Sequence::from_counts(seq.group(), rest),
        };
        packing.verify(seq)?;
        Ok((total, packing))
    }

    /// Writes the memo table as text: one `i:m,i:m,... value` line per entry.
    pub fn save_memo(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Domain(format!("memo spill {}: {e}", path.display()));
        let mut f = fs::File::create(path).map_err(io)?;
        writeln!(f, "zsl-kmax-memo 1 {}", self.group()).map_err(io)?;
        let mut entries: Vec<_> = self.memo.iter().collect();
        entries.sort();
        for (k, v) in entries {
            let body: Vec<String> = k.chunks(2).map(|p| format!("{}:{}", p[0], p[1])).collect();
            writeln!(f, "{} {v}", body.join(",")).map_err(io)?;
        }
        Ok(())
    }

    /// Loads a memo file written by [`save_memo`](Self::save_memo) for the same group.
    pub fn load_memo(&mut self, path: &Path) -> Result<usize> {
        let io = |e: std::io::Error| Error::Domain(format!("memo spill {}: {e}", path.display()));
        let f = fs::File::open(path).map_err(io)?;
        let mut lines = BufReader::new(f).lines();
        let header = lines.next().transpose().map_err(io)?.unwrap_or_default();
        let expected = format!("zsl-kmax-memo 1 {}", self.group());
        if header != expected {
            return Err(Error::Validation(format!(
                "memo file {} has header {header:?}, expected {expected:?}",
                path.display()
            )));
        }
        let bad = |line: &str| Error::Validation(format!("malformed memo line {line:?}"));
        let mut loaded = 0;
        for line in lines {
            let line = line.map_err(io)?;
            let (body, value) = line.rsplit_once(' ').ok_or_else(|| bad(&line))?;
            let value: u16 = value.parse().map_err(|_| bad(&line))?;
            let mut key = Vec::new();
            if !body.is_empty() {
                for pair in body.split(',') {
                    let (i, m) = pair.split_once(':').ok_or_else(|| bad(&line))?;
                    key.push(i.parse::<u16>().map_err(|_| bad(&line))?);
                    key.push(m.parse::<u16>().map_err(|_| bad(&line))?);
                }
            }
            self.memo.insert(key.into_boxed_slice(), value);
            loaded += 1;
        }
        Ok(loaded)
    }
}

/// One-shot `k_max` with a fresh engine.
pub fn k_max(seq: &Sequence) -> Result<usize> {
    PackingEngine::new(seq.group())?.k_max(seq)
}

pub fn k_max_with_witness(seq: &Sequence) -> Result<(usize, BlockPacking)> {
    PackingEngine::new(seq.group())?.k_max_with_witness(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: u64, r: &[u64]) -> Sequence {
        Sequence::from_residues(&AbelianGroup::cyclic(n).unwrap(), r).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(k_max(&seq(3, &[1, 1, 1, 1, 1, 1])).unwrap(), 2);
        assert_eq!(k_max(&seq(3, &[1, 1])).unwrap(), 0);
        let s = seq(4, &[0, 1, 3, 2]);
        let without = seq(4, &[1, 3, 2]);
        assert_eq!(k_max(&s).unwrap(), 1 + k_max(&without).unwrap());
        assert_eq!(k_max(&seq(5, &[])).unwrap(), 0);
    }

    #[test]
    fn witness_is_lexicographic() {
        let s = seq(3, &[0, 1, 2, 1, 1, 1]);
        let (k, p) = k_max_with_witness(&s).unwrap();
        assert_eq!(k, 3);
        assert_eq!(p.blocks[0], seq(3, &[0]));
        assert_eq!(p.blocks[1], seq(3, &[1, 1, 1]));
        assert_eq!(p.blocks[2], seq(3, &[1, 2]));
        assert!(p.remainder.is_empty());
        p.verify(&s).unwrap();
    }

    #[test]
    fn wrong_group_rejected() {
        let mut e = PackingEngine::new(&AbelianGroup::cyclic(3).unwrap()).unwrap();
        assert!(matches!(e.k_max(&seq(4, &[1])), Err(Error::Structural(_))));
    }

    #[test]
    fn memo_roundtrip() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let s = Sequence::from_indices(&g, [1, 1, 2, 3, 5, 6, 7, 7]).unwrap();
        let mut e = PackingEngine::new(&g).unwrap();
        let k = e.k_max(&s).unwrap();
        let dir = std::env::temp_dir().join(format!("zsl-memo-test-{}", std::process::id()));
        e.save_memo(&dir).unwrap();
        let mut fresh = PackingEngine::new(&g).unwrap();
        assert_eq!(fresh.load_memo(&dir).unwrap(), e.memo_len());
        assert_eq!(fresh.k_max(&s).unwrap(), k);
        assert_eq!(fresh.stats().nodes, 0);
        let mut other = PackingEngine::new(&AbelianGroup::cyclic(8).unwrap()).unwrap();
        assert!(other.load_memo(&dir).is_err());
        std::fs::remove_file(dir).ok();
    }
}
