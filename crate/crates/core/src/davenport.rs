//! Exact generalized Davenport constants and related zero-sum invariants.
//!
//! `D_k(A)` is found by scanning lengths `n = 1, 2, ...` and enumerating
//! multisets over `A \ {0}` of length `n` up to automorphism. The first `n`
//! at which every such multiset packs `k` disjoint zero-sum blocks is
//! `D_k(A)`: longer sequences contain a length-`n` subsequence, and zero
//! entries never hurt, since appending one element raises `k_max` by at most one.
//! The scan is bounded by `k·|A|`.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{automorphism_group, AbelianGroup, Automorphism, GroupElement};
use crate::oracle::naive_k_max;
use crate::packing::PackingEngine;
use crate::sequence::{is_canonical_counts, minimal_blocks, Sequence};
use crate::table::GroupTable;

/// Largest group order the engine accepts at all.
pub const MAX_GROUP_ORDER: u64 = 64;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub max_order: u64,
    pub deadline: Option<Instant>,
    /// Re-check every extremal witness with the naive oracle.
    pub verify_witnesses: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_order: MAX_GROUP_ORDER,
            deadline: None,
            verify_witnesses: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Multisets visited by the length scan (before orbit filtering).
    pub multisets: u64,
    /// Multisets that were canonical and had `k_max` evaluated.
    pub canonical: u64,
    pub packing_nodes: u64,
    pub memo_entries: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DavenportReport {
    pub group: AbelianGroup,
    pub k: usize,
    #[serde(rename = "value_Dk")]
    pub davenport: usize,
    #[serde(rename = "value_dk")]
    pub max_free_length: usize,
    pub extremal_witness: Sequence,
    /// `k_max` of the witness as recomputed by the naive oracle.
    pub witness_k_max: usize,
    pub search_stats: SearchStats,
    pub timings: Timings,
}

pub struct DavenportEngine {
    group: AbelianGroup,
    auts: Vec<Automorphism>,
    packing: PackingEngine,
    config: EngineConfig,
    reports: Vec<DavenportReport>,
}

impl DavenportEngine {
    pub fn new(group: &AbelianGroup, config: EngineConfig) -> Result<Self> {
        if group.order() > config.max_order {
            return Err(Error::capacity(
                format!("zero-sum search over {group} of order {}", group.order()),
                config.max_order,
            ));
        }
        // orbit reduction is skipped when the automorphism group is too large
        let auts = match automorphism_group(group) {
            Ok(a) => a,
            Err(Error::Capacity { .. }) => vec![Automorphism::identity(group)],
            Err(e) => return Err(e),
        };
        let packing = PackingEngine::new(group)?.with_deadline(config.deadline);
        Ok(DavenportEngine {
            group: group.clone(),
            auts,
            packing,
            config,
            reports: Vec::new(),
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.auts
    }

    /// The `k_max` engine, e.g. for memo spills.
    pub fn packing(&self) -> &PackingEngine {
        &self.packing
    }

    pub fn packing_mut(&mut self) -> &mut PackingEngine {
        &mut self.packing
    }

    fn check_deadline(&self, what: &str) -> Result<()> {
        if let Some(d) = self.config.deadline {
            if Instant::now() > d {
                return Err(Error::Budget(what.into()));
            }
        }
        Ok(())
    }

    /// `D_k(A)` with an extremal witness of length `d_k(A) = D_k(A) - 1`.
    pub fn davenport_k(&mut self, k: usize) -> Result<DavenportReport> {
        if k == 0 {
            return Err(Error::Domain("D_k needs k >= 1".into()));
        }
        if let Some(r) = self.reports.iter().find(|r| r.k == k) {
            return Ok(r.clone());
        }
        let start = Instant::now();
        let before = self.packing.stats();
        let mut stats = SearchStats::default();

        let (davenport, witness) = if self.group.is_trivial() {
            // only zero entries exist; each is its own block
            let w = Sequence::from_indices(&self.group, std::iter::repeat_n(0, k - 1))?;
            (k, w)
        } else {
            let limit = k * self.group.order() as usize;
            let mut last_bad = Sequence::empty(&self.group);
            let mut found = None;
            for n in 1..=limit {
                self.check_deadline("D_k length scan")?;
                match self.find_short_packing(n, k, &mut stats)? {
                    Some(bad) => last_bad = bad,
                    None => {
                        found = Some(n);
                        break;
                    }
                }
            }
            let n = found.ok_or_else(|| {
                Error::capacity(format!("D_{k}({}) length scan", self.group), limit as u64)
            })?;
            (n, last_bad)
        };

        let witness_k_max = if self.config.verify_witnesses {
            naive_k_max(&witness)?
        } else {
            self.packing.k_max(&witness)?
        };
        if witness.len() != davenport - 1 || witness_k_max >= k {
            return Err(Error::Verification(format!(
                "witness {witness} for D_{k}({}) has length {} and k_max {witness_k_max}",
                self.group,
                witness.len()
            )));
        }
        let after = self.packing.stats();
        stats.packing_nodes = after.nodes - before.nodes;
        stats.memo_entries = self.packing.memo_len() as u64;
        let report = DavenportReport {
            group: self.group.clone(),
            k,
            davenport,
            max_free_length: davenport - 1,
            extremal_witness: witness,
            witness_k_max,
            search_stats: stats,
            timings: Timings {
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            },
        };
        self.reports.push(report.clone());
        Ok(report)
    }

    /// First canonical multiset of length `n` over the non-zero elements
    /// (in encoding order) with fewer than `k` disjoint zero-sum blocks.
    fn find_short_packing(
        &mut self,
        n: usize,
        k: usize,
        stats: &mut SearchStats,
    ) -> Result<Option<Sequence>> {
        let mut found = None;
        let mut scratch = Vec::new();
        let auts = &self.auts;
        let packing = &mut self.packing;
        for_each_multiset(self.group.order() as usize, n, &mut |counts| {
            stats.multisets += 1;
            if !is_canonical_counts(counts, auts, &mut scratch) {
                return Ok(true);
            }
            stats.canonical += 1;
            if packing.k_max_counts(counts)? < k {
                found = Some(counts.to_vec());
                return Ok(false);
            }
            Ok(true)
        })?;
        Ok(found.map(|c| Sequence::from_indices(&self.group, expand(&c)).expect("valid counts")))
    }

    /// Classical `η(A)`: least `ℓ` such that every length-`ℓ` sequence has a
    /// non-empty zero-sum subsequence of length at most `exp(A)`.
    pub fn eta(&mut self) -> Result<EtaReport> {
        let start = Instant::now();
        let exp = self.group.exponent() as usize;
        if self.group.is_trivial() {
            return Ok(EtaReport {
                group: self.group.clone(),
                eta: 1,
                witness: Sequence::empty(&self.group),
                timings: Timings::default(),
            });
        }
        let table = self.packing.table().clone();
        let limit = self.group.order() as usize + 1;
        let mut last_bad = Sequence::empty(&self.group);
        let mut scratch = Vec::new();
        for n in 1..=limit {
            self.check_deadline("eta length scan")?;
            let mut found = None;
            for_each_multiset(self.group.order() as usize, n, &mut |counts| {
                if !is_canonical_counts(counts, &self.auts, &mut scratch) {
                    return Ok(true);
                }
                let shortest = minimal_blocks(&table, counts)
                    .iter()
                    .map(|b| b.iter().sum::<u32>() as usize)
                    .min();
                if shortest.is_none_or(|l| l > exp) {
                    found = Some(counts.to_vec());
                    return Ok(false);
                }
                Ok(true)
            })?;
            match found {
                Some(c) => last_bad = Sequence::from_indices(&self.group, expand(&c))?,
                None => {
                    return Ok(EtaReport {
                        group: self.group.clone(),
                        eta: n,
                        witness: last_bad,
                        timings: Timings {
                            wall_ms: start.elapsed().as_secs_f64() * 1e3,
                        },
                    })
                }
            }
        }
        Err(Error::capacity(
            format!("eta({}) length scan", self.group),
            limit as u64,
        ))
    }

    /// Computes `D_1 .. D_{k_upto}` and reads off the eventual slope.
    pub fn linearity_profile(&mut self, k_upto: usize) -> Result<LinearityProfile> {
        if k_upto < 2 {
            return Err(Error::Domain("linearity profile needs k_upto >= 2".into()));
        }
        let mut table = Vec::with_capacity(k_upto);
        for k in 1..=k_upto {
            table.push((k, self.davenport_k(k)?.davenport));
        }
        Ok(LinearityProfile::from_table(&self.group, table))
    }
}

/// Calls `f` on every count vector over indices `1..n_elems` with total
/// `len`, in encoding order. `f` returns `Ok(false)` to stop early.
fn for_each_multiset(
    n_elems: usize,
    len: usize,
    f: &mut dyn FnMut(&[u32]) -> Result<bool>,
) -> Result<()> {
    fn rec(
        counts: &mut Vec<u32>,
        start: usize,
        left: usize,
        f: &mut dyn FnMut(&[u32]) -> Result<bool>,
    ) -> Result<bool> {
        if left == 0 {
            return f(counts);
        }
        for i in start..counts.len() {
            counts[i] += 1;
            let go_on = rec(counts, i, left - 1, f)?;
            counts[i] -= 1;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
    if n_elems < 2 {
        return Ok(());
    }
    let mut counts = vec![0u32; n_elems];
    rec(&mut counts, 1, len, f).map(|_| ())
}

fn expand(counts: &[u32]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
        .collect()
}

/// One-shot `D_k(A)` with default configuration.
pub fn davenport_k(group: &AbelianGroup, k: usize) -> Result<DavenportReport> {
    DavenportEngine::new(group, EngineConfig::default())?.davenport_k(k)
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaReport {
    pub group: AbelianGroup,
    pub eta: usize,
    /// Longest sequence found without a short zero-sum subsequence.
    pub witness: Sequence,
    pub timings: Timings,
}

pub fn eta(group: &AbelianGroup) -> Result<EtaReport> {
    DavenportEngine::new(group, EngineConfig::default())?.eta()
}

/// `σ(A) = exp(A)`.
pub fn sigma_abelian(group: &AbelianGroup) -> u64 {
    group.exponent()
}

/// Largest distinct-character list accepted by [`sigma_diagonal`].
pub const SIGMA_DIAGONAL_CHAR_LIMIT: usize = 16;

/// `σ(A, V)` for a diagonal action with the given characters.
///
/// For every non-empty set `T` of listed characters, takes the shortest
/// non-empty zero-sum sequence supported in `T` (a point whose non-zero
/// coordinates are exactly `T` is only killed by monomials supported in
/// `T`), and maximizes over `T`. The result is cross-checked against the
/// largest order of a single listed character.
pub fn sigma_diagonal(group: &AbelianGroup, chars: &[GroupElement]) -> Result<u64> {
    if chars.is_empty() {
        return Err(Error::Domain(
            "sigma_diagonal needs at least one character".into(),
        ));
    }
    let table = GroupTable::new(group)?;
    let mut idx: Vec<usize> = chars
        .iter()
        .map(|c| group.element(c.coords()).map(|c| group.index_of(&c)))
        .collect::<Result<_>>()?;
    idx.sort_unstable();
    idx.dedup();
    if idx.len() > SIGMA_DIAGONAL_CHAR_LIMIT {
        return Err(Error::capacity(
            "distinct characters in sigma_diagonal",
            SIGMA_DIAGONAL_CHAR_LIMIT as u64,
        ));
    }
    let n = table.len();
    let mut best = 0usize;
    for mask in 1u32..(1 << idx.len()) {
        let support: Vec<usize> = (0..idx.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| idx[b])
            .collect();
        // breadth-first distances from 0 using steps in the support
        let mut dist = vec![usize::MAX; n];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for &t in &support {
                let u = table.add(s, t);
                if dist[u] == usize::MAX {
                    dist[u] = dist[s] + 1;
                    queue.push_back(u);
                }
            }
        }
        let shortest = support
            .iter()
            .map(|&t| dist[table.neg(t)] + 1)
            .min()
            .expect("non-empty support");
        best = best.max(shortest);
    }
    let max_order = idx.iter().map(|&i| table.order_of(i)).max().unwrap();
    if best != max_order {
        return Err(Error::Verification(format!(
            "sigma_diagonal subset scan gave {best}, maximal character order is {max_order}"
        )));
    }
    Ok(best as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileStatus {
    Determined,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearityProfile {
    pub group: AbelianGroup,
    /// Observed final increment `D_K - D_{K-1}`.
    pub slope: u64,
    pub k0: Option<usize>,
    #[serde(rename = "D0")]
    pub d0: Option<u64>,
    pub table: Vec<(usize, usize)>,
    pub status: ProfileStatus,
}

impl LinearityProfile {
    /// Reads the profile off a `(k, D_k)` table for `k = 1..K`.
    pub fn from_table(group: &AbelianGroup, table: Vec<(usize, usize)>) -> Self {
        let exp = group.exponent() as usize;
        let inc = |i: usize| table[i + 1].1 as i64 - table[i].1 as i64;
        let last = table.len().saturating_sub(1);
        let slope = if last > 0 {
            inc(last - 1).max(0) as u64
        } else {
            0
        };
        let stabilized = slope == exp as u64;
        let (k0, d0, status) = if stabilized {
            let mut i = last - 1;
            while i > 0 && inc(i - 1) == exp as i64 {
                i -= 1;
            }
            let (kk, dk) = table[last];
            (
                Some(table[i].0),
                Some((dk - kk * exp) as u64),
                ProfileStatus::Determined,
            )
        } else {
            (None, None, ProfileStatus::Undetermined)
        };
        LinearityProfile {
            group: group.clone(),
            slope,
            k0,
            d0,
            table,
            status,
        }
    }

    pub fn value(&self, k: usize) -> Option<usize> {
        self.table.iter().find(|(kk, _)| *kk == k).map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckInstance {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl CheckInstance {
    pub fn new(name: &str, detail: String, passed: bool) -> Self {
        CheckInstance {
            name: name.to_string(),
            detail,
            passed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub group: AbelianGroup,
    pub instances: Vec<CheckInstance>,
}

impl InequalityReport {
    pub fn violations(&self) -> Vec<&CheckInstance> {
        self.instances.iter().filter(|c| !c.passed).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|c| c.passed)
    }
}

/// Evaluates the growth inequalities on every instance a table supports:
/// `r·D_k <= k·D_r` for `r <= k`, `D_k >= k·exp(A)`, `D_k <= k·D_1`,
/// `D_k <= D_{k+1}`, and `D_{k+1} <= D_k + exp(A)` from the observed `k0` on.
pub fn verify_inequalities(group: &AbelianGroup, profile: &LinearityProfile) -> InequalityReport {
    let exp = group.exponent() as usize;
    let t = &profile.table;
    let mut out = Vec::new();
    let d1 = profile.value(1);
    for &(k, dk) in t {
        for &(r, dr) in t.iter().filter(|(r, _)| *r <= k) {
            out.push(CheckInstance::new(
                "k/r bound",
                format!(
                    "D_{k}={dk} <= ({k}/{r})·D_{r}={}",
                    k as f64 / r as f64 * dr as f64
                ),
                r * dk <= k * dr,
            ));
        }
        out.push(CheckInstance::new(
            "sigma lower bound",
            format!("D_{k}={dk} >= {k}·exp={}", k * exp),
            dk >= k * exp,
        ));
        if let Some(d1) = d1 {
            out.push(CheckInstance::new(
                "trivial bound",
                format!("D_{k}={dk} <= {k}·D_1={}", k * d1),
                dk <= k * d1,
            ));
        }
    }
    for w in t.windows(2) {
        let ((k, dk), (k1, dk1)) = (w[0], w[1]);
        out.push(CheckInstance::new(
            "monotonicity",
            format!("D_{k}={dk} <= D_{k1}={dk1}"),
            dk <= dk1,
        ));
        if profile.k0.is_some_and(|k0| k >= k0) {
            out.push(CheckInstance::new(
                "step bound",
                format!("D_{k1}={dk1} <= D_{k}+exp={}", dk + exp),
                dk1 <= dk + exp,
            ));
        }
    }
    InequalityReport {
        group: group.clone(),
        instances: out,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupReport {
    pub group: AbelianGroup,
    pub subgroup: AbelianGroup,
    pub index: u64,
    pub instances: Vec<CheckInstance>,
}

impl SubgroupReport {
    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|c| c.passed)
    }
}

/// Checks `exp(A)/|A| <= exp(B)/|B|` and `D_k(A) <= D_{k·[A:B]}(B)` for a
/// group `B` isomorphic to a subgroup of `A`.
pub fn verify_subgroup_relations(
    a: &AbelianGroup,
    b: &AbelianGroup,
    ks: &[usize],
    config: &EngineConfig,
) -> Result<SubgroupReport> {
    if !b.embeds_in(a) {
        return Err(Error::Domain(format!(
            "{b} is not isomorphic to a subgroup of {a}"
        )));
    }
    let index = a.order() / b.order();
    let mut instances = vec![CheckInstance::new(
        "sigma ratio",
        format!(
            "exp(A)/|A| = {}/{} <= exp(B)/|B| = {}/{}",
            a.exponent(),
            a.order(),
            b.exponent(),
            b.order()
        ),
        a.exponent() * b.order() <= b.exponent() * a.order(),
    )];
    let mut ea = DavenportEngine::new(a, config.clone())?;
    let mut eb = DavenportEngine::new(b, config.clone())?;
    for &k in ks {
        let da = ea.davenport_k(k)?.davenport;
        let kb = k * index as usize;
        let db = eb.davenport_k(kb)?.davenport;
        instances.push(CheckInstance::new(
            "index bound",
            format!("D_{k}({a})={da} <= D_{kb}({b})={db}"),
            da <= db,
        ));
    }
    Ok(SubgroupReport {
        group: a.clone(),
        subgroup: b.clone(),
        index,
        instances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_product(f).unwrap()
    }

    #[test]
    fn davenport_examples() {
        let r = davenport_k(&g(&[3]), 1).unwrap();
        assert_eq!(r.davenport, 3);
        assert_eq!(r.extremal_witness.to_string(), "[1,1]");
        let r = davenport_k(&g(&[2, 2]), 1).unwrap();
        assert_eq!(r.davenport, 3);
        assert_eq!(r.extremal_witness.len(), 2);
        assert_eq!(davenport_k(&g(&[3]), 2).unwrap().davenport, 6);
        assert_eq!(
            davenport_k(&AbelianGroup::trivial(), 1).unwrap().davenport,
            1
        );
        assert_eq!(
            davenport_k(&AbelianGroup::trivial(), 3).unwrap().davenport,
            3
        );
    }

    #[test]
    fn report_invariants() {
        let r = davenport_k(&g(&[2, 4]), 2).unwrap();
        assert_eq!(r.davenport, r.max_free_length + 1);
        assert_eq!(r.extremal_witness.len(), r.max_free_length);
        assert!(r.witness_k_max <= 1);
    }

    #[test]
    fn k_zero_and_capacity() {
        assert!(matches!(davenport_k(&g(&[3]), 0), Err(Error::Domain(_))));
        match davenport_k(&g(&[65]), 1) {
            Err(Error::Capacity { limit, .. }) => assert_eq!(limit, 64),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expired_deadline_aborts() {
        let config = EngineConfig {
            deadline: Some(Instant::now()),
            ..EngineConfig::default()
        };
        let mut e = DavenportEngine::new(&g(&[3, 3]), config).unwrap();
        std::thread::sleep(std::time::Duration::from_millis(2));
        assert!(matches!(e.davenport_k(2), Err(Error::Budget(_))));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&g(&[2])).unwrap().eta, 2);
        assert_eq!(eta(&g(&[3])).unwrap().eta, 3);
        assert_eq!(eta(&g(&[2, 2])).unwrap().eta, 4);
        assert_eq!(eta(&AbelianGroup::trivial()).unwrap().eta, 1);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_abelian(&g(&[6])), 6);
        assert_eq!(sigma_abelian(&g(&[2, 4])), 4);
        assert_eq!(sigma_abelian(&AbelianGroup::trivial()), 1);

        let z6 = g(&[6]);
        let ch = |r| z6.element(&[r]).unwrap();
        assert_eq!(sigma_diagonal(&z6, &[ch(2), ch(3)]).unwrap(), 3);
        assert_eq!(sigma_diagonal(&z6, &[ch(1)]).unwrap(), 6);
        let z5 = g(&[5]);
        assert_eq!(
            sigma_diagonal(&z5, &[z5.element(&[1]).unwrap()]).unwrap(),
            5
        );
        assert!(matches!(sigma_diagonal(&z6, &[]), Err(Error::Domain(_))));
    }

    #[test]
    fn sigma_diagonal_full_dual_is_exponent() {
        for f in [&[2][..], &[6], &[2, 2], &[2, 4], &[3, 3]] {
            let a = g(f);
            let all: Vec<_> = a.elements().collect();
            assert_eq!(sigma_diagonal(&a, &all).unwrap(), a.exponent());
        }
    }

    #[test]
    fn linearity_examples() {
        let mut e = DavenportEngine::new(&g(&[2]), EngineConfig::default()).unwrap();
        let p = e.linearity_profile(4).unwrap();
        assert_eq!(p.table, vec![(1, 2), (2, 4), (3, 6), (4, 8)]);
        assert_eq!((p.slope, p.k0, p.d0), (2, Some(1), Some(0)));

        let mut e = DavenportEngine::new(&g(&[2, 2]), EngineConfig::default()).unwrap();
        let p = e.linearity_profile(4).unwrap();
        assert_eq!(p.table, vec![(1, 3), (2, 5), (3, 7), (4, 9)]);
        assert_eq!((p.slope, p.d0), (2, Some(1)));

        let mut e = DavenportEngine::new(&g(&[3]), EngineConfig::default()).unwrap();
        let p = e.linearity_profile(3).unwrap();
        assert_eq!((p.slope, p.d0), (3, Some(0)));
        assert!(e.linearity_profile(1).is_err());
    }

    #[test]
    fn undetermined_profile() {
        let p = LinearityProfile::from_table(&g(&[3]), vec![(1, 3), (2, 5)]);
        assert_eq!(p.status, ProfileStatus::Undetermined);
        assert_eq!(p.slope, 2);
        assert_eq!(p.k0, None);
    }

    #[test]
    fn inequality_examples() {
        let mut e = DavenportEngine::new(&g(&[3]), EngineConfig::default()).unwrap();
        let p = e.linearity_profile(3).unwrap();
        let rep = verify_inequalities(&g(&[3]), &p);
        assert!(rep.all_passed());
        assert!(rep
            .instances
            .iter()
            .any(|c| c.detail.starts_with("D_3=9 <= (3/1)")));

        let bad = LinearityProfile::from_table(&g(&[3]), vec![(1, 3), (2, 7), (3, 9)]);
        let rep = verify_inequalities(&g(&[3]), &bad);
        assert!(!rep.all_passed());
        assert!(rep.violations().iter().any(|c| c.name == "trivial bound"));
    }

    #[test]
    fn subgroup_examples() {
        let c = EngineConfig::default();
        let r = verify_subgroup_relations(&g(&[4]), &g(&[2]), &[1], &c).unwrap();
        assert!(r.all_passed());
        assert!(r.instances[1].detail.contains("=4 <= D_2(Z2)=4"));
        assert!(verify_subgroup_relations(&g(&[2, 2]), &g(&[2]), &[1], &c)
            .unwrap()
            .all_passed());
        assert!(verify_subgroup_relations(&g(&[6]), &g(&[6]), &[1, 2], &c)
            .unwrap()
            .all_passed());
        assert!(matches!(
            verify_subgroup_relations(&g(&[2, 2]), &g(&[4]), &[1], &c),
            Err(Error::Domain(_))
        ));
    }
}
