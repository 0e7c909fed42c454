//! Two explicit constructions: a zero-sum sequence over `Z_p` with a
//! prescribed support, and the product witness behind the lower bound
//! `D_{r+s-1}(G ⊕ H) >= D_r(G) + D_s(H) - 1`.

use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, mod_inverse};
use crate::davenport::{DavenportEngine, EngineConfig};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::oracle::naive_k_max;
use crate::sequence::Sequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportLemmaResult {
    pub p: u64,
    /// The support, ascending.
    pub support: Vec<u64>,
    /// `n_i` with `n_i·s_i = -Σ s_j`, aligned with `support`; empty when the
    /// support already sums to zero.
    pub n_values: Vec<u64>,
    /// Element whose multiplicity was raised, if any.
    pub raised: Option<u64>,
    /// The resulting sequence as residues, ascending.
    pub sequence: Vec<u64>,
}

impl SupportLemmaResult {
    pub fn as_sequence(&self) -> Result<Sequence> {
        Sequence::from_residues(&AbelianGroup::cyclic(self.p)?, &self.sequence)
    }
}

/// Zero-sum sequence over `Z_p` of length at most `p` whose support is
/// exactly `support`.
///
/// If the support sums to zero it is returned as is. Otherwise the element
/// with the least `n_i` (least element on ties) gets multiplicity `n_i + 1`.
pub fn zero_sum_with_support(p: u64, support: &[u64]) -> Result<SupportLemmaResult> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if support.is_empty() {
        return Err(Error::Domain("empty support".into()));
    }
    if let Some(&bad) = support.iter().find(|&&s| s == 0 || s >= p) {
        return Err(Error::Domain(format!(
            "{bad} is not a non-zero residue mod {p}"
        )));
    }
    let mut s = support.to_vec();
    s.sort_unstable();
    s.dedup();
    let total = s.iter().sum::<u64>() % p;
    if total == 0 {
        return Ok(SupportLemmaResult {
            p,
            sequence: s.clone(),
            support: s,
            n_values: vec![],
            raised: None,
        });
    }
    let target = p - total;
    let n_values: Vec<u64> = s
        .iter()
        .map(|&x| target * mod_inverse(x, p).expect("p prime") % p)
        .collect();
    // strict `<` keeps the least element on ties
    let mut best = 0;
    for i in 1..s.len() {
        if n_values[i] < n_values[best] {
            best = i;
        }
    }
    let mut sequence = Vec::new();
    for (i, &x) in s.iter().enumerate() {
        let mult = if i == best { n_values[i] + 1 } else { 1 };
        sequence.extend(std::iter::repeat_n(x, mult as usize));
    }
    Ok(SupportLemmaResult {
        p,
        raised: Some(s[best]),
        support: s,
        n_values,
        sequence,
    })
}

/// A sequence over `G ⊕ H` built from one over `G` and one over `H`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductWitness {
    pub left: AbelianGroup,
    pub right: AbelianGroup,
    /// Entries as pairs `(g, h)`: the `G`-part first, then the `H`-part.
    #[serde(serialize_with = "serialize_pairs")]
    pub pairs: Vec<(GroupElement, GroupElement)>,
    /// The same entries in the invariant-factor form of `G ⊕ H`.
    pub sequence: Sequence,
}

fn serialize_pairs<S: serde::Serializer>(
    pairs: &[(GroupElement, GroupElement)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&PairList(pairs))
}

struct PairList<'a>(&'a [(GroupElement, GroupElement)]);

impl fmt::Display for PairList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (g, h)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({g},{h})")?;
        }
        write!(f, ")")
    }
}

impl ProductWitness {
    pub fn pairs_display(&self) -> String {
        PairList(&self.pairs).to_string()
    }
}

/// Embeds `sg` as `(g, 0)` entries followed by `th` as `(0, h)` entries.
pub fn direct_product_witness(sg: &Sequence, th: &Sequence) -> Result<ProductWitness> {
    let (g, h) = (sg.group(), th.group());
    let sum = g.direct_sum(h)?;
    let mut pairs = Vec::with_capacity(sg.len() + th.len());
    let mut sequence = Sequence::empty(sum.group());
    for x in sg.elements() {
        sequence.push(&sum.embed_left(&x)?)?;
        pairs.push((x, h.zero()));
    }
    for y in th.elements() {
        sequence.push(&sum.embed_right(&y)?)?;
        pairs.push((g.zero(), y));
    }
    Ok(ProductWitness {
        left: g.clone(),
        right: h.clone(),
        pairs,
        sequence,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductBoundReport {
    pub left: AbelianGroup,
    pub right: AbelianGroup,
    pub product: AbelianGroup,
    pub r: usize,
    pub s: usize,
    pub d_r_left: usize,
    pub d_s_right: usize,
    /// `D_{r+s-1}(G ⊕ H)`
    pub d_product: usize,
    /// `D_r(G) + D_s(H) - 1`
    pub bound: usize,
    pub witness: ProductWitness,
    pub witness_k_max: usize,
    pub passed: bool,
}

/// Computes both sides of `D_{r+s-1}(G ⊕ H) >= D_r(G) + D_s(H) - 1` and
/// checks the product of the two extremal witnesses packs at most
/// `r + s - 2` blocks.
pub fn verify_direct_product_bound(
    g: &AbelianGroup,
    h: &AbelianGroup,
    r: usize,
    s: usize,
    config: &EngineConfig,
) -> Result<ProductBoundReport> {
    if r == 0 || s == 0 {
        return Err(Error::Domain("r and s must be at least 1".into()));
    }
    let rg = DavenportEngine::new(g, config.clone())?.davenport_k(r)?;
    let sh = DavenportEngine::new(h, config.clone())?.davenport_k(s)?;
    let witness = direct_product_witness(&rg.extremal_witness, &sh.extremal_witness)?;
    let product = witness.sequence.group().clone();
    let dp = DavenportEngine::new(&product, config.clone())?.davenport_k(r + s - 1)?;
    let witness_k_max = naive_k_max(&witness.sequence)?;
    let bound = rg.davenport + sh.davenport - 1;
    Ok(ProductBoundReport {
        left: g.clone(),
        right: h.clone(),
        product,
        r,
        s,
        d_r_left: rg.davenport,
        d_s_right: sh.davenport,
        d_product: dp.davenport,
        bound,
        passed: dp.davenport >= bound && witness_k_max + 2 <= r + s,
        witness,
        witness_k_max,
    })
}
