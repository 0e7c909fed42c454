//! Finite abelian groups in invariant-factor form, their automorphisms, and
//! the metacyclic groups `Z_p ⋊ Z_d`.
//!
//! Elements of an [`AbelianGroup`] are coordinate vectors. Every group of
//! order `n` also has a dense indexing `0..n` (mixed radix, first coordinate
//! most significant), so index order agrees with lexicographic order on
//! coordinates. The search engines work on indices.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{factorize, gcd, is_prime, lcm, mod_pow, multiplicative_order};
use crate::error::{Error, Result};

/// Default cap on `|A|` for brute-force automorphism enumeration.
pub const AUTOMORPHISM_ORDER_LIMIT: u64 = 64;
/// Cap on the number of automorphisms materialized.
pub const AUTOMORPHISM_COUNT_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", self.coords[0]),
            _ => {
                write!(f, "(")?;
                for (i, c) in self.coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl AbelianGroup {
    /// Builds a group from an invariant-factor chain `n_1 | n_2 | ... | n_r`.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::Validation(format!(
                "invariant factors must be >= 2, got {bad}"
            )));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Validation(format!(
                    "invariant factors must form a divisibility chain: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![] }
    }

    /// `Z_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::Domain("cyclic group of order 0".into())),
            1 => Ok(Self::trivial()),
            _ => Self::new(vec![n]),
        }
    }

    /// Normalizes an arbitrary direct product of cyclic groups.
    pub fn from_cyclic_product(orders: &[u64]) -> Result<Self> {
        Ok(Decomposition::new(orders)?.group)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element from coordinates already reduced into `[0, n_i)`.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::Structural(format!(
                "element of rank {} used in group {} of rank {}",
                coords.len(),
                self,
                self.rank()
            )));
        }
        for (c, n) in coords.iter().zip(&self.factors) {
            if c >= n {
                return Err(Error::Validation(format!(
                    "coordinate {c} out of range for factor Z{n}"
                )));
            }
        }
        Ok(GroupElement {
            coords: coords.to_vec(),
        })
    }

    /// Like [`element`](Self::element) but reduces signed coordinates.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::Structural(format!(
                "element of rank {} used in group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::Structural(format!(
                "element {x} has rank {} but {} has rank {}",
                x.coords.len(),
                self,
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        })
    }

    pub fn scale(&self, k: u64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(a, n)| ((*a as u128 * k as u128) % *n as u128) as u64)
                .collect(),
        })
    }

    /// Least `k >= 1` with `k·x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        self.check(x)?;
        Ok(x.coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &n)| n / gcd(a, n))
            .fold(1, lcm))
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (slot, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// External direct sum, normalized, together with the embeddings of both summands.
    pub fn direct_sum(&self, other: &AbelianGroup) -> Result<DirectSum> {
        let raw: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        let decomposition = Decomposition::new(&raw)?;
        Ok(DirectSum {
            left: self.clone(),
            right: other.clone(),
            decomposition,
        })
    }

    /// Whether `self` is isomorphic to a subgroup of `other`.
    ///
    /// Compares the p-primary parts: each partition of exponents must be
    /// dominated part-by-part (sorted descending).
    pub fn embeds_in(&self, other: &AbelianGroup) -> bool {
        let mine = primary_parts(&self.factors);
        let theirs = primary_parts(&other.factors);
        mine.iter().all(|(p, exps)| match theirs.get(p) {
            None => false,
            Some(big) => exps.len() <= big.len() && exps.iter().zip(big).all(|(a, b)| a <= b),
        })
    }

    /// Short label in the group-spec grammar, e.g. `Z2xZ4`; the trivial group is `Z1`.
    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            return "Z1".into();
        }
        self.factors
            .iter()
            .map(|n| format!("Z{n}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// p-primary exponent partitions, descending, keyed by prime.
fn primary_parts(orders: &[u64]) -> BTreeMap<u64, Vec<u32>> {
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in orders {
        for (p, a) in factorize(m) {
            parts.entry(p).or_default().push(a);
        }
    }
    for v in parts.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    parts
}

/// An explicit isomorphism from `Z_{m_1} ⊕ ... ⊕ Z_{m_s}` onto its
/// invariant-factor form.
///
/// Each raw factor is split into prime-power pieces by CRT; for every prime
/// the pieces are sorted by size and the i-th largest of each prime is glued
/// (again by CRT) into the i-th largest invariant factor.
#[derive(Clone, Debug)]
pub struct Decomposition {
    raw: Vec<u64>,
    group: AbelianGroup,
    /// (raw factor index, prime power, target factor index)
    pieces: Vec<(usize, u64, usize)>,
}

impl Decomposition {
    pub fn new(raw: &[u64]) -> Result<Self> {
        if raw.contains(&0) {
            return Err(Error::Domain("cyclic factor of order 0".into()));
        }
        // prime -> list of (exponent, raw index)
        let mut by_prime: BTreeMap<u64, Vec<(u32, usize)>> = BTreeMap::new();
        for (j, &m) in raw.iter().enumerate() {
            for (p, a) in factorize(m) {
                by_prime.entry(p).or_default().push((a, j));
            }
        }
        let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        let mut pieces = Vec::new();
        for (p, list) in by_prime.iter_mut() {
            // descending by exponent, stable on raw index
            list.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
            for (i, &(a, j)) in list.iter().enumerate() {
                // largest piece goes to the last (largest) invariant factor
                let target = rank - 1 - i;
                let q = p.pow(a);
                factors[target] *= q;
                pieces.push((j, q, target));
            }
        }
        let group = AbelianGroup::new(factors)?;
        Ok(Decomposition {
            raw: raw.to_vec(),
            group,
            pieces,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn raw_orders(&self) -> &[u64] {
        &self.raw
    }

    /// Image of a raw coordinate vector (reduced modulo each `m_j`).
    pub fn map(&self, raw_coords: &[u64]) -> Result<GroupElement> {
        if raw_coords.len() != self.raw.len() {
            return Err(Error::Structural(format!(
                "expected {} raw coordinates, got {}",
                self.raw.len(),
                raw_coords.len()
            )));
        }
        // CRT accumulation per target factor: x ≡ r (mod modulus)
        let mut acc: Vec<(u64, u64)> = vec![(0, 1); self.group.rank()];
        for &(j, q, t) in &self.pieces {
            let r = raw_coords[j] % q;
            let (x, m) = acc[t];
            acc[t] = crt_pair(x, m, r, q);
        }
        Ok(GroupElement {
            coords: acc.into_iter().map(|(x, _)| x).collect(),
        })
    }
}

fn crt_pair(x: u64, m: u64, r: u64, q: u64) -> (u64, u64) {
    // gcd(m, q) = 1 since pieces glued into one factor have distinct primes
    let inv = crate::arith::mod_inverse(m % q, q).expect("coprime moduli");
    let diff = (r + q - x % q) % q;
    let t = (diff as u128 * inv as u128 % q as u128) as u64;
    (x + m * t, m * q)
}

/// `G ⊕ H` in invariant-factor form with the two coordinate embeddings.
#[derive(Clone, Debug)]
pub struct DirectSum {
    left: AbelianGroup,
    right: AbelianGroup,
    decomposition: Decomposition,
}

impl DirectSum {
    pub fn group(&self) -> &AbelianGroup {
        self.decomposition.group()
    }

    /// `g ↦ (g, 0)`
    pub fn embed_left(&self, g: &GroupElement) -> Result<GroupElement> {
        self.left.check(g)?;
        let mut raw = g.coords.clone();
        raw.extend(std::iter::repeat_n(0, self.right.rank()));
        self.decomposition.map(&raw)
    }

    /// `h ↦ (0, h)`
    pub fn embed_right(&self, h: &GroupElement) -> Result<GroupElement> {
        self.right.check(h)?;
        let mut raw = vec![0; self.left.rank()];
        raw.extend_from_slice(&h.coords);
        self.decomposition.map(&raw)
    }
}

/// An automorphism given by the images of the canonical generators, with a
/// cached permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    /// `columns[j]` is the image of the j-th canonical generator.
    columns: Vec<GroupElement>,
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        let columns = (0..group.rank())
            .map(|j| {
                let mut c = vec![0; group.rank()];
                c[j] = 1;
                GroupElement { coords: c }
            })
            .collect();
        Automorphism {
            columns,
            perm: (0..group.order() as usize).collect(),
        }
    }

    fn from_columns(group: &AbelianGroup, columns: Vec<GroupElement>) -> Self {
        let perm = (0..group.order() as usize)
            .map(|i| {
                let x = group.element_at(i);
                let img = image(group, &columns, &x);
                group.index_of(&img)
            })
            .collect();
        Automorphism { columns, perm }
    }

    /// The integer matrix whose j-th column is the image of generator j.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let r = self.columns.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.columns[j].coords[i]).collect())
            .collect()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_index(&self, index: usize) -> usize {
        self.perm[index]
    }

    pub fn apply(&self, group: &AbelianGroup, x: &GroupElement) -> GroupElement {
        group.element_at(self.perm[group.index_of(x)])
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, group: &AbelianGroup, other: &Automorphism) -> Automorphism {
        let columns = other.columns.iter().map(|c| self.apply(group, c)).collect();
        Automorphism {
            columns,
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self, group: &AbelianGroup) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        let columns = (0..group.rank())
            .map(|j| {
                let mut c = vec![0; group.rank()];
                c[j] = 1;
                group.element_at(inv[group.index_of(&GroupElement { coords: c })])
            })
            .collect();
        Automorphism { columns, perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

fn image(group: &AbelianGroup, columns: &[GroupElement], x: &GroupElement) -> GroupElement {
    let mut acc = vec![0u64; group.rank()];
    for (xj, col) in x.coords.iter().zip(columns) {
        for ((a, c), n) in acc.iter_mut().zip(&col.coords).zip(&group.factors) {
            *a = (*a + xj * c) % n;
        }
    }
    GroupElement { coords: acc }
}

/// All automorphisms of `group` (identity first), with the default order limit.
pub fn automorphism_group(group: &AbelianGroup) -> Result<Vec<Automorphism>> {
    automorphism_group_with_limit(group, AUTOMORPHISM_ORDER_LIMIT)
}

/// Enumerates generator images `y_j` with `n_j·y_j = 0`, keeping only
/// assignments whose induced homomorphism is injective on the subgroup
/// generated so far.
pub fn automorphism_group_with_limit(
    group: &AbelianGroup,
    order_limit: u64,
) -> Result<Vec<Automorphism>> {
    let order = group.order();
    if order > order_limit {
        return Err(Error::capacity(
            format!("automorphism enumeration for {group} of order {order}"),
            order_limit,
        ));
    }
    let n = order as usize;
    let elements: Vec<GroupElement> = group.elements().collect();
    let add = |a: usize, b: usize| -> usize {
        let s = group.add(&elements[a], &elements[b]).expect("same group");
        group.index_of(&s)
    };
    let candidates: Vec<Vec<usize>> = group
        .factors
        .iter()
        .map(|&nj| {
            (0..n)
                .filter(|&i| nj % group.element_order(&elements[i]).unwrap() == 0)
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    // image set of the subgroup generated by the first chosen.len() generators
    let mut images: Vec<Vec<usize>> = vec![vec![0]];

    fn recurse(
        group: &AbelianGroup,
        elements: &[GroupElement],
        candidates: &[Vec<usize>],
        add: &dyn Fn(usize, usize) -> usize,
        chosen: &mut Vec<usize>,
        images: &mut Vec<Vec<usize>>,
        n: usize,
        out: &mut Vec<Automorphism>,
    ) -> Result<()> {
        let j = chosen.len();
        if j == group.rank() {
            if out.len() as u64 >= AUTOMORPHISM_COUNT_LIMIT {
                return Err(Error::capacity(
                    format!("number of automorphisms of {group}"),
                    AUTOMORPHISM_COUNT_LIMIT,
                ));
            }
            let columns = chosen.iter().map(|&i| elements[i].clone()).collect();
            out.push(Automorphism::from_columns(group, columns));
            return Ok(());
        }
        let nj = group.factors[j] as usize;
        for &y in &candidates[j] {
            let prev = images.last().unwrap();
            let mut seen = vec![false; n];
            let mut next = Vec::with_capacity(prev.len() * nj);
            let mut ok = true;
            let mut multiple = 0usize;
            'outer: for _ in 0..nj {
                for &s in prev {
                    let v = add(s, multiple);
                    if seen[v] {
                        ok = false;
                        break 'outer;
                    }
                    seen[v] = true;
                    next.push(v);
                }
                multiple = add(multiple, y);
            }
            if !ok {
                continue;
            }
            chosen.push(y);
            images.push(next);
            recurse(group, elements, candidates, add, chosen, images, n, out)?;
            images.pop();
            chosen.pop();
        }
        Ok(())
    }

    recurse(
        group,
        &elements,
        &candidates,
        &add,
        &mut chosen,
        &mut images,
        n,
        &mut out,
    )?;
    // identity first, then by permutation
    out.sort_by(|a, b| {
        b.is_identity()
            .cmp(&a.is_identity())
            .then(a.perm.cmp(&b.perm))
    });
    Ok(out)
}

/// `Z_p ⋊ Z_d` with `Z_d` acting on `Z_p` by multiplication with `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectGroup {
    p: u64,
    d: u64,
    e: u64,
}

/// Element `(a, t)` of a [`SemidirectGroup`], standing for `a` in the normal
/// subgroup and `t` in the complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SdElement {
    pub a: u64,
    pub t: u64,
}

impl SemidirectGroup {
    pub fn new(p: u64, d: u64, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!(
                "SD(p,d,e): p = {p} is not prime"
            )));
        }
        if d == 0 || !(p - 1).is_multiple_of(d) {
            return Err(Error::Validation(format!(
                "SD(p,d,e): d = {d} does not divide p-1 = {}",
                p - 1
            )));
        }
        if e < 2 || e >= p {
            return Err(Error::Validation(format!(
                "SD(p,d,e): multiplier e = {e} outside [2, {p})"
            )));
        }
        let ord = multiplicative_order(e, p).expect("p prime, e < p");
        if ord != d {
            return Err(Error::Validation(format!(
                "SD(p,d,e): {e} has multiplicative order {ord} mod {p}, expected {d}"
            )));
        }
        let g = SemidirectGroup { p, d, e };
        if g.order() <= 60 {
            g.verify_axioms()?;
        }
        Ok(g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.p * self.d
    }

    pub fn identity(&self) -> SdElement {
        SdElement { a: 0, t: 0 }
    }

    pub fn elements(&self) -> Vec<SdElement> {
        (0..self.d)
            .flat_map(|t| (0..self.p).map(move |a| SdElement { a, t }))
            .collect()
    }

    /// `(a,t)·(b,u) = (a + e^t·b, t + u)`
    pub fn mul(&self, x: SdElement, y: SdElement) -> SdElement {
        SdElement {
            a: (x.a + mod_pow(self.e, x.t, self.p) * y.a) % self.p,
            t: (x.t + y.t) % self.d,
        }
    }

    pub fn inv(&self, x: SdElement) -> SdElement {
        // (a,t)^{-1} = (-e^{-t}·a, -t)
        let t_inv = (self.d - x.t) % self.d;
        let scale = mod_pow(self.e, t_inv, self.p);
        SdElement {
            a: (self.p - scale * x.a % self.p) % self.p,
            t: t_inv,
        }
    }

    pub fn element_order(&self, x: SdElement) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Exhaustive associativity, identity and inverse checks.
    pub fn verify_axioms(&self) -> Result<()> {
        let els = self.elements();
        let id = self.identity();
        for &x in &els {
            if self.mul(x, id) != x || self.mul(id, x) != x {
                return Err(Error::Validation(format!(
                    "{self}: identity law fails at {x:?}"
                )));
            }
            if self.mul(x, self.inv(x)) != id || self.mul(self.inv(x), x) != id {
                return Err(Error::Validation(format!(
                    "{self}: inverse law fails at {x:?}"
                )));
            }
            for &y in &els {
                let xy = self.mul(x, y);
                for &z in &els {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::Validation(format!(
                            "{self}: associativity fails at {x:?},{y:?},{z:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("SD({},{},{})", self.p, self.d, self.e)
    }
}

impl fmt::Display for SemidirectGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for SemidirectGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn add_examples() {
        let z6 = g(&[6]);
        let x = z6.element(&[4]).unwrap();
        let y = z6.element(&[5]).unwrap();
        assert_eq!(z6.add(&x, &y).unwrap().coords(), &[3]);

        let a = g(&[2, 4]);
        let s = a
            .add(&a.element(&[1, 3]).unwrap(), &a.element(&[1, 2]).unwrap())
            .unwrap();
        assert_eq!(s.coords(), &[0, 1]);

        for x in a.elements() {
            assert_eq!(a.add(&x, &a.zero()).unwrap(), x);
        }
    }

    #[test]
    fn rank_mismatch_is_structural() {
        let z6 = g(&[6]);
        let bad = g(&[2, 4]).zero();
        assert!(matches!(
            z6.add(&z6.zero(), &bad),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn element_order_examples() {
        let z6 = g(&[6]);
        assert_eq!(z6.element_order(&z6.element(&[2]).unwrap()).unwrap(), 3);
        let a = g(&[2, 4]);
        assert_eq!(a.element_order(&a.element(&[1, 2]).unwrap()).unwrap(), 2);
        assert_eq!(a.element_order(&a.zero()).unwrap(), 1);
    }

    #[test]
    fn invalid_chain_rejected() {
        assert!(AbelianGroup::new(vec![4, 6]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
        let t = AbelianGroup::trivial();
        assert_eq!(t.order(), 1);
        assert_eq!(t.exponent(), 1);
    }

    #[test]
    fn normalization() {
        assert_eq!(
            AbelianGroup::from_cyclic_product(&[2, 6])
                .unwrap()
                .factors(),
            &[2, 6]
        );
        assert_eq!(
            AbelianGroup::from_cyclic_product(&[2, 3])
                .unwrap()
                .factors(),
            &[6]
        );
        assert_eq!(
            AbelianGroup::from_cyclic_product(&[2, 6, 4])
                .unwrap()
                .factors(),
            &[2, 2, 12]
        );
        assert_eq!(
            AbelianGroup::from_cyclic_product(&[1]).unwrap().factors(),
            &[] as &[u64]
        );
        assert_eq!(
            AbelianGroup::from_cyclic_product(&[4, 6, 9])
                .unwrap()
                .factors(),
            &[6, 36]
        );
    }

    #[test]
    fn decomposition_is_an_isomorphism() {
        for raw in [
            vec![2u64, 3],
            vec![2, 6],
            vec![4, 6],
            vec![2, 2, 3],
            vec![6, 10],
        ] {
            let dec = Decomposition::new(&raw).unwrap();
            let target = dec.group().clone();
            let total: u64 = raw.iter().product();
            assert_eq!(target.order(), total);
            let mut seen = std::collections::HashSet::new();
            let mut all = vec![vec![]];
            for &m in &raw {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<u64>| {
                        (0..m).map(move |c| {
                            let mut w = v.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect();
            }
            for x in &all {
                let fx = dec.map(x).unwrap();
                assert!(seen.insert(fx.clone()));
                for y in &all {
                    let s: Vec<u64> = x
                        .iter()
                        .zip(y)
                        .zip(&raw)
                        .map(|((a, b), m)| (a + b) % m)
                        .collect();
                    let lhs = dec.map(&s).unwrap();
                    let rhs = target.add(&fx, &dec.map(y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            assert_eq!(seen.len() as u64, total);
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_group(&g(&[2])).unwrap().len(), 1);
        assert_eq!(automorphism_group(&g(&[3])).unwrap().len(), 2);
        assert_eq!(automorphism_group(&g(&[2, 2])).unwrap().len(), 6);
        assert_eq!(automorphism_group(&g(&[2, 4])).unwrap().len(), 8);
        assert_eq!(automorphism_group(&g(&[3, 3])).unwrap().len(), 48);
        assert_eq!(
            automorphism_group(&AbelianGroup::trivial()).unwrap().len(),
            1
        );
    }

    #[test]
    fn automorphism_limit() {
        let big = g(&[65]);
        match automorphism_group(&big) {
            Err(Error::Capacity { limit, .. }) => assert_eq!(limit, 64),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn automorphism_group_is_closed() {
        for f in [&[4][..], &[2, 2], &[2, 4], &[6]] {
            let a = g(f);
            let auts = automorphism_group(&a).unwrap();
            assert!(auts[0].is_identity());
            for x in &auts {
                let mut sorted = x.permutation().to_vec();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..a.order() as usize).collect::<Vec<_>>());
                assert!(x.compose(&a, &x.inverse(&a)).is_identity());
                for y in &auts {
                    let c = x.compose(&a, y);
                    assert!(auts.iter().any(|z| z.permutation() == c.permutation()));
                }
            }
        }
    }

    #[test]
    fn group_axioms_small() {
        for f in [&[2][..], &[6], &[2, 2], &[2, 4], &[3, 3]] {
            let a = g(f);
            let els: Vec<_> = a.elements().collect();
            let exp = els.iter().map(|x| a.element_order(x).unwrap()).fold(1, lcm);
            assert_eq!(exp, a.exponent());
            for x in &els {
                assert_eq!(a.add(x, &a.neg(x).unwrap()).unwrap(), a.zero());
                for y in &els {
                    assert_eq!(a.add(x, y).unwrap(), a.add(y, x).unwrap());
                    for z in &els {
                        let l = a.add(&a.add(x, y).unwrap(), z).unwrap();
                        let r = a.add(x, &a.add(y, z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_check() {
        assert!(g(&[2]).embeds_in(&g(&[4])));
        assert!(g(&[2]).embeds_in(&g(&[2, 2])));
        assert!(g(&[3]).embeds_in(&g(&[6])));
        assert!(!g(&[4]).embeds_in(&g(&[2, 2])));
        assert!(!g(&[2, 2]).embeds_in(&g(&[4])));
        assert!(AbelianGroup::trivial().embeds_in(&g(&[5])));
    }

    #[test]
    fn semidirect_examples() {
        let g6 = SemidirectGroup::new(3, 2, 2).unwrap();
        assert_eq!(g6.order(), 6);
        assert_eq!(g6.elements().len(), 6);
        let x = SdElement { a: 1, t: 1 };
        assert_eq!(g6.mul(x, x), SdElement { a: 0, t: 0 });

        let g20 = SemidirectGroup::new(5, 4, 2).unwrap();
        assert_eq!(g20.element_order(SdElement { a: 1, t: 0 }), 5);
        assert_eq!(g20.element_order(SdElement { a: 0, t: 1 }), 4);
    }

    #[test]
    fn semidirect_validation() {
        assert!(SemidirectGroup::new(4, 2, 3).is_err());
        assert!(SemidirectGroup::new(5, 4, 4).is_err());
        assert!(SemidirectGroup::new(5, 3, 2).is_err());
        assert!(SemidirectGroup::new(7, 3, 2).is_ok());
        assert!(SemidirectGroup::new(5, 2, 4).is_ok());
    }

    #[test]
    fn semidirect_axioms_exhaustive() {
        for (p, d, e) in [
            (3, 2, 2),
            (5, 2, 4),
            (5, 4, 2),
            (5, 4, 3),
            (7, 2, 6),
            (7, 3, 2),
            (7, 6, 3),
            (11, 5, 3),
        ] {
            let g = SemidirectGroup::new(p, d, e).unwrap();
            g.verify_axioms().unwrap();
        }
    }
}
