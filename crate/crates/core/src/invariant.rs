//! Invariant rings of monomial representations.
//!
//! A monomial representation sends each variable `x_i` to `ζ_m^{s_i} x_{π(i)}`.
//! Invariants of a given degree are spanned by transfers of monomials, one
//! per orbit of the permutation part, and the Noether-type numbers `β_k`
//! come from comparing those spaces with the powers of the ideal they
//! generate.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::Instant;

use serde::Serialize;

use crate::arith::{mod_pow, smallest_prime_divisor};
use crate::cyclotomic::CyclotomicNumber;
use crate::davenport::{DavenportEngine, EngineConfig};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, SemidirectGroup};
use crate::lemmas::zero_sum_with_support;
use crate::poly::{monomials_of_degree, Monomial, MultiPoly};
use crate::span::{GradedSource, GradedSpan, PowerSpans};

/// Largest degree an invariant scan may reach.
pub const DEGREE_LIMIT: u32 = 48;
/// Largest image order accepted for a monomial representation.
pub const REP_ORDER_LIMIT: usize = 256;

/// One element of a monomial group: `x_i ↦ ζ^{scalars[i]} x_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialMap {
    pub perm: Vec<usize>,
    pub scalars: Vec<u32>,
}

impl MonomialMap {
    pub fn identity(nvars: usize) -> Self {
        MonomialMap {
            perm: (0..nvars).collect(),
            scalars: vec![0; nvars],
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &MonomialMap, m: u32) -> MonomialMap {
        MonomialMap {
            perm: self.perm.iter().map(|&j| other.perm[j]).collect(),
            scalars: self
                .perm
                .iter()
                .zip(&self.scalars)
                .map(|(&j, &s)| (s + other.scalars[j]) % m)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j) && self.scalars.iter().all(|&s| s == 0)
    }

    pub fn act(&self, f: &MultiPoly) -> MultiPoly {
        let m = f.conductor();
        let scal: Vec<CyclotomicNumber> = self
            .scalars
            .iter()
            .map(|&s| CyclotomicNumber::root_of_unity(m, s as i64))
            .collect();
        f.substitute_monomial(&self.perm, &scal)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialRep {
    label: String,
    nvars: usize,
    conductor: u32,
    generators: Vec<MonomialMap>,
    #[serde(skip)]
    closure: Vec<MonomialMap>,
    var_names: Vec<String>,
}

impl MonomialRep {
    /// Builds the representation and its closure; the closure must have
    /// exactly `group_order` elements.
    pub fn new(
        label: String,
        nvars: usize,
        conductor: u32,
        generators: Vec<MonomialMap>,
        group_order: usize,
        var_names: Vec<String>,
    ) -> Result<Self> {
        if conductor == 0 || var_names.len() != nvars {
            return Err(Error::Structural("bad conductor or variable names".into()));
        }
        for g in &generators {
            let mut seen = vec![false; nvars];
            let ok = g.perm.len() == nvars
                && g.scalars.len() == nvars
                && g.perm
                    .iter()
                    .all(|&j| j < nvars && !std::mem::replace(&mut seen[j], true));
            if !ok {
                return Err(Error::Structural(format!(
                    "generator {g:?} is not a monomial map on {nvars} variables"
                )));
            }
        }
        let closure = close(nvars, conductor, &generators)?;
        if closure.len() != group_order {
            return Err(Error::Verification(format!(
                "{label}: closure has {} elements, expected {group_order}",
                closure.len()
            )));
        }
        Ok(MonomialRep {
            label,
            nvars,
            conductor,
            generators,
            closure,
            var_names,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[MonomialMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[MonomialMap] {
        &self.closure
    }

    pub fn group_order(&self) -> usize {
        self.closure.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn display(&self, f: &MultiPoly) -> String {
        f.display_with(&self.var_names)
    }

    pub fn variable(&self, i: usize) -> MultiPoly {
        MultiPoly::variable(self.nvars, self.conductor, i)
    }

    fn check(&self, f: &MultiPoly) -> Result<()> {
        if f.nvars() != self.nvars || f.conductor() != self.conductor {
            return Err(Error::Structural(format!(
                "polynomial in {} variables over Q(ζ_{}) for a rep on {} variables over Q(ζ_{})",
                f.nvars(),
                f.conductor(),
                self.nvars,
                self.conductor
            )));
        }
        Ok(())
    }

    pub fn is_invariant(&self, f: &MultiPoly) -> Result<bool> {
        self.check(f)?;
        Ok(self.generators.iter().all(|g| &g.act(f) == f))
    }

    /// `Σ_g f^g` over the whole group.
    pub fn transfer(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.check(f)?;
        let mut acc = MultiPoly::zero(self.nvars, self.conductor);
        for g in &self.closure {
            acc = acc.add(&g.act(f))?;
        }
        Ok(acc)
    }

    /// Basis of the degree-`d` invariants.
    pub fn invariant_basis(&self, d: u32) -> Result<GradedSpan> {
        let mut span = GradedSpan::new(d, self.nvars, self.conductor);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let one = CyclotomicNumber::one(self.conductor);
        for m in monomials_of_degree(&vec![1; self.nvars], d) {
            if seen.contains(m.exponents()) {
                continue;
            }
            // transfers along one permutation orbit are proportional
            for g in &self.closure {
                let mut e = vec![0u32; self.nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[g.perm[i]] += x;
                }
                seen.insert(e);
            }
            let t = self.transfer(&MultiPoly::term(m, one.clone()))?;
            span.insert(&t)?;
        }
        Ok(span)
    }
}

fn close(nvars: usize, m: u32, gens: &[MonomialMap]) -> Result<Vec<MonomialMap>> {
    let id = MonomialMap::identity(nvars);
    let mut seen: HashSet<MonomialMap> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g, m);
            if seen.insert(y.clone()) {
                if out.len() >= REP_ORDER_LIMIT {
                    return Err(Error::capacity(
                        "monomial group closure",
                        REP_ORDER_LIMIT as u64,
                    ));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Regular representation of an abelian group, diagonalized: one variable
/// per character, with characters indexed like group elements.
pub fn regular_representation(group: &AbelianGroup) -> Result<MonomialRep> {
    let n = group.order() as usize;
    if n > REP_ORDER_LIMIT {
        return Err(Error::capacity(
            format!("regular representation of {group}"),
            REP_ORDER_LIMIT as u64,
        ));
    }
    let exp = group.exponent();
    let chars: Vec<_> = group.elements().collect();
    let generators = group
        .factors()
        .iter()
        .enumerate()
        .map(|(j, &nj)| MonomialMap {
            perm: (0..n).collect(),
            scalars: chars
                .iter()
                .map(|c| (c.coords()[j] * (exp / nj) % exp) as u32)
                .collect(),
        })
        .collect();
    MonomialRep::new(
        format!("reg({group})"),
        n,
        exp as u32,
        generators,
        n,
        (0..n).map(|i| format!("x{i}")).collect(),
    )
}

/// The module induced from the character `a ↦ ζ_p` of the normal subgroup
/// of `Z_p ⋊ Z_d`: `a` scales `x_i` by `ζ_p^{e^{i-1}}` and `b` shifts
/// `x_i → x_{i+1}` cyclically.
pub fn induced_module(g: &SemidirectGroup) -> Result<MonomialRep> {
    let (p, d, e) = (g.p(), g.d() as usize, g.e());
    let a = MonomialMap {
        perm: (0..d).collect(),
        scalars: (0..d).map(|i| mod_pow(e, i as u64, p) as u32).collect(),
    };
    let b = MonomialMap {
        perm: (0..d).map(|i| (i + 1) % d).collect(),
        scalars: vec![0; d],
    };
    check_semidirect_relations(g, &a, &b)?;
    MonomialRep::new(
        format!("ind({g})"),
        d,
        p as u32,
        vec![a, b],
        g.order() as usize,
        (1..=d).map(|i| format!("x{i}")).collect(),
    )
}

fn power_of(x: &MonomialMap, k: u64, m: u32) -> MonomialMap {
    let mut acc = MonomialMap::identity(x.perm.len());
    for _ in 0..k {
        acc = acc.then(x, m);
    }
    acc
}

/// `a^p = b^d = 1`, `a ≠ 1`, and conjugation by `b` acts on `⟨a⟩` as a power
/// `e^{±1}` (the sign depends on composing left or right).
fn check_semidirect_relations(g: &SemidirectGroup, a: &MonomialMap, b: &MonomialMap) -> Result<()> {
    let (p, d, e) = (g.p(), g.d(), g.e());
    let m = p as u32;
    let b_inv = power_of(b, d - 1, m);
    let conj = b_inv.then(a, m).then(b, m);
    let e_inv = crate::arith::mod_inverse(e, p).expect("e is a unit");
    let ok = power_of(a, p, m).is_identity()
        && power_of(b, d, m).is_identity()
        && !a.is_identity()
        && (conj == power_of(a, e, m) || conj == power_of(a, e_inv, m));
    if !ok {
        return Err(Error::Verification(format!(
            "defining relations of {g} fail in the induced module"
        )));
    }
    Ok(())
}

/// Degree components of the invariant ring, for power-span recursion.
pub struct InvariantSource<'a> {
    rep: &'a MonomialRep,
}

impl GradedSource for InvariantSource<'_> {
    fn nvars(&self) -> usize {
        self.rep.nvars
    }

    fn conductor(&self) -> u32 {
        self.rep.conductor
    }

    fn component(&mut self, d: u32) -> Result<Vec<MultiPoly>> {
        Ok(self.rep.invariant_basis(d)?.basis().cloned().collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub dim_invariants: usize,
    /// `dim (R_+^{k+1})_d`
    pub dim_power: usize,
    pub outside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaReport {
    pub rep: String,
    pub k: usize,
    /// `β = β_1`, scanned up to the group order.
    pub beta: u32,
    pub beta_k: u32,
    /// Scan bound used for `β_k`, namely `k·β`.
    pub cutoff: u32,
    /// Invariant of degree `β_k` outside `R_+^{k+1}`.
    pub witness: String,
    pub certificate: Vec<DegreeCheck>,
    pub wall_ms: f64,
}

/// `β_k` of the invariant ring of `rep`, with a witness invariant and the
/// degree-by-degree dimension table that certifies it.
pub fn beta_k(rep: &MonomialRep, k: usize, deadline: Option<Instant>) -> Result<BetaReport> {
    if k == 0 {
        return Err(Error::Domain("β_k needs k >= 1".into()));
    }
    let start = Instant::now();
    let order = rep.group_order() as u32;
    if order > DEGREE_LIMIT {
        return Err(Error::capacity(
            format!("β scan of {} up to degree {order}", rep.label),
            DEGREE_LIMIT as u64,
        ));
    }
    let mut spans = PowerSpans::new(InvariantSource { rep }).with_deadline(deadline);

    let scan = |spans: &mut PowerSpans<InvariantSource>,
                j: u32,
                d: u32|
     -> Result<(DegreeCheck, Option<MultiPoly>)> {
        let dim_invariants = spans.component(d)?.dim();
        let dim_power = spans.power(j, d)?.dim();
        let w = spans.outside_power(j, d)?;
        Ok((
            DegreeCheck {
                degree: d,
                dim_invariants,
                dim_power,
                outside: w.is_some(),
            },
            w,
        ))
    };

    let mut beta = 0;
    let mut witness1 = None;
    let mut cert1 = Vec::new();
    for d in 1..=order {
        let (c, w) = scan(&mut spans, 2, d)?;
        if let Some(w) = w {
            beta = d;
            witness1 = Some(w);
        }
        cert1.push(c);
    }
    let (beta_k, witness, certificate) = if k == 1 {
        (beta, witness1, cert1)
    } else {
        let cutoff = k as u32 * beta;
        if cutoff > DEGREE_LIMIT {
            return Err(Error::capacity(
                format!(
                    "β_{k} scan of {} up to degree {cutoff} (β = {beta})",
                    rep.label
                ),
                DEGREE_LIMIT as u64,
            ));
        }
        let mut best = 0;
        let mut wit = None;
        let mut cert = Vec::new();
        for d in 1..=cutoff {
            let (c, w) = scan(&mut spans, k as u32 + 1, d)?;
            if let Some(w) = w {
                best = d;
                wit = Some(w);
            }
            cert.push(c);
        }
        (best, wit, cert)
    };
    Ok(BetaReport {
        rep: rep.label.clone(),
        k,
        beta,
        beta_k,
        cutoff: k as u32 * beta,
        witness: witness
            .map(|w| rep.display(&w))
            .unwrap_or_else(|| "0".into()),
        certificate,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub group: AbelianGroup,
    pub k: usize,
    pub beta_k: u32,
    #[serde(rename = "value_Dk")]
    pub davenport_k: usize,
    pub beta_witness: String,
    pub davenport_witness: String,
    pub passed: bool,
}

/// Compares `β_k` of the regular representation with `D_k` from the
/// zero-sum engine.
pub fn verify_beta_equals_davenport(
    group: &AbelianGroup,
    k: usize,
    config: &EngineConfig,
) -> Result<CrosscheckReport> {
    let rep = regular_representation(group)?;
    let b = beta_k(&rep, k, config.deadline)?;
    let d = DavenportEngine::new(group, config.clone())?.davenport_k(k)?;
    Ok(CrosscheckReport {
        group: group.clone(),
        k,
        beta_k: b.beta_k,
        davenport_k: d.davenport,
        beta_witness: b.witness,
        davenport_witness: d.extremal_witness.to_string(),
        passed: b.beta_k as usize == d.davenport,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FkEntry {
    pub k: usize,
    /// Lexicographically least subset of each orbit of k-subsets (0-based).
    pub representatives: Vec<Vec<usize>>,
    pub degree: u32,
    pub invariant: bool,
    #[serde(skip)]
    pub poly: MultiPoly,
    #[serde(rename = "poly")]
    pub poly_text: String,
}

/// The shift `i ↦ i + t (mod d)` applied to a subset of variables.
fn shift_set(s: &[usize], t: usize, d: usize) -> Vec<usize> {
    let mut out: Vec<usize> = s.iter().map(|&i| (i + t) % d).collect();
    out.sort_unstable();
    out
}

/// `m_S`: the zero-sum monomial on the variables of `S`, built from the
/// characters `e^i` of those variables.
fn support_monomial(g: &SemidirectGroup, s: &[usize]) -> Result<Monomial> {
    let (p, d, e) = (g.p(), g.d() as usize, g.e());
    let chars: Vec<u64> = s.iter().map(|&i| mod_pow(e, i as u64, p)).collect();
    let t = zero_sum_with_support(p, &chars)?;
    let mut exps = vec![0u32; d];
    for (&i, &c) in s.iter().zip(&chars) {
        exps[i] = t.sequence.iter().filter(|&&x| x == c).count() as u32;
    }
    Ok(Monomial::new(exps))
}

/// `f_k = Σ_{S} Σ_{g ∈ G/A} m_S^g` over orbit representatives `S` of
/// `k`-subsets, for `k = 1..d`.
pub fn construct_fk(g: &SemidirectGroup) -> Result<Vec<FkEntry>> {
    let rep = induced_module(g)?;
    let d = g.d() as usize;
    let p = g.p() as u32;
    let one = CyclotomicNumber::one(p);
    let b = &rep.generators[1];
    let mut out = Vec::new();
    for k in 1..=d {
        let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut reps = Vec::new();
        let mut f = MultiPoly::zero(d, p);
        for s in k_subsets(d, k) {
            if covered.contains(&s) {
                continue;
            }
            for t in 0..d {
                covered.insert(shift_set(&s, t, d));
            }
            let mut term = MultiPoly::term(support_monomial(g, &s)?, one.clone());
            for _ in 0..d {
                f = f.add(&term)?;
                term = b.act(&term);
            }
            reps.push(s);
        }
        out.push(FkEntry {
            k,
            representatives: reps,
            degree: f.degree().unwrap_or(0),
            invariant: rep.is_invariant(&f)?,
            poly_text: rep.display(&f),
            poly: f,
        });
    }
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionCheck {
    /// Variables kept (0-based).
    pub support: Vec<usize>,
    pub representative: Vec<usize>,
    pub restriction: String,
    /// The constant `c` with restriction `= c·m`, if the restriction has
    /// that shape.
    pub constant: Option<String>,
    pub nonvanishing: bool,
    /// Observation only: whether `c` is an integer dividing `d`.
    pub constant_divides_d: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaZpZdReport {
    pub group: SemidirectGroup,
    pub order: u64,
    pub fk: Vec<FkEntry>,
    pub max_degree: u32,
    pub restrictions: Vec<RestrictionCheck>,
    /// Upper bound on `σ(G,U)` from the `f_k` (their maximal degree).
    pub sigma_upper: u32,
    /// Lower bound `σ(Z_p) = p` from the normal subgroup.
    pub sigma_lower: u64,
    pub sigma: Option<u64>,
    pub smallest_prime: u64,
    /// `p <= |G|/q`
    pub order_bound_holds: bool,
    pub passed: bool,
}

/// Checks the invariants `f_k` of the induced module of `Z_p ⋊ Z_d`: they are
/// invariant, have degree at most `p`, and restricting `f_{|S|}` to the
/// variables in `S` leaves a single non-zero multiple of a monomial with
/// support exactly `S`. So the `f_k` vanish together only at the origin.
pub fn verify_sigma_zpzd(g: &SemidirectGroup) -> Result<SigmaZpZdReport> {
    let rep = induced_module(g)?;
    let fk = construct_fk(g)?;
    let (p, d) = (g.p(), g.d() as usize);
    let mut restrictions = Vec::new();
    for k in 1..=d {
        let entry = &fk[k - 1];
        for s in k_subsets(d, k) {
            let (representative, t) = entry
                .representatives
                .iter()
                .find_map(|r| {
                    (0..d)
                        .find(|&t| shift_set(r, t, d) == s)
                        .map(|t| (r.clone(), t))
                })
                .ok_or_else(|| Error::Verification(format!("no orbit representative for {s:?}")))?;
            let r = entry.poly.restrict_to_support(&s)?;
            let mut expected = support_monomial(g, &representative)?;
            for _ in 0..t {
                let e = expected.exponents();
                let mut shifted = vec![0; d];
                for i in 0..d {
                    shifted[(i + 1) % d] = e[i];
                }
                expected = Monomial::new(shifted);
            }
            let constant = match r.terms().collect::<Vec<_>>().as_slice() {
                [(m, c)] if **m == expected && m.support() == s => Some((*c).clone()),
                _ => None,
            };
            let divides = constant
                .as_ref()
                .and_then(|c| c.as_rational().cloned())
                .is_some_and(|q| {
                    q.is_integer() && {
                        let n = q.numer().clone();
                        n > 0.into() && (num_bigint::BigInt::from(d) % n) == 0.into()
                    }
                });
            restrictions.push(RestrictionCheck {
                support: s,
                representative,
                restriction: rep.display(&r),
                nonvanishing: constant
                    .as_ref()
                    .is_some_and(|c| !c.is_zero() && c.is_cyclotomic_integer()),
                constant: constant.map(|c| c.to_string()),
                constant_divides_d: divides,
            });
        }
    }
    let max_degree = fk.iter().map(|f| f.degree).max().unwrap_or(0);
    let q = smallest_prime_divisor(g.order())?;
    let order_bound_holds = p * q <= g.order();
    let ok = fk.iter().all(|f| f.invariant)
        && max_degree as u64 <= p
        && restrictions.iter().all(|r| r.nonvanishing);
    Ok(SigmaZpZdReport {
        group: *g,
        order: g.order(),
        fk,
        max_degree,
        restrictions,
        sigma_upper: max_degree,
        sigma_lower: p,
        sigma: ok.then_some(p),
        smallest_prime: q,
        order_bound_holds,
        passed: ok && order_bound_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaAz2Report {
    pub n: u64,
    pub e: u64,
    /// Order of the image of `Z_n ⋊ Z_2` acting on `x, y` (it is `2e`).
    pub image_order: usize,
    pub invariants: Vec<String>,
    pub invariant: bool,
    /// Every non-empty set of coordinates has an invariant restricting to a
    /// single monomial with exactly that support.
    pub origin_only: bool,
    pub sigma_bound: u64,
    pub passed: bool,
}

/// `Z_n` acting on `x, y` through a character of order `e`, with the
/// involution swapping `x` and `y`; checks that `x^e + y^e` and `xy` are
/// invariant and vanish together only at the origin.
pub fn verify_sigma_az2(n: u64, e: u64) -> Result<SigmaAz2Report> {
    if e < 2 || n < 2 || !n.is_multiple_of(e) {
        return Err(Error::Domain(format!(
            "need e >= 2 dividing n, got n={n}, e={e}"
        )));
    }
    let m = e as u32;
    let a = MonomialMap {
        perm: vec![0, 1],
        scalars: vec![1, m - 1],
    };
    let t = MonomialMap {
        perm: vec![1, 0],
        scalars: vec![0, 0],
    };
    let rep = MonomialRep::new(
        format!("Z{n}:Z2 via a character of order {e}"),
        2,
        m,
        vec![a, t],
        2 * e as usize,
        vec!["x".into(), "y".into()],
    )?;
    let (x, y) = (rep.variable(0), rep.variable(1));
    let f1 = x.pow(m).add(&y.pow(m))?;
    let f2 = x.mul(&y)?;
    let fs = [f1, f2];
    let mut invariant = true;
    for f in &fs {
        invariant &= rep.is_invariant(f)?;
    }
    let mut origin_only = true;
    for s in [vec![0], vec![1], vec![0, 1]] {
        let mut hit = false;
        for f in &fs {
            let r = f.restrict_to_support(&s)?;
            hit |= r.num_terms() == 1 && r.terms().all(|(mono, _)| mono.support() == s);
        }
        origin_only &= hit;
    }
    let sigma_bound = e.max(2);
    let max_deg = fs.iter().filter_map(MultiPoly::degree).max().unwrap_or(0) as u64;
    Ok(SigmaAz2Report {
        n,
        e,
        image_order: rep.group_order(),
        invariants: fs.iter().map(|f| rep.display(f)).collect(),
        invariant,
        origin_only,
        sigma_bound,
        passed: invariant && origin_only && max_deg <= sigma_bound,
    })
}
