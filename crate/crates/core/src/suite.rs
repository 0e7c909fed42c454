//! The verification suite: every desk-scale claim as a named check with
//! frozen expected values, reported as passed, failed or skipped.
//!
//! Checks run in a fixed order. Once the time budget is spent, the check in
//! progress and every later one are reported as skipped, never as passed.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::smallest_prime_divisor;
use crate::davenport::{
    verify_inequalities, verify_subgroup_relations, DavenportEngine, EngineConfig, ProfileStatus,
};
use crate::error::{Error, Result};
use crate::graded::{CutoffStatus, PresentedGradedAlgebra};
use crate::group::{automorphism_group, AbelianGroup, SemidirectGroup};
use crate::invariant::{verify_beta_equals_davenport, verify_sigma_az2, verify_sigma_zpzd};
use crate::lemmas::{verify_direct_product_bound, zero_sum_with_support};
use crate::oracle::naive_k_max;
use crate::packing::PackingEngine;
use crate::parse::{parse_generators, parse_groupspec, parse_relations};
use crate::sequence::{canonical_form, Sequence};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x2e50_5eed;

/// Tag used by the group filter for the presented-algebra check.
pub const RING_TAG: &str = "ring";

pub const CHECK_NAMES: [&str; 13] = [
    "davenport-baselines",
    "generalized-constants",
    "eventual-linearity",
    "growth-inequalities",
    "direct-product-bound",
    "support-lemma",
    "beta-equals-davenport",
    "graded-example",
    "sigma-zpzd",
    "sigma-az2",
    "order-bound",
    "subquotient-monotonicity",
    "engine-vs-oracle",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub budget: Option<Duration>,
    /// Normalized group labels (plus possibly [`RING_TAG`]); `None` runs all.
    pub groups: Option<Vec<String>>,
    /// Name of a check whose first golden value is shifted by one.
    pub inject_fault: Option<String>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: None,
            groups: None,
            inject_fault: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl SuiteConfig {
    /// Restricts the suite to the given group specs (normalized), or `ring`.
    pub fn with_groups<S: AsRef<str>>(mut self, specs: &[S]) -> Result<Self> {
        let mut labels = Vec::new();
        for s in specs {
            let s = s.as_ref();
            if s == RING_TAG {
                labels.push(RING_TAG.to_string());
            } else {
                labels.push(parse_groupspec(s)?.to_string());
            }
        }
        self.groups = Some(labels);
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    pub data: Value,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub seed: u64,
    pub budget_seconds: Option<f64>,
    pub group_filter: Option<Vec<String>>,
    pub injected_fault: Option<String>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Outcome {
    passed: bool,
    detail: String,
    data: Value,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>, data: Value) -> Option<Self> {
        Some(Outcome {
            passed,
            detail: detail.into(),
            data,
        })
    }
}

struct Ctx<'a> {
    config: &'a SuiteConfig,
    deadline: Option<Instant>,
    engines: BTreeMap<String, DavenportEngine>,
    current: &'static str,
}

impl Ctx<'_> {
    fn allowed(&self, tags: &[String]) -> bool {
        match &self.config.groups {
            None => true,
            Some(g) => tags.iter().all(|t| g.contains(t)),
        }
    }

    /// 1 if the running check is the fault target, else 0.
    fn fault(&self) -> usize {
        usize::from(self.config.inject_fault.as_deref() == Some(self.current))
    }

    fn engine_config(&self) -> EngineConfig {
        EngineConfig {
            deadline: self.deadline,
            ..EngineConfig::default()
        }
    }

    fn engine(&mut self, g: &AbelianGroup) -> Result<&mut DavenportEngine> {
        let key = g.label();
        if !self.engines.contains_key(&key) {
            let e = DavenportEngine::new(g, self.engine_config())?;
            self.engines.insert(key.clone(), e);
        }
        Ok(self.engines.get_mut(&key).expect("just inserted"))
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget(self.current.into())),
            _ => Ok(()),
        }
    }
}

fn g(factors: &[u64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_product(factors).expect("valid suite group")
}

fn sd(p: u64, d: u64, e: u64) -> SemidirectGroup {
    SemidirectGroup::new(p, d, e).expect("valid suite group")
}

/// Shifts the first golden value when a fault is injected.
fn golden<T: Copy>(rows: Vec<(T, usize)>, fault: usize) -> Vec<(T, usize)> {
    rows.into_iter()
        .enumerate()
        .map(|(i, (t, v))| (t, if i == 0 { v + fault } else { v }))
        .collect()
}

fn davenport_baselines(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut rows: Vec<(AbelianGroup, usize)> = (2..=7).map(|n| (g(&[n]), n as usize)).collect();
    rows.extend([(g(&[2, 2]), 3), (g(&[3, 3]), 5), (g(&[2, 4]), 5)]);
    rows.retain(|(a, _)| ctx.allowed(&[a.label()]));
    if rows.is_empty() {
        return Ok(None);
    }
    let fault = ctx.fault();
    let rows: Vec<(usize, usize)> = golden(
        rows.iter().enumerate().map(|(i, r)| (i, r.1)).collect(),
        fault,
    )
    .into_iter()
    .collect();
    let groups: Vec<AbelianGroup> = davenport_groups(ctx);
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for (i, expected) in rows {
        let a = &groups[i];
        let r = ctx.engine(a)?.davenport_k(1)?;
        let ok = r.davenport == expected && r.witness_k_max == 0;
        if !ok {
            bad.push(format!("D({a}) = {} (expected {expected})", r.davenport));
        }
        data.push(json!({"group": a, "expected": expected, "value_D": r.davenport, "witness": r.extremal_witness}));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn davenport_groups(ctx: &Ctx) -> Vec<AbelianGroup> {
    let mut v: Vec<AbelianGroup> = (2..=7).map(|n| g(&[n])).collect();
    v.extend([g(&[2, 2]), g(&[3, 3]), g(&[2, 4])]);
    v.retain(|a| ctx.allowed(&[a.label()]));
    v
}

fn generalized_constants(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut rows: Vec<((usize, usize), usize)> = Vec::new();
    let families: [(AbelianGroup, fn(usize) -> usize); 3] = [
        (g(&[3]), |k| 3 * k),
        (g(&[2]), |k| 2 * k),
        (g(&[2, 2]), |k| 2 * k + 1),
    ];
    for (i, (a, f)) in families.iter().enumerate() {
        if ctx.allowed(&[a.label()]) {
            rows.extend((1..=4).map(|k| ((i, k), f(k))));
        }
    }
    if rows.is_empty() {
        return Ok(None);
    }
    let rows = golden(rows, ctx.fault());
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for ((i, k), expected) in rows {
        let a = &families[i].0;
        let r = ctx.engine(a)?.davenport_k(k)?;
        if r.davenport != expected || r.witness_k_max >= k {
            bad.push(format!(
                "D_{k}({a}) = {} (expected {expected})",
                r.davenport
            ));
        }
        data.push(json!({"group": a, "k": k, "expected": expected, "value_Dk": r.davenport, "witness": r.extremal_witness}));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn profile_groups(ctx: &Ctx) -> Vec<AbelianGroup> {
    let mut v = vec![g(&[2]), g(&[3]), g(&[4]), g(&[2, 2]), g(&[6])];
    v.retain(|a| ctx.allowed(&[a.label()]));
    v
}

fn eventual_linearity(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let groups = profile_groups(ctx);
    if groups.is_empty() {
        return Ok(None);
    }
    let fault = ctx.fault();
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for (i, a) in groups.iter().enumerate() {
        let exp = a.exponent() as usize + if i == 0 { fault } else { 0 };
        let p = ctx.engine(a)?.linearity_profile(4)?;
        let k0 = p.k0.unwrap_or(usize::MAX);
        let steps_ok = p
            .table
            .windows(2)
            .filter(|w| w[0].0 >= k0)
            .all(|w| w[1].1 - w[0].1 <= exp);
        if p.slope as usize != exp || p.status != ProfileStatus::Determined || !steps_ok {
            bad.push(format!(
                "{a}: slope {} (expected {exp}), status {:?}",
                p.slope, p.status
            ));
        }
        data.push(serde_json::to_value(&p).expect("serializable"));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn growth_inequalities(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let groups = profile_groups(ctx);
    if groups.is_empty() {
        return Ok(None);
    }
    let allowed_violations = ctx.fault();
    let mut data = Vec::new();
    let mut violations = Vec::new();
    let mut instances = 0;
    for a in &groups {
        let p = ctx.engine(a)?.linearity_profile(4)?;
        let r = verify_inequalities(a, &p);
        instances += r.instances.len();
        violations.extend(
            r.violations()
                .iter()
                .map(|c| format!("{a}: {} ({})", c.name, c.detail)),
        );
        data.push(
            json!({"group": a, "instances": r.instances.len(), "violations": r.violations().len()}),
        );
    }
    let ok = violations.len() == allowed_violations;
    let detail = if ok {
        format!("{instances} instances")
    } else {
        format!(
            "{} violations (expected {allowed_violations}): {}",
            violations.len(),
            violations.join("; ")
        )
    };
    Ok(Outcome::new(ok, detail, Value::Array(data)))
}

fn direct_product_bound(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let pairs = [(g(&[2]), g(&[2])), (g(&[2]), g(&[3])), (g(&[3]), g(&[3]))];
    let tight = 5 + ctx.fault();
    let mut data = Vec::new();
    let mut bad = Vec::new();
    let cfg = ctx.engine_config();
    let mut any = false;
    for (a, b) in &pairs {
        let prod = a.direct_sum(b)?.group().clone();
        if !ctx.allowed(&[a.label(), b.label(), prod.label()]) {
            continue;
        }
        any = true;
        for r in 1..=2 {
            for s in 1..=2 {
                ctx.check_deadline()?;
                let rep = verify_direct_product_bound(a, b, r, s, &cfg)?;
                if !rep.passed {
                    bad.push(format!(
                        "{a} x {b}, r={r}, s={s}: {} < {}",
                        rep.d_product, rep.bound
                    ));
                }
                let is_tight_case = a.order() == 2 && b.order() == 2 && r == 1 && s == 2;
                if is_tight_case && (rep.d_product != tight || rep.bound != tight) {
                    bad.push(format!(
                        "tight instance: D_2(Z2xZ2) = {}, bound {} (expected both {tight})",
                        rep.d_product, rep.bound
                    ));
                }
                data.push(json!({
                    "G": a, "H": b, "r": r, "s": s,
                    "lhs": rep.d_product, "rhs": rep.bound,
                    "witness": rep.witness.pairs_display(), "witness_k_max": rep.witness_k_max,
                }));
            }
        }
    }
    if !any {
        return Ok(None);
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn support_lemma(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let primes: Vec<u64> = [3u64, 5, 7, 11]
        .into_iter()
        .filter(|p| ctx.allowed(&[format!("Z{p}")]))
        .collect();
    if primes.is_empty() {
        return Ok(None);
    }
    let expected_failures = ctx.fault();
    let mut failures = Vec::new();
    let mut data = Vec::new();
    for &p in &primes {
        let mut count = 0u64;
        for mask in 1u64..(1 << (p - 1)) {
            let s: Vec<u64> = (1..p).filter(|x| mask >> (x - 1) & 1 == 1).collect();
            let r = zero_sum_with_support(p, &s)?;
            let mut support = r.sequence.clone();
            support.dedup();
            let mut n = r.n_values.clone();
            n.sort_unstable();
            n.dedup();
            let n_min_ok = r
                .n_values
                .iter()
                .min()
                .is_none_or(|&m| m <= p - s.len() as u64);
            let ok = r.sequence.iter().sum::<u64>() % p == 0
                && support == s
                && r.sequence.len() as u64 <= p
                && n.len() == r.n_values.len()
                && n_min_ok;
            if !ok {
                failures.push(format!("p={p}, S={s:?} -> {:?}", r.sequence));
            }
            count += 1;
        }
        data.push(json!({"p": p, "subsets": count}));
    }
    let ok = failures.len() == expected_failures;
    Ok(Outcome::new(
        ok,
        format!(
            "{} failures (expected {expected_failures}) {}",
            failures.len(),
            failures.join("; ")
        ),
        Value::Array(data),
    ))
}

fn beta_equals_davenport(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut rows = vec![
        ((0, 1), 2),
        ((0, 2), 4),
        ((1, 1), 3),
        ((1, 2), 6),
        ((2, 1), 3),
    ];
    let groups = [g(&[2]), g(&[3]), g(&[2, 2])];
    rows.retain(|((i, _), _)| ctx.allowed(&[groups[*i].label()]));
    if rows.is_empty() {
        return Ok(None);
    }
    let rows = golden(rows, ctx.fault());
    let cfg = ctx.engine_config();
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for ((i, k), expected) in rows {
        let a = &groups[i];
        let r = verify_beta_equals_davenport(a, k, &cfg)?;
        if !r.passed || r.davenport_k != expected {
            bad.push(format!(
                "{a}, k={k}: β_k = {}, D_k = {} (expected {expected})",
                r.beta_k, r.davenport_k
            ));
        }
        data.push(serde_json::to_value(&r).expect("serializable"));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn graded_example(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    if !ctx.allowed(&[RING_TAG.to_string()]) {
        return Ok(None);
    }
    let fault = ctx.fault();
    let cutoff = 30;
    let (names, degrees) = parse_generators("a:1,b:3")?;
    let rels = parse_relations(&names, "b^3-a^9, a*b^2-a^7")?;
    let mut r =
        PresentedGradedAlgebra::new(names, degrees, rels, cutoff)?.with_deadline(ctx.deadline);
    let mut bad = Vec::new();
    let mut betas = Vec::new();
    for (k, expected) in [(1, 3 + fault), (2, 6), (3, 6), (4, 6)] {
        let b = r.beta_k(k, cutoff)?;
        if b.status != CutoffStatus::VerifiedUpToCutoff {
            return Err(Error::Budget("presented algebra scan".into()));
        }
        if b.beta_k as usize != expected {
            bad.push(format!("β_{k} = {} (expected {expected})", b.beta_k));
        }
        betas.push(json!({"k": k, "beta_k": b.beta_k, "witness": b.witness, "status": b.status}));
    }
    let b2 = r.monomial(&[0, 2])?;
    let in2 = r.in_power(&b2, 2)?;
    let in3 = r.in_power(&b2, 3)?;
    let in4 = r.in_power(&b2, 4)?;
    let quotient = r.power_quotient_dim(6, 2, 4)?;
    if !in2 || in3 {
        bad.push("b^2 is not in R_+^2 \\ R_+^3".into());
    }
    if quotient != 1 || in4 {
        bad.push(format!("degree 6 of R_+^2/R_+^4 has dimension {quotient}"));
    }
    let outside: Vec<u32> = (7..=cutoff)
        .map(|l| r.component_in_power(l, 5).map(|inside| (l, inside)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, inside)| !inside)
        .map(|(l, _)| l)
        .collect();
    if !outside.is_empty() {
        bad.push(format!("R_l not inside R_+^5 for l in {outside:?}"));
    }
    let dims: Vec<(u32, usize)> = [0, 3, 9]
        .into_iter()
        .map(|d| r.degree_basis(d).map(|b| (d, b.dim)))
        .collect::<Result<_>>()?;
    if dims != [(0, 1), (3, 2), (9, 2)] {
        bad.push(format!("component dimensions {dims:?}"));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        json!({"cutoff": cutoff, "status": CutoffStatus::VerifiedUpToCutoff, "beta": betas, "dims": dims}),
    ))
}

fn sd_groups(ctx: &Ctx) -> Vec<SemidirectGroup> {
    let mut v = vec![sd(3, 2, 2), sd(5, 2, 4), sd(5, 4, 2), sd(7, 3, 2)];
    v.retain(|s| ctx.allowed(&[s.label()]));
    v
}

fn sigma_zpzd(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let groups = sd_groups(ctx);
    if groups.is_empty() {
        return Ok(None);
    }
    let fault = ctx.fault() as u64;
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for (i, s) in groups.iter().enumerate() {
        ctx.check_deadline()?;
        let r = verify_sigma_zpzd(s)?;
        let expected = s.p() + if i == 0 { fault } else { 0 };
        if !r.passed || r.sigma != Some(expected) {
            bad.push(format!("{s}: σ = {:?} (expected {expected})", r.sigma));
        }
        let divides = r
            .restrictions
            .iter()
            .filter(|c| c.constant_divides_d)
            .count();
        data.push(json!({
            "group": s, "sigma": r.sigma, "max_degree": r.max_degree,
            "fk_degrees": r.fk.iter().map(|f| f.degree).collect::<Vec<_>>(),
            "restrictions": r.restrictions.len(),
            "constants_dividing_d": divides,
        }));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn sigma_az2(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut cases = Vec::new();
    for n in 3..=8u64 {
        if ctx.allowed(&[format!("Z{n}")]) {
            cases.extend((2..=n).filter(|e| n % e == 0).map(|e| (n, e)));
        }
    }
    if cases.is_empty() {
        return Ok(None);
    }
    let fault = ctx.fault() as u64;
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for (i, &(n, e)) in cases.iter().enumerate() {
        let r = verify_sigma_az2(n, e)?;
        let expected = e.max(2) + if i == 0 { fault } else { 0 };
        if !r.passed || r.sigma_bound != expected {
            bad.push(format!(
                "n={n}, e={e}: bound {} (expected {expected})",
                r.sigma_bound
            ));
        }
        data.push(json!({"n": n, "e": e, "invariants": r.invariants, "bound": r.sigma_bound}));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn order_bound(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut abelian = vec![g(&[2, 2]), g(&[3, 3]), g(&[2, 4])];
    abelian.retain(|a| ctx.allowed(&[a.label()]));
    let sds = sd_groups(ctx);
    if abelian.is_empty() && sds.is_empty() {
        return Ok(None);
    }
    let fault = ctx.fault() as u64;
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for (i, a) in abelian.iter().enumerate() {
        let q = smallest_prime_divisor(a.order())?;
        let sigma = a.exponent() + if i == 0 { fault } else { 0 };
        if sigma * q > a.order() {
            bad.push(format!("{a}: exp {sigma} > {}/{q}", a.order()));
        }
        data.push(json!({"group": a, "sigma": sigma, "order": a.order(), "q": q}));
    }
    for s in &sds {
        let q = smallest_prime_divisor(s.order())?;
        if s.p() * q > s.order() {
            bad.push(format!("{s}: {} > {}/{q}", s.p(), s.order()));
        }
        data.push(json!({"group": s, "sigma": s.p(), "order": s.order(), "q": q}));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn subquotient(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut pairs = vec![
        (g(&[4]), g(&[2])),
        (g(&[2, 2]), g(&[2])),
        (g(&[6]), g(&[3])),
    ];
    pairs.retain(|(a, b)| ctx.allowed(&[a.label(), b.label()]));
    if pairs.is_empty() {
        return Ok(None);
    }
    let fault = ctx.fault();
    let cfg = ctx.engine_config();
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let r = verify_subgroup_relations(a, b, &[1, 2], &cfg)?;
        let failed =
            r.instances.iter().filter(|c| !c.passed).count() + if i == 0 { fault } else { 0 };
        if failed > 0 {
            bad.push(format!("{a} > {b}: {failed} failed instances"));
        }
        data.push(serde_json::to_value(&r).expect("serializable"));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        bad.join("; "),
        Value::Array(data),
    ))
}

fn engine_vs_oracle(ctx: &mut Ctx) -> Result<Option<Outcome>> {
    let mut groups: Vec<AbelianGroup> = (2..=9).map(|n| g(&[n])).collect();
    groups.extend([g(&[2, 2]), g(&[2, 4]), g(&[3, 3])]);
    groups.retain(|a| ctx.allowed(&[a.label()]));
    if groups.is_empty() {
        return Ok(None);
    }
    let expected = ctx.fault();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let mut engines: Vec<PackingEngine> = groups
        .iter()
        .map(|a| PackingEngine::new(a).map(|e| e.with_deadline(ctx.deadline)))
        .collect::<Result<_>>()?;
    let random_seq = |rng: &mut ChaCha8Rng, min_len: usize| {
        let i = rng.gen_range(0..groups.len());
        let len = rng.gen_range(min_len..=8);
        let n = groups[i].order() as usize;
        let s = Sequence::from_indices(&groups[i], (0..len).map(|_| rng.gen_range(0..n)))
            .expect("in range");
        (i, s)
    };
    let mut discrepancies = Vec::new();
    for _ in 0..500 {
        ctx.check_deadline()?;
        let (i, s) = random_seq(&mut rng, 0);
        let fast = engines[i].k_max(&s)?;
        let slow = naive_k_max(&s)?;
        if fast != slow {
            discrepancies.push(format!(
                "{s} over {}: engine {fast}, oracle {slow}",
                groups[i]
            ));
        }
    }
    let mut orbit_images = 0;
    for _ in 0..100 {
        ctx.check_deadline()?;
        let (i, s) = random_seq(&mut rng, 1);
        let auts = automorphism_group(&groups[i])?;
        let k = engines[i].k_max(&s)?;
        let canon = canonical_form(&s, &auts);
        for aut in &auts {
            let t = s.apply(aut);
            orbit_images += 1;
            if engines[i].k_max(&t)? != k || canonical_form(&t, &auts) != canon {
                discrepancies.push(format!("{s} vs its image {t} over {}", groups[i]));
            }
        }
    }
    let ok = discrepancies.len() == expected;
    Ok(Outcome::new(
        ok,
        format!(
            "{} discrepancies (expected {expected}) {}",
            discrepancies.len(),
            discrepancies
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
        json!({"random_sequences": 500, "orbits": 100, "orbit_images": orbit_images, "seed": ctx.config.seed}),
    ))
}

type CheckFn = fn(&mut Ctx) -> Result<Option<Outcome>>;

const CHECKS: [CheckFn; 13] = [
    davenport_baselines,
    generalized_constants,
    eventual_linearity,
    growth_inequalities,
    direct_product_bound,
    support_lemma,
    beta_equals_davenport,
    graded_example,
    sigma_zpzd,
    sigma_az2,
    order_bound,
    subquotient,
    engine_vs_oracle,
];

/// Runs every check in order.
pub fn verify_all(config: &SuiteConfig) -> Result<SuiteReport> {
    if let Some(f) = &config.inject_fault {
        if !CHECK_NAMES.contains(&f.as_str()) {
            return Err(Error::Validation(format!(
                "unknown check {f:?} for fault injection"
            )));
        }
    }
    if config.budget.is_some_and(|b| b.is_zero()) {
        return Err(Error::Validation("budget must be positive".into()));
    }
    let start = Instant::now();
    let mut ctx = Ctx {
        config,
        deadline: config.budget.map(|b| start + b),
        engines: BTreeMap::new(),
        current: "",
    };
    let mut checks = Vec::new();
    let mut summary = Summary::default();
    for (i, (name, run)) in CHECK_NAMES.iter().zip(CHECKS).enumerate() {
        ctx.current = name;
        let t = Instant::now();
        let result = match ctx.check_deadline() {
            Err(e) => Err(e),
            Ok(()) => run(&mut ctx),
        };
        let (status, detail, data) = match result {
            Ok(Some(o)) if o.passed => (CheckStatus::Passed, o.detail, o.data),
            Ok(Some(o)) => (CheckStatus::Failed, o.detail, o.data),
            Ok(None) => (
                CheckStatus::Skipped,
                "no instance matches the group filter".into(),
                Value::Null,
            ),
            Err(Error::Budget(what)) => (
                CheckStatus::Skipped,
                format!("budget exhausted during {what}"),
                Value::Null,
            ),
            Err(e) => (CheckStatus::Failed, format!("error: {e}"), Value::Null),
        };
        match status {
            CheckStatus::Passed => summary.passed += 1,
            CheckStatus::Failed => summary.failed += 1,
            CheckStatus::Skipped => summary.skipped += 1,
        }
        checks.push(CheckResult {
            id: i + 1,
            name: name.to_string(),
            status,
            detail,
            data,
            wall_ms: t.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        seed: config.seed,
        budget_seconds: config.budget.map(|b| b.as_secs_f64()),
        group_filter: config.groups.clone(),
        injected_fault: config.inject_fault.clone(),
        checks,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_to_z2() {
        let cfg = SuiteConfig::default().with_groups(&["Z2"]).unwrap();
        let r = verify_all(&cfg).unwrap();
        assert!(!r.has_failures(), "{:#?}", r.checks);
        assert!(r.summary.passed > 0 && r.summary.skipped > 0);
        assert_eq!(r.check("sigma-zpzd").unwrap().status, CheckStatus::Skipped);
        assert_eq!(
            r.check("davenport-baselines").unwrap().status,
            CheckStatus::Passed
        );
    }

    #[test]
    fn injected_fault_is_named() {
        let mut cfg = SuiteConfig::default().with_groups(&["Z2"]).unwrap();
        cfg.inject_fault = Some("generalized-constants".into());
        let r = verify_all(&cfg).unwrap();
        assert_eq!(r.summary.failed, 1);
        assert_eq!(
            r.check("generalized-constants").unwrap().status,
            CheckStatus::Failed
        );
        cfg.inject_fault = Some("nope".into());
        assert!(verify_all(&cfg).is_err());
    }

    #[test]
    fn exhausted_budget_skips() {
        let cfg = SuiteConfig {
            budget: Some(Duration::from_nanos(1)),
            ..SuiteConfig::default()
        };
        let r = verify_all(&cfg).unwrap();
        assert_eq!(r.summary.passed, 0);
        assert_eq!(r.summary.skipped, 13);
    }
}
