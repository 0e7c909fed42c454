//! Exact linear spans of homogeneous polynomials and the powers of the
//! positive-degree ideal of a graded algebra.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};

/// Row-reduced basis of a subspace of one graded piece. Each row is monic
/// in its leading monomial and no row contains another row's pivot.
#[derive(Clone, Debug)]
pub struct GradedSpan {
    degree: u32,
    nvars: usize,
    conductor: u32,
    rows: BTreeMap<Monomial, MultiPoly>,
}

impl GradedSpan {
    pub fn new(degree: u32, nvars: usize, conductor: u32) -> Self {
        GradedSpan {
            degree,
            nvars,
            conductor,
            rows: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows, ordered by leading monomial.
    pub fn basis(&self) -> impl Iterator<Item = &MultiPoly> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> {
        self.rows.keys()
    }

    fn check(&self, f: &MultiPoly) -> Result<()> {
        if f.nvars() != self.nvars || f.conductor() != self.conductor {
            return Err(Error::Structural(format!(
                "polynomial over {} variables / conductor {} in a span over {} / {}",
                f.nvars(),
                f.conductor(),
                self.nvars,
                self.conductor
            )));
        }
        Ok(())
    }

    /// Remainder of `f` after eliminating every pivot monomial.
    pub fn reduce(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.check(f)?;
        let mut r = f.clone();
        loop {
            let hit = r
                .terms()
                .rev()
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = hit else {
                return Ok(r);
            };
            r = r.sub(&self.rows[&m].scale(&c)?)?;
        }
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Adds `f` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, f: &MultiPoly) -> Result<bool> {
        let r = self.reduce(f)?;
        let Some((lead, c)) = r.leading_term() else {
            return Ok(false);
        };
        let lead = lead.clone();
        let row = r.scale(&c.inv()?)?;
        for other in self.rows.values_mut() {
            if let Some(c) = other.coefficient(&lead).cloned() {
                *other = other.sub(&row.scale(&c)?)?;
            }
        }
        self.rows.insert(lead, row);
        Ok(true)
    }

    pub fn insert_all<'a>(&mut self, fs: impl IntoIterator<Item = &'a MultiPoly>) -> Result<()> {
        for f in fs {
            self.insert(f)?;
        }
        Ok(())
    }
}

/// A graded algebra presented inside a polynomial ring: spanning sets of its
/// homogeneous components plus the relation ideal, degree by degree.
pub trait GradedSource {
    fn nvars(&self) -> usize;
    fn conductor(&self) -> u32;
    /// Spanning set of the degree-`d` component, `d >= 1`.
    fn component(&mut self, d: u32) -> Result<Vec<MultiPoly>>;
    /// Spanning set of the degree-`d` slice of the relation ideal.
    fn ideal_slice(&mut self, _d: u32) -> Result<Vec<MultiPoly>> {
        Ok(Vec::new())
    }
}

/// Degree pieces of `R_+^j` (taken modulo the relation ideal), built by
/// `P_{1,d} = R_d` and `P_{j+1,d} = Σ_e R_e · P_{j,d-e}`.
pub struct PowerSpans<S: GradedSource> {
    source: S,
    components: HashMap<u32, GradedSpan>,
    ideal: HashMap<u32, GradedSpan>,
    powers: HashMap<(u32, u32), GradedSpan>,
    deadline: Option<Instant>,
}

impl<S: GradedSource> PowerSpans<S> {
    pub fn new(source: S) -> Self {
        PowerSpans {
            source,
            components: HashMap::new(),
            ideal: HashMap::new(),
            powers: HashMap::new(),
            deadline: None,
        }
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn source_mut(&mut self) -> &mut S {
        &mut self.source
    }

    fn empty(&self, d: u32) -> GradedSpan {
        GradedSpan::new(d, self.source.nvars(), self.source.conductor())
    }

    fn ideal_span(&mut self, d: u32) -> Result<&GradedSpan> {
        if !self.ideal.contains_key(&d) {
            let mut s = self.empty(d);
            s.insert_all(&self.source.ideal_slice(d)?)?;
            self.ideal.insert(d, s);
        }
        Ok(&self.ideal[&d])
    }

    /// Row-reduced spanning set of `R_d` itself (no ideal added).
    pub fn component(&mut self, d: u32) -> Result<&GradedSpan> {
        if !self.components.contains_key(&d) {
            let mut s = self.empty(d);
            s.insert_all(&self.source.component(d)?)?;
            self.components.insert(d, s);
        }
        Ok(&self.components[&d])
    }

    /// `dim R_d` in the quotient: `dim (R_d + I_d) - dim I_d`.
    pub fn quotient_dim(&mut self, d: u32) -> Result<usize> {
        let mut s = self.ideal_span(d)?.clone();
        let base = s.dim();
        let comp: Vec<MultiPoly> = self.component(d)?.basis().cloned().collect();
        s.insert_all(&comp)?;
        Ok(s.dim() - base)
    }

    pub fn ideal_dim(&mut self, d: u32) -> Result<usize> {
        Ok(self.ideal_span(d)?.dim())
    }

    /// `(R_+^j)_d + I_d`.
    pub fn power(&mut self, j: u32, d: u32) -> Result<&GradedSpan> {
        if j == 0 {
            return Err(Error::Domain("power index must be at least 1".into()));
        }
        if !self.powers.contains_key(&(j, d)) {
            let span = self.build_power(j, d)?;
            self.powers.insert((j, d), span);
        }
        Ok(&self.powers[&(j, d)])
    }

    fn build_power(&mut self, j: u32, d: u32) -> Result<GradedSpan> {
        if let Some(dl) = self.deadline {
            if Instant::now() > dl {
                return Err(Error::Budget(format!("power span R_+^{j} in degree {d}")));
            }
        }
        let mut span = self.ideal_span(d)?.clone();
        if j == 1 {
            let comp: Vec<MultiPoly> = self.component(d)?.basis().cloned().collect();
            span.insert_all(&comp)?;
            return Ok(span);
        }
        // every factor has degree >= 1, so j factors need degree >= j
        if d < j {
            return Ok(span);
        }
        for e in 1..=d - (j - 1) {
            let left: Vec<MultiPoly> = self.component(e)?.basis().cloned().collect();
            if left.is_empty() {
                continue;
            }
            let right: Vec<MultiPoly> = self.power(j - 1, d - e)?.basis().cloned().collect();
            for a in &left {
                for b in &right {
                    span.insert(&a.mul(b)?)?;
                }
            }
        }
        Ok(span)
    }

    /// First basis element of `R_d` outside `(R_+^j)_d`, if any.
    pub fn outside_power(&mut self, j: u32, d: u32) -> Result<Option<MultiPoly>> {
        let comp: Vec<MultiPoly> = self.component(d)?.basis().cloned().collect();
        let p = self.power(j, d)?;
        for f in comp {
            if !p.contains(&f)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}
