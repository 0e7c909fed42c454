//! Finitely presented graded commutative algebras `F[y_1..y_n]/I` with
//! positive generator degrees and homogeneous relations.
//!
//! Each degree is handled on its own: `R_d` is the span of the weighted
//! degree-`d` monomials modulo `I_d`, and `I_d` is spanned by the products of
//! the relations with all monomials of complementary degree. No Gröbner basis
//! is needed for that. Answers are only claimed up to a degree cutoff.

use std::time::Instant;

use serde::Serialize;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Monomial, MultiPoly};
use crate::span::{GradedSource, PowerSpans};

/// Rational coefficients only.
const CONDUCTOR: u32 = 1;

#[derive(Clone, Debug)]
struct RelationSource {
    weights: Vec<u32>,
    relations: Vec<(u32, MultiPoly)>,
}

impl GradedSource for RelationSource {
    fn nvars(&self) -> usize {
        self.weights.len()
    }

    fn conductor(&self) -> u32 {
        CONDUCTOR
    }

    fn component(&mut self, d: u32) -> Result<Vec<MultiPoly>> {
        Ok(monomials_of_degree(&self.weights, d)
            .into_iter()
            .map(|m| MultiPoly::term(m, CyclotomicNumber::one(CONDUCTOR)))
            .collect())
    }

    fn ideal_slice(&mut self, d: u32) -> Result<Vec<MultiPoly>> {
        let mut out = Vec::new();
        for (deg, r) in &self.relations {
            if *deg > d {
                continue;
            }
            for m in monomials_of_degree(&self.weights, d - deg) {
                out.push(MultiPoly::term(m, CyclotomicNumber::one(CONDUCTOR)).mul(r)?);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffStatus {
    /// Every degree up to the cutoff was checked; nothing is claimed beyond.
    VerifiedUpToCutoff,
    /// The scan stopped early (budget); the table is a prefix.
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeBasis {
    pub degree: u32,
    pub dim: usize,
    /// Monomials that are not pivots of `I_d`, so their residues form a basis.
    pub normal_forms: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerCheck {
    pub degree: u32,
    /// `dim R_d`
    pub dim_component: usize,
    /// `dim (R_+^{k+1})_d` in the quotient.
    pub dim_power: usize,
    pub outside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentedBetaReport {
    pub k: usize,
    pub cutoff: u32,
    /// Largest degree `<= cutoff` not inside `R_+^{k+1}`; 0 if none.
    pub beta_k: u32,
    pub witness: String,
    pub status: CutoffStatus,
    pub table: Vec<PowerCheck>,
}

pub struct PresentedGradedAlgebra {
    names: Vec<String>,
    cutoff: u32,
    spans: PowerSpans<RelationSource>,
}

impl PresentedGradedAlgebra {
    /// Relations must be non-zero, rational, and homogeneous for the given
    /// generator degrees.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u32>,
        relations: Vec<MultiPoly>,
        cutoff: u32,
    ) -> Result<Self> {
        if names.len() != degrees.len() || names.is_empty() {
            return Err(Error::Validation(
                "need one positive degree per generator".into(),
            ));
        }
        if degrees.contains(&0) {
            return Err(Error::Validation(
                "generator degrees must be positive".into(),
            ));
        }
        let mut rels = Vec::new();
        for r in relations {
            if r.nvars() != degrees.len() || r.conductor() != CONDUCTOR {
                return Err(Error::Structural(format!(
                    "relation over {} variables / Q(ζ_{}) for {} generators over Q",
                    r.nvars(),
                    r.conductor(),
                    degrees.len()
                )));
            }
            let degs: Vec<u32> = r
                .terms()
                .map(|(m, _)| m.weighted_degree(&degrees))
                .collect();
            let Some(&d) = degs.first() else {
                continue;
            };
            if degs.iter().any(|&e| e != d) {
                return Err(Error::Validation(format!(
                    "relation {} is not homogeneous",
                    r.display_with(&names)
                )));
            }
            rels.push((d, r));
        }
        Ok(PresentedGradedAlgebra {
            names,
            cutoff,
            spans: PowerSpans::new(RelationSource {
                weights: degrees,
                relations: rels,
            }),
        })
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.spans = self.spans.with_deadline(deadline);
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.spans.source().weights
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn display(&self, f: &MultiPoly) -> String {
        f.display_with(&self.names)
    }

    /// The monomial with the given exponents, as a ring element.
    pub fn monomial(&self, exps: &[u32]) -> Result<MultiPoly> {
        if exps.len() != self.names.len() {
            return Err(Error::Structural("exponent vector length".into()));
        }
        Ok(MultiPoly::term(
            Monomial::new(exps.to_vec()),
            CyclotomicNumber::one(CONDUCTOR),
        ))
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.cutoff {
            return Err(Error::capacity(
                format!("degree {d} of a presented algebra"),
                self.cutoff as u64,
            ));
        }
        Ok(())
    }

    /// Weighted degree of a homogeneous element.
    pub fn degree_of(&self, f: &MultiPoly) -> Result<u32> {
        let w = self.degrees();
        let mut degs = f.terms().map(|(m, _)| m.weighted_degree(w));
        let d = degs
            .next()
            .ok_or_else(|| Error::Domain("zero has no degree".into()))?;
        if degs.any(|e| e != d) {
            return Err(Error::Domain("element is not homogeneous".into()));
        }
        Ok(d)
    }

    pub fn degree_basis(&mut self, d: u32) -> Result<DegreeBasis> {
        self.check_degree(d)?;
        if d == 0 {
            return Ok(DegreeBasis {
                degree: 0,
                dim: 1,
                normal_forms: vec!["1".into()],
            });
        }
        let mut ideal = crate::span::GradedSpan::new(d, self.names.len(), CONDUCTOR);
        let slice = self.spans.source_mut().ideal_slice(d)?;
        ideal.insert_all(&slice)?;
        let normal_forms: Vec<String> = monomials_of_degree(self.degrees(), d)
            .into_iter()
            .rev()
            .filter(|m| !ideal.pivots().any(|p| p == m))
            .map(|m| m.display_with(&self.names))
            .collect();
        let dim = self.spans.quotient_dim(d)?;
        debug_assert_eq!(dim, normal_forms.len());
        Ok(DegreeBasis {
            degree: d,
            dim,
            normal_forms,
        })
    }

    /// Whether the homogeneous element `f` lies in `R_+^j` (modulo `I`).
    pub fn in_power(&mut self, f: &MultiPoly, j: u32) -> Result<bool> {
        let d = self.degree_of(f)?;
        self.check_degree(d)?;
        self.spans.power(j, d)?.contains(f)
    }

    /// Whether the homogeneous elements in `fs` are linearly independent
    /// modulo `I`.
    pub fn independent_mod_ideal(&mut self, fs: &[MultiPoly]) -> Result<bool> {
        let Some(first) = fs.first() else {
            return Ok(true);
        };
        let d = self.degree_of(first)?;
        let mut s = crate::span::GradedSpan::new(d, self.names.len(), CONDUCTOR);
        let slice = self.spans.source_mut().ideal_slice(d)?;
        s.insert_all(&slice)?;
        for f in fs {
            if self.degree_of(f)? != d || !s.insert(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `dim (R_+^i)_d - dim (R_+^j)_d` for `i <= j`, modulo `I`.
    pub fn power_quotient_dim(&mut self, d: u32, i: u32, j: u32) -> Result<usize> {
        self.check_degree(d)?;
        let big = self.spans.power(i, d)?.dim();
        let small = self.spans.power(j, d)?.dim();
        Ok(big - small)
    }

    /// `R_d ⊆ R_+^j`.
    pub fn component_in_power(&mut self, d: u32, j: u32) -> Result<bool> {
        self.check_degree(d)?;
        Ok(self.spans.outside_power(j, d)?.is_none())
    }

    /// Largest `d <= cutoff` with `R_d ⊄ R_+^{k+1}`.
    pub fn beta_k(&mut self, k: usize, cutoff: u32) -> Result<PresentedBetaReport> {
        if k == 0 {
            return Err(Error::Domain("β_k needs k >= 1".into()));
        }
        self.check_degree(cutoff)?;
        let j = k as u32 + 1;
        let mut table = Vec::new();
        let mut best = 0;
        let mut witness = None;
        let mut status = CutoffStatus::VerifiedUpToCutoff;
        for d in 1..=cutoff {
            let step = (|| -> Result<(PowerCheck, Option<MultiPoly>)> {
                let dim_component = self.spans.quotient_dim(d)?;
                let dim_power = self.spans.power(j, d)?.dim() - self.spans.ideal_dim(d)?;
                let w = self.spans.outside_power(j, d)?;
                Ok((
                    PowerCheck {
                        degree: d,
                        dim_component,
                        dim_power,
                        outside: w.is_some(),
                    },
                    w,
                ))
            })();
            match step {
                Ok((c, w)) => {
                    if let Some(w) = w {
                        best = d;
                        witness = Some(w);
                    }
                    table.push(c);
                }
                Err(Error::Budget(_)) => {
                    status = CutoffStatus::Partial;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(PresentedBetaReport {
            k,
            cutoff,
            beta_k: best,
            witness: witness
                .map(|w| self.display(&w))
                .unwrap_or_else(|| "0".into()),
            status,
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `F[a,b]/(b^3 - a^9, a b^2 - a^7)`, `deg a = 1`, `deg b = 3`.
    fn ring(cutoff: u32) -> PresentedGradedAlgebra {
        let one = CyclotomicNumber::one(1);
        let t = |a: u32, b: u32| MultiPoly::term(Monomial::new(vec![a, b]), one.clone());
        let r1 = t(0, 3).sub(&t(9, 0)).unwrap();
        let r2 = t(1, 2).sub(&t(7, 0)).unwrap();
        PresentedGradedAlgebra::new(
            vec!["a".into(), "b".into()],
            vec![1, 3],
            vec![r1, r2],
            cutoff,
        )
        .unwrap()
    }

    #[test]
    fn degree_bases() {
        let mut r = ring(30);
        assert_eq!(r.degree_basis(3).unwrap().dim, 2);
        assert_eq!(r.degree_basis(0).unwrap().dim, 1);
        let b9 = r.degree_basis(9).unwrap();
        assert_eq!(b9.dim, 2);
        // a^9 and a^6 b are independent residues, hence also a basis
        let (a9, a6b) = (r.monomial(&[9, 0]).unwrap(), r.monomial(&[6, 1]).unwrap());
        assert!(r.independent_mod_ideal(&[a9, a6b]).unwrap());
        assert!(matches!(r.degree_basis(31), Err(Error::Capacity { .. })));
    }

    #[test]
    fn non_homogeneous_rejected() {
        let one = CyclotomicNumber::one(1);
        let t = |a: u32, b: u32| MultiPoly::term(Monomial::new(vec![a, b]), one.clone());
        let bad = t(0, 1).sub(&t(2, 0)).unwrap();
        let r =
            PresentedGradedAlgebra::new(vec!["a".into(), "b".into()], vec![1, 3], vec![bad], 10);
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn beta_values() {
        let mut r = ring(30);
        let b1 = r.beta_k(1, 30).unwrap();
        assert_eq!(b1.beta_k, 3);
        assert_eq!(b1.status, CutoffStatus::VerifiedUpToCutoff);
        for k in 2..=4 {
            assert_eq!(r.beta_k(k, 30).unwrap().beta_k, 6, "k={k}");
        }
    }

    #[test]
    fn b_squared() {
        let mut r = ring(30);
        let b2 = r.monomial(&[0, 2]).unwrap();
        assert!(r.in_power(&b2, 2).unwrap());
        assert!(!r.in_power(&b2, 3).unwrap());
        assert!(!r.in_power(&b2, 4).unwrap());
        assert_eq!(r.power_quotient_dim(6, 2, 4).unwrap(), 1);
        for l in 7..=30 {
            assert!(r.component_in_power(l, 5).unwrap(), "l={l}");
        }
    }
}
