//! Multivariate polynomials with coefficients in `Q(ζ_m)`.
//!
//! Terms are kept in graded lexicographic order, so the last key of the term
//! map is the leading monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    /// Variables with non-zero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Renders with the given variable names, `1` for the empty product.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of `nvars` variables with the given weighted degree,
/// in increasing term order.
pub fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i];
        let max = if w == 0 { 0 } else { left / w };
        for e in 0..=max {
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(weights, 0, degree, &mut vec![0; weights.len()], &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, conductor: u32) -> Self {
        MultiPoly {
            nvars,
            conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CyclotomicNumber) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: CyclotomicNumber) -> Self {
        let mut p = Self::zero(m.0.len(), c.conductor());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(nvars: usize, conductor: u32, i: usize) -> Self {
        Self::term(
            Monomial::variable(nvars, i),
            CyclotomicNumber::one(conductor),
        )
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        nvars: usize,
        conductor: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, CyclotomicNumber)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, conductor);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Structural(format!(
                    "exponent vector of length {} in a {nvars}-variable polynomial",
                    e.len()
                )));
            }
            if c.conductor() != conductor {
                return Err(Error::Structural("coefficient conductor mismatch".into()));
            }
            p.add_term(Monomial(e), &c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = &*old + c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&CyclotomicNumber> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &CyclotomicNumber)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Union of the supports of all terms.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Structural(format!(
                "arity mismatch: {} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.conductor != other.conductor {
            return Err(Error::Structural(format!(
                "conductor mismatch: {} vs {}",
                self.conductor, other.conductor
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, CyclotomicNumber::one(self.conductor));
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Result<Self> {
        if c.conductor() != self.conductor {
            return Err(Error::Structural("scalar conductor mismatch".into()));
        }
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(a * c));
        }
        Ok(out)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.scale(q));
        }
        out
    }

    /// Sets every variable outside `support` to zero.
    pub fn restrict_to_support(&self, support: &[usize]) -> Result<Self> {
        if let Some(&bad) = support.iter().find(|&&i| i >= self.nvars) {
            return Err(Error::Structural(format!(
                "variable {bad} out of range for {} variables",
                self.nvars
            )));
        }
        let mut keep = vec![false; self.nvars];
        for &i in support {
            keep[i] = true;
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0.iter().zip(&keep).all(|(&e, &k)| e == 0 || k))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn evaluate(&self, point: &[CyclotomicNumber]) -> Result<CyclotomicNumber> {
        if point.len() != self.nvars {
            return Err(Error::Structural(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        if point.iter().any(|x| x.conductor() != self.conductor) {
            return Err(Error::Structural("point conductor mismatch".into()));
        }
        let mut acc = CyclotomicNumber::zero(self.conductor);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Applies a monomial substitution `x_i -> s_i · x_{π(i)}`.
    pub fn substitute_monomial(&self, perm: &[usize], scalars: &[CyclotomicNumber]) -> Self {
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; self.nvars];
            let mut coeff = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    exps[perm[i]] += e;
                    coeff = &coeff * &scalars[i].pow(e);
                }
            }
            out.add_term(Monomial(exps), &coeff);
        }
        out
    }

    /// Stable human-readable form, highest term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = m.display_with(names);
            let coeff = c.to_string();
            let simple = c.as_rational().is_some();
            let (sign, body) = match coeff.strip_prefix('-') {
                Some(rest) if simple => ("-", rest.to_string()),
                _ => ("+", coeff),
            };
            let piece = if mono == "1" {
                body
            } else if body == "1" {
                mono
            } else if simple {
                format!("{body}*{mono}")
            } else {
                format!("({body})*{mono}")
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&piece);
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Self::default_names(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn var(n: usize, m: u32, i: usize) -> MultiPoly {
        MultiPoly::variable(n, m, i)
    }

    #[test]
    fn examples() {
        let (x, y) = (var(2, 1, 0), var(2, 1, 1));
        let lhs = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let rhs = x.pow(2).sub(&y.pow(2)).unwrap();
        assert_eq!(lhs, rhs);

        let (x1, x2) = (var(2, 1, 0), var(2, 1, 1));
        let f = x1.pow(3).add(&x2.pow(3)).unwrap();
        assert_eq!(f.restrict_to_support(&[0]).unwrap(), x1.pow(3));

        let g = var(2, 3, 0).mul(&var(2, 3, 1)).unwrap();
        let pt = [
            CyclotomicNumber::root_of_unity(3, 1),
            CyclotomicNumber::root_of_unity(3, 2),
        ];
        assert!(g.evaluate(&pt).unwrap().is_one());
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            var(2, 1, 0).add(&var(3, 1, 0)),
            Err(Error::Structural(_))
        ));
        assert!(var(2, 1, 0).mul(&var(2, 3, 0)).is_err());
        assert!(var(2, 1, 0).evaluate(&[CyclotomicNumber::one(1)]).is_err());
    }

    #[test]
    fn grlex_leading_term() {
        let (x, y) = (var(2, 1, 0), var(2, 1, 1));
        let f = x.add(&y.pow(2)).unwrap().add(&x.mul(&y).unwrap()).unwrap();
        let (m, _) = f.leading_term().unwrap();
        assert_eq!(m.exponents(), &[1, 1]);
        assert_eq!(f.to_string(), "x1*x2 + x2^2 + x1");
        assert_eq!(x.sub(&y).unwrap().neg().to_string(), "-x1 + x2");
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(&[1, 3], 6);
        let e: Vec<_> = ms.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![0, 2], vec![3, 1], vec![6, 0]]);
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
    }

    fn small_poly(nvars: usize, m: u32) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), -3i64..4, 0i64..6),
            0..5,
        )
        .prop_map(move |ts| {
            let terms = ts.into_iter().map(|(e, c, k)| {
                let coeff =
                    &CyclotomicNumber::from_integer(m, c) * &CyclotomicNumber::root_of_unity(m, k);
                (e, coeff)
            });
            MultiPoly::from_terms(nvars, m, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(2, 5), b in small_poly(2, 5), c in small_poly(2, 5)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }

        #[test]
        fn restriction_extremes(f in small_poly(3, 3)) {
            prop_assert_eq!(f.restrict_to_support(&[0, 1, 2]).unwrap(), f.clone());
            let constant = f.restrict_to_support(&[]).unwrap();
            prop_assert!(constant.terms().all(|(m, _)| m.degree() == 0));
            prop_assert_eq!(constant.coefficient(&Monomial::one(3)), f.coefficient(&Monomial::one(3)));
        }

        #[test]
        fn field_inverse(c in -5i64..6, k in 0i64..7, d in 1i64..4) {
            let x = &CyclotomicNumber::from_integer(7, c) + &CyclotomicNumber::root_of_unity(7, k).pow(d as u32);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }
}
