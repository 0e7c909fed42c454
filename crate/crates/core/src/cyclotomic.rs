//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! A value is a rational vector of length `φ(m)`: the coefficients of its
//! residue modulo the `m`-th cyclotomic polynomial `Φ_m`, lowest power first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::totient;
use crate::error::{Error, Result};

pub type Rational = BigRational;

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m > 0, "cyclotomic polynomial of index 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let den = cyclotomic_polynomial(d);
        num = exact_monic_div(&num, &den);
    }
    let out = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, out.clone());
    out
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dn + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    m: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(m: u32) -> Self {
        assert!(m > 0, "conductor must be positive");
        CyclotomicNumber {
            m,
            coeffs: vec![Rational::zero(); totient(m as u64) as usize],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u32, q: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(m, raw)
    }

    /// Builds a value from arbitrary-length coefficients in powers of `ζ_m`.
    pub fn from_coefficients(m: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(m, coeffs)
    }

    fn reduce(m: u32, mut raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[i]);
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    raw[i - deg + j] -= &c * Rational::from_integer(pj.clone());
                }
            }
        }
        raw.resize(deg, Rational::zero());
        CyclotomicNumber { m, coeffs: raw }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Whether every coefficient is an integer (so the value is an algebraic
    /// integer of `Z[ζ_m]`).
    pub fn is_cyclotomic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-expresses the value in `Q(ζ_n)` for a multiple `n` of the conductor.
    pub fn lift(&self, n: u32) -> Result<Self> {
        if !n.is_multiple_of(self.m) {
            return Err(Error::Structural(format!(
                "cannot lift from Q(ζ_{}) to Q(ζ_{n})",
                self.m
            )));
        }
        let step = (n / self.m) as usize;
        let mut raw = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::reduce(n, raw))
    }

    fn same_conductor(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::Structural(format!(
                "conductor mismatch: {} vs {}",
                self.m, other.m
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        Ok(CyclotomicNumber {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_conductor(other)?;
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce(self.m, raw))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic(
                "inverse of zero in a cyclotomic field".into(),
            ));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.m, q.recip()));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.m)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: s·a ≡ r (mod Φ)
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = divmod(&r0, &r1);
            let s2 = sub_poly(&s0, &mul_poly(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a non-zero constant since Φ_m is irreducible
        let c = r1[0].recip();
        let out: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::reduce(self.m, out))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn mul_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("non-zero divisor").clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.checked_add(rhs).expect("conductor mismatch")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.checked_add(&-rhs).expect("conductor mismatch")
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.checked_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "ζ".to_string(),
                _ => format!("ζ^{i}"),
            };
            if i == 0 || !mag.is_one() {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            write!(f, "{power}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials() {
        let show = |m| {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(1), ["-1", "1"]);
        assert_eq!(show(2), ["1", "1"]);
        assert_eq!(show(4), ["1", "0", "1"]);
        assert_eq!(show(6), ["1", "-1", "1"]);
        assert_eq!(show(12), ["1", "0", "-1", "0", "1"]);
    }

    #[test]
    fn examples() {
        let i = CyclotomicNumber::root_of_unity(4, 1);
        assert_eq!(&i * &i, CyclotomicNumber::from_integer(4, -1));

        let z = CyclotomicNumber::root_of_unity(3, 1);
        let s = &(&CyclotomicNumber::one(3) + &z) + &z.pow(2);
        assert!(s.is_zero());

        let a = CyclotomicNumber::from_rational(1, q(2, 3));
        let b = CyclotomicNumber::from_rational(1, q(1, 3));
        assert!((&a + &b).is_one());
    }

    #[test]
    fn root_sums_vanish_for_primes() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let mut acc = CyclotomicNumber::zero(p);
            for k in 0..p as i64 {
                acc = &acc + &CyclotomicNumber::root_of_unity(p, k);
            }
            assert!(acc.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn inverse_and_zero_division() {
        for m in [3u32, 5, 8, 12, 7] {
            let x = &CyclotomicNumber::from_integer(m, 2) + &CyclotomicNumber::root_of_unity(m, 1);
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one(), "m = {m}");
        }
        assert!(matches!(
            CyclotomicNumber::zero(5).inv(),
            Err(Error::Arithmetic(_))
        ));
    }

    #[test]
    fn mismatch_and_lift() {
        let a = CyclotomicNumber::root_of_unity(3, 1);
        let b = CyclotomicNumber::root_of_unity(6, 2);
        assert!(a.checked_add(&b).is_err());
        assert_eq!(a.lift(6).unwrap(), b);
        assert!(a.lift(4).is_err());
        assert_eq!(
            CyclotomicNumber::root_of_unity(6, 3),
            CyclotomicNumber::from_integer(6, -1)
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            CyclotomicNumber::from_rational(1, q(-3, 2)).to_string(),
            "-3/2"
        );
        let x = &CyclotomicNumber::from_integer(5, 2) - &CyclotomicNumber::root_of_unity(5, 2);
        assert_eq!(x.to_string(), "2 - ζ^2");
        assert_eq!(CyclotomicNumber::zero(7).to_string(), "0");
    }
}
