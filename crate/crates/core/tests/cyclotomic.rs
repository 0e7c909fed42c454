use num_integer::Integer;

use zsl_core::cyclotomic::{cyclotomic_polynomial, CyclotomicNumber};

#[test]
fn degree_is_totient_and_zeta_is_a_root() {
    for m in 1..=40u32 {
        let phi = (1..=m).filter(|k| k.gcd(&m) == 1).count();
        let coeffs = cyclotomic_polynomial(m);
        assert_eq!(coeffs.len(), phi + 1, "m={m}");
        let z = CyclotomicNumber::root_of_unity(m, 1);
        let mut acc = CyclotomicNumber::zero(m);
        for (i, c) in coeffs.iter().enumerate() {
            let term = z
                .pow(i as u32)
                .scale(&num_rational::BigRational::from_integer(c.clone()));
            acc = &acc + &term;
        }
        assert!(acc.is_zero(), "m={m}");
    }
}

#[test]
fn sums_of_roots_of_unity() {
    for m in 2..=30u32 {
        let all = (0..m as i64).fold(CyclotomicNumber::zero(m), |s, k| {
            &s + &CyclotomicNumber::root_of_unity(m, k)
        });
        assert!(all.is_zero(), "m={m}");
        // primitive roots sum to the Möbius function
        let prim = (0..m as i64)
            .filter(|k| (*k as u32).gcd(&m) == 1)
            .fold(CyclotomicNumber::zero(m), |s, k| {
                &s + &CyclotomicNumber::root_of_unity(m, k)
            });
        let mu = mobius(m);
        assert_eq!(prim, CyclotomicNumber::from_integer(m, mu), "m={m}");
    }
}

fn mobius(mut n: u32) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[test]
fn inverse_round_trip() {
    for m in [3u32, 5, 8, 12, 15] {
        for a in 0..m as i64 {
            let x = &CyclotomicNumber::from_integer(m, 2) - &CyclotomicNumber::root_of_unity(m, a);
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one(), "m={m}, a={a}");
        }
    }
}
