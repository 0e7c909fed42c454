use zsl_core::davenport::EngineConfig;
use zsl_core::group::{AbelianGroup, SemidirectGroup};
use zsl_core::invariant::{
    beta_k, construct_fk, induced_module, regular_representation, verify_beta_equals_davenport,
    verify_sigma_az2, verify_sigma_zpzd,
};

#[test]
fn sigma_for_semidirect_family() {
    for (p, d, e) in [(3, 2, 2), (5, 2, 4), (5, 4, 2), (7, 3, 2)] {
        let g = SemidirectGroup::new(p, d, e).unwrap();
        let r = verify_sigma_zpzd(&g).unwrap();
        assert!(r.passed, "{g}: {r:?}");
        assert_eq!(r.sigma, Some(p));
        assert!(r.max_degree as u64 <= p);
        // 2^d - 1 non-empty supports
        assert_eq!(r.restrictions.len(), (1 << d) - 1);
    }
}

#[test]
fn fk_are_invariant_with_bounded_degree() {
    for (p, d, e) in [(5, 4, 2), (7, 3, 2), (7, 6, 3), (11, 5, 3)] {
        let g = SemidirectGroup::new(p, d, e).unwrap();
        let rep = induced_module(&g).unwrap();
        for f in construct_fk(&g).unwrap() {
            assert!(rep.is_invariant(&f.poly).unwrap(), "{g} f_{}", f.k);
            assert!(f.degree as u64 <= p);
        }
    }
}

#[test]
fn sigma_for_dihedral_type_family() {
    for n in 3..=8u64 {
        for e in (2..=n).filter(|e| n % e == 0) {
            let r = verify_sigma_az2(n, e).unwrap();
            assert!(r.passed, "n={n} e={e}");
            assert_eq!(r.image_order as u64, 2 * e);
        }
    }
}

#[test]
fn beta_matches_davenport() {
    let cfg = EngineConfig::default();
    let z = |n| AbelianGroup::cyclic(n).unwrap();
    for (g, k) in [
        (z(2), 1),
        (z(2), 2),
        (z(3), 1),
        (z(3), 2),
        (AbelianGroup::new(vec![2, 2]).unwrap(), 1),
    ] {
        let r = verify_beta_equals_davenport(&g, k, &cfg).unwrap();
        assert!(
            r.passed,
            "{g} k={k}: β_k={} D_k={}",
            r.beta_k, r.davenport_k
        );
    }
}

#[test]
fn beta_k_growth_on_regular_reps() {
    let rep = regular_representation(&AbelianGroup::cyclic(2).unwrap()).unwrap();
    let b: Vec<u32> = (1..=3)
        .map(|k| beta_k(&rep, k, None).unwrap().beta_k)
        .collect();
    assert!(b.windows(2).all(|w| w[0] <= w[1]));
    for (i, &bk) in b.iter().enumerate() {
        let k = i as u32 + 1;
        // σ = exp = 2
        assert!(bk >= 2 * k);
        for (j, &br) in b.iter().enumerate().take(i + 1) {
            assert!((j as u32 + 1) * bk <= k * br);
        }
    }
}
