use proptest::prelude::*;

use zsl_core::davenport::{DavenportEngine, EngineConfig};
use zsl_core::group::AbelianGroup;
use zsl_core::lemmas::{direct_product_witness, zero_sum_with_support};
use zsl_core::oracle::naive_k_max;
use zsl_core::packing::k_max;
use zsl_core::sequence::Sequence;

fn g(f: &[u64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_product(f).unwrap()
}

/// All multisets of size `len` over `a`, as sequences.
fn multisets(a: &AbelianGroup, len: usize) -> Vec<Sequence> {
    fn rec(n: usize, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a.order() as usize, 0, len, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|ix| Sequence::from_indices(a, ix).unwrap())
        .collect()
}

/// D_k by exhaustion: least n with every length-n sequence packing k blocks.
fn brute_davenport(a: &AbelianGroup, k: usize) -> usize {
    (1..)
        .find(|&n| multisets(a, n).iter().all(|s| naive_k_max(s).unwrap() >= k))
        .unwrap()
}

#[test]
fn engine_matches_exhaustive_search() {
    let cases: &[(&[u64], usize)] = &[
        (&[2], 3),
        (&[3], 3),
        (&[4], 2),
        (&[5], 2),
        (&[6], 1),
        (&[2, 2], 3),
        (&[2, 4], 1),
        (&[3, 3], 1),
    ];
    for &(f, kmax) in cases {
        let a = g(f);
        let mut e = DavenportEngine::new(&a, EngineConfig::default()).unwrap();
        for k in 1..=kmax {
            assert_eq!(
                e.davenport_k(k).unwrap().davenport,
                brute_davenport(&a, k),
                "{a} k={k}"
            );
        }
    }
}

#[test]
fn product_witness_packs_exactly_the_sum() {
    for (ga, gb) in [(g(&[2]), g(&[3])), (g(&[2]), g(&[2])), (g(&[3]), g(&[3]))] {
        for la in 0..=8 {
            for lb in 0..=8 - la {
                for sg in multisets(&ga, la) {
                    for th in multisets(&gb, lb) {
                        let w = direct_product_witness(&sg, &th).unwrap();
                        assert_eq!(w.sequence.len(), la + lb);
                        assert_eq!(
                            naive_k_max(&w.sequence).unwrap(),
                            naive_k_max(&sg).unwrap() + naive_k_max(&th).unwrap(),
                            "{sg} {th}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn support_lemma_sampled_at_13() {
    let p = 13u64;
    for mask in (1u64..1 << 12).step_by(7) {
        let s: Vec<u64> = (1..p).filter(|x| mask >> (x - 1) & 1 == 1).collect();
        let r = zero_sum_with_support(p, &s).unwrap();
        let mut supp = r.sequence.clone();
        supp.dedup();
        assert_eq!(supp, s);
        assert_eq!(r.sequence.iter().sum::<u64>() % p, 0);
        assert!(r.sequence.len() as u64 <= p);
    }
}

fn small_group() -> impl Strategy<Value = AbelianGroup> {
    prop_oneof![
        (2u64..=7).prop_map(|n| g(&[n])),
        Just(g(&[2, 2])),
        Just(g(&[2, 4])),
        Just(g(&[3, 3])),
    ]
}

fn sequence_over(a: AbelianGroup, max_len: usize) -> impl Strategy<Value = Sequence> {
    let n = a.order() as usize;
    prop::collection::vec(0..n, 0..=max_len)
        .prop_map(move |ix| Sequence::from_indices(&a, ix).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_max_is_superadditive(
        (s, t) in small_group().prop_flat_map(|a| (sequence_over(a.clone(), 6), sequence_over(a, 6)))
    ) {
        let st = s.concat(&t).unwrap();
        prop_assert!(k_max(&st).unwrap() >= k_max(&s).unwrap() + k_max(&t).unwrap());
        prop_assert_eq!(k_max(&st).unwrap(), naive_k_max(&st).unwrap());
    }

    #[test]
    fn appending_zero_adds_one_block(s in small_group().prop_flat_map(|a| sequence_over(a, 8))) {
        let mut z = s.clone();
        z.push(&s.group().zero()).unwrap();
        prop_assert_eq!(k_max(&z).unwrap(), k_max(&s).unwrap() + 1);
    }

    #[test]
    fn davenport_k_grows(f in prop_oneof![Just(vec![2u64]), Just(vec![3]), Just(vec![4]), Just(vec![2, 2])], k in 1usize..3) {
        let a = g(&f);
        let mut e = DavenportEngine::new(&a, EngineConfig::default()).unwrap();
        let dk = e.davenport_k(k).unwrap().davenport;
        let dk1 = e.davenport_k(k + 1).unwrap().davenport;
        let d1 = e.davenport_k(1).unwrap().davenport;
        // a free sequence plus 0 stays free one level up; greedy extraction bounds from above
        prop_assert!(dk1 > dk);
        prop_assert!(dk1 <= dk + d1);
    }
}
