use num_bigint::BigUint;
use proptest::prelude::*;
use secgain::code::gray::gray_image;
use secgain::code::linear::{weight_counts, weight_counts_brute};
use secgain::code::{direct_sum, Code, WeightEnumerator, Word};
use secgain::convcode::TailBitingSpec;
use secgain::highreal::HighReal;
use secgain::theta::{t_of_tau, tau_of_t, theta_construction_a_series};
use secgain::wiretap::{check_unique_decomposition, eve_bound, simulate_wiretap, CosetScheme, SimOptions};
use std::collections::{HashMap, HashSet};

fn rows_strategy(max_n: usize, max_k: usize) -> impl Strategy<Value = (usize, Vec<Word>)> {
    (2..=max_n).prop_flat_map(move |n| {
        let k = 1..=max_k.min(n);
        (Just(n), prop::collection::vec(1..(1u128 << n), k))
    })
}

fn linear(n: usize, rows: &[Word]) -> Option<Code> {
    Code::linear("p", n, rows.to_vec()).ok()
}

fn permute(w: Word, perm: &[usize]) -> Word {
    perm.iter().enumerate().fold(0, |acc, (i, &p)| acc | (((w >> i) & 1) << p))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn gray_walk_matches_brute_force((n, rows) in rows_strategy(20, 12)) {
        prop_assert_eq!(weight_counts(&rows, n, true), weight_counts_brute(&rows, n));
        prop_assert_eq!(weight_counts(&rows, n, false), weight_counts_brute(&rows, n));
    }

    #[test]
    fn double_macwilliams_is_identity((n, rows) in rows_strategy(14, 7)) {
        let Some(c) = linear(n, &rows) else { return Ok(()) };
        let w = c.weight_enumerator().unwrap();
        let m = c.size();
        let dual_size = (BigUint::from(1u32) << n) / &m;
        let back = w.macwilliams(&m).unwrap().macwilliams(&dual_size).unwrap();
        prop_assert_eq!(&back, w);
    }

    #[test]
    fn direct_sum_multiplies_enumerators((n1, r1) in rows_strategy(8, 4), (n2, r2) in rows_strategy(8, 4)) {
        let (Some(a), Some(b)) = (linear(n1, &r1), linear(n2, &r2)) else { return Ok(()) };
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        let product = a.weight_enumerator().unwrap().product(b.weight_enumerator().unwrap());
        prop_assert_eq!(s.weight_enumerator().unwrap(), &product);
    }

    #[test]
    fn gray_map_is_injective(len in 1usize..=5, raw in prop::collection::vec(prop::collection::vec(0u8..4, 5), 1..=3)) {
        let rows: Vec<Vec<u8>> = raw.into_iter().map(|r| r[..len].to_vec()).collect();
        let image = gray_image(&rows, len, 36).unwrap();
        let mut words: HashSet<Vec<u8>> = HashSet::new();
        let k = rows.len();
        for digits in 0..4usize.pow(k as u32) {
            let mut v = vec![0u8; len];
            let mut d = digits;
            for r in &rows {
                let coef = (d % 4) as u8;
                d /= 4;
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + coef * y) % 4;
                }
            }
            words.insert(v);
        }
        prop_assert_eq!(image.len(), words.len());
    }

    #[test]
    fn tail_biting_codes_are_quasi_cyclic(g1 in 1u64..16, g2 in 1u64..16, extra in 1usize..4) {
        let m = (64 - g1.max(g2).leading_zeros()) as usize - 1;
        let Ok(spec) = TailBitingSpec::new(g1, g2, m + 1 + extra) else { return Ok(()) };
        let Ok(code) = spec.build() else { return Ok(()) };
        let n = code.n();
        let words: HashSet<Word> = code.codewords().unwrap().into_iter().collect();
        let mask = (1u128 << n) - 1;
        for &w in &words {
            let shifted = ((w << 2) | (w >> (n - 2))) & mask;
            prop_assert!(words.contains(&shifted));
        }
        prop_assert!(code.is_formally_self_dual().unwrap().is_fsd);
    }

    #[test]
    fn construction_a_series_is_nonnegative((n, rows) in rows_strategy(10, 5)) {
        let Some(c) = linear(n, &rows) else { return Ok(()) };
        let s = theta_construction_a_series(c.weight_enumerator().unwrap(), 24).unwrap();
        prop_assert!(s.half_coeffs().iter().all(|c| c.sign() != num_bigint::Sign::Minus));
        prop_assert_eq!(s.half_coeff(0).unwrap(), &num_bigint::BigInt::from(1));
    }

    #[test]
    fn tau_round_trip(log_tau in (0.05f64).ln()..(20f64).ln()) {
        let tau = HighReal::from_f64(log_tau.exp());
        let back = tau_of_t(&t_of_tau(&tau).unwrap()).unwrap();
        prop_assert!(((&back - &tau).abs() / &tau).to_f64() < 1e-15);
    }
}

/// Random C containing 0 and a linear B; A is the set of sums when unique.
fn small_scheme() -> impl Strategy<Value = (Vec<Word>, Vec<Word>)> {
    (prop::collection::hash_set(1u128..16, 1..5), prop::collection::vec(1u128..16, 0..2))
        .prop_map(|(c, b)| {
            let mut cw: Vec<Word> = vec![0];
            cw.extend(c);
            let mut bw: Vec<Word> = vec![0];
            for g in b {
                let ext: Vec<Word> = bw.iter().map(|&x| x ^ g).collect();
                bw.extend(ext);
            }
            bw.sort();
            bw.dedup();
            (cw, bw)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn unique_decomposition_reproduces_a((c, b) in small_scheme(), extra in prop::collection::vec(0u128..16, 0..3)) {
        let mut a: HashSet<Word> = b.iter().flat_map(|&x| c.iter().map(move |&y| x ^ y)).collect();
        a.extend(extra);
        let a: Vec<Word> = a.into_iter().collect();
        let r = check_unique_decomposition(4, &a, &b, &c).unwrap();
        if r.valid {
            let mut sums: HashMap<Word, usize> = HashMap::new();
            for &x in &b {
                for &y in &c {
                    *sums.entry(x ^ y).or_default() += 1;
                }
            }
            prop_assert_eq!(sums.len(), a.len());
            prop_assert!(sums.values().all(|&k| k == 1));
            prop_assert!(a.iter().all(|w| sums.contains_key(w)));
        } else {
            prop_assert!(r.failure.is_some());
        }
    }
}

fn example_scheme(perm: &[usize]) -> CosetScheme {
    let c: Vec<Word> = [0b0000u128, 0b0011, 0b0101, 0b1001].iter().map(|&w| permute(w, perm)).collect();
    let b: Vec<Word> = [0b1111u128, 0b1000].iter().map(|&w| permute(w, perm)).collect();
    let a = Code::linear("F4", 4, vec![1, 2, 4, 8]).unwrap();
    CosetScheme::new("ex", a, Code::linear("B", 4, b).unwrap(), Code::explicit("C", 4, c).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn eve_bound_ignores_coordinate_order(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), sigma in 0.2f64..3.0) {
        let base = eve_bound(&example_scheme(&[0, 1, 2, 3]), sigma).unwrap();
        let moved = eve_bound(&example_scheme(&perm), sigma).unwrap();
        prop_assert!(((&base - &moved).abs() / &base).to_f64() < 1e-40);
    }

    #[test]
    fn simulator_is_deterministic(seed in any::<u64>(), sigma in 0.2f64..2.0) {
        let s = example_scheme(&[0, 1, 2, 3]);
        let a = simulate_wiretap(&s, sigma, 10_000, seed, SimOptions { parallel: true }).unwrap();
        let b = simulate_wiretap(&s, sigma, 10_000, seed, SimOptions { parallel: false }).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn enumerator_of_full_space_is_binomial() {
    let c = Code::linear("F6", 6, (0..6).map(|i| 1u128 << i).collect()).unwrap();
    let want = WeightEnumerator::from_u64(6, &[1, 6, 15, 20, 15, 6, 1]).unwrap();
    assert_eq!(c.weight_enumerator().unwrap(), &want);
}
