//! Cross-checks between the fast paths and independent enumerations.

use hayes_core::chars::{all_characters, decompose, is_p_group};
use hayes_core::comb::{
    a_closed, a_cycle, a_series, factorial_moments_from_probs, mu, probs_from_moments, rat, Rational,
};
use hayes_core::dist::{
    exact_distribution, factorial_moments, naive_distribution, rs_codeword_oracle, rs_distance_row, w_character,
    w_direct_all,
};
use hayes_core::ffield::{enumerate_monic, parse_poly, FieldSpec, Polynomial};
use hayes_core::hayes::{ClassGroup, HayesParams};
use hayes_core::par::Execution;
use hayes_core::Budget;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;

const MODULI: [&str; 5] = ["1", "x", "x + 1", "x^2 + 1", "x^2 + x"];

fn field(q: u32) -> FieldSpec {
    match q {
        4 => FieldSpec::new(2, 2),
        q => FieldSpec::prime(q),
    }
    .unwrap()
}

fn group(q: u32, ell: usize, m: &str) -> Option<ClassGroup> {
    let f = field(q);
    let hp = HayesParams::new(&f, ell, parse_poly(&f, m).ok()?).ok()?;
    ClassGroup::new(&hp, &Budget::default()).ok()
}

fn params() -> impl Strategy<Value = (u32, usize, &'static str)> {
    (
        prop::sample::select(vec![2u32, 3, 4, 5]),
        0usize..=2,
        prop::sample::select(MODULI.to_vec()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_matches_member_enumeration((q, ell, m) in params(), k in 0usize..=2, pick in any::<prop::sample::Index>()) {
        let g = group(q, ell, m).unwrap();
        let eps = pick.index(g.order());
        let dom = g.params().default_domain();
        let b = Budget::default();
        let fast = exact_distribution(&g, eps, k, &dom, &b, Execution::Parallel).unwrap();
        let slow = naive_distribution(&g, eps, k, &dom, &b).unwrap();
        let fast: Vec<u64> = fast.counts.iter().map(|c| c.to_u64().unwrap()).collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn class_sizes_and_membership((q, ell, m) in params(), k in 0usize..=2) {
        let g = group(q, ell, m).unwrap();
        let p = g.params();
        let expect = BigUint::from(q).pow(ell as u32) * p.phi(p.t());
        prop_assert_eq!(BigUint::from(g.order()), expect);
        let d = k + p.t() + ell;
        let b = Budget::default();
        for eps in 0..g.order() {
            let members: Vec<Polynomial> = g.class_members(eps, d, &b).unwrap().collect();
            prop_assert_eq!(members.len() as u64, (q as u64).pow(k as u32));
            for f in &members {
                prop_assert!(f.is_monic() && f.deg() == d);
                prop_assert_eq!(g.class_of(f), Some(eps));
            }
        }
    }

    #[test]
    fn group_axioms((q, ell, m) in params(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let g = group(q, ell, m).unwrap();
        let (a, b, c) = (a.index(g.order()), b.index(g.order()), c.index(g.order()));
        prop_assert_eq!(g.mul(a, b), g.mul(b, a));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(a, g.inverse(a)), g.identity());
        prop_assert_eq!(g.order() % g.element_order(a), 0);
    }

    #[test]
    fn product_lands_in_product_class((q, ell, m) in params(), i in 0u64..64, j in 0u64..64) {
        let g = group(q, ell, m).unwrap();
        let f = field(q);
        let all: Vec<Polynomial> = enumerate_monic(&f, 2).unwrap().filter(|p| g.class_of(p).is_some()).collect();
        prop_assume!(!all.is_empty());
        let (x, y) = (&all[i as usize % all.len()], &all[j as usize % all.len()]);
        let prod = f.poly_mul(x, y);
        prop_assert_eq!(g.class_of(&prod), Some(g.mul(g.class_of(x).unwrap(), g.class_of(y).unwrap())));
    }

    #[test]
    fn parallel_and_sequential_agree((q, ell, m) in params(), k in 0usize..=3) {
        let g = group(q, ell, m).unwrap();
        let dom = g.params().default_domain();
        let b = Budget::default();
        for eps in [0, g.order() - 1] {
            let s = exact_distribution(&g, eps, k, &dom, &b, Execution::Sequential).unwrap();
            let p = exact_distribution(&g, eps, k, &dom, &b, Execution::Parallel).unwrap();
            prop_assert_eq!(s.counts, p.counts);
        }
    }

    #[test]
    fn moments_invert_to_probabilities((q, ell, m) in params(), k in 0usize..=2) {
        let g = group(q, ell, m).unwrap();
        let dom = g.params().default_domain();
        let dist = exact_distribution(&g, 0, k, &dom, &Budget::default(), Execution::Sequential).unwrap();
        let top = dist.counts.len() - 1;
        let moments = factorial_moments(&dist, top);
        let probs = probs_from_moments(&moments, top).unwrap();
        for (r, p) in probs.iter().enumerate() {
            prop_assert_eq!(p, &dist.probability(r));
        }
        prop_assert_eq!(factorial_moments_from_probs(&probs, top), moments);
    }

    #[test]
    fn mu_sandwich(q in 2u64..=9, n_off in 0usize..=9, r_off in 0usize..=9, m in 0usize..=12) {
        let n = (n_off as u64).min(q) as usize;
        let r = r_off.min(n);
        let v = mu(m, r, n, q);
        let qb = BigInt::from(q);
        if m >= 1 {
            prop_assert!(v >= Rational::new(BigInt::from(q as i64 - n as i64 + r as i64), qb.clone()));
        }
        let lim = Rational::new((&qb - BigInt::one()).pow((n - r) as u32), qb.pow((n - r) as u32));
        let cap = Rational::new(hayes_core::comb::binomial((n - r) as u64, m as u64 + 1), qb.pow(m as u32 + 1));
        prop_assert!((v - lim).abs() <= cap);
    }

    #[test]
    fn a_j_three_ways(j in 0usize..=7, p in prop::sample::select(vec![2u64, 3, 5, 7]),
                      an in 0i64..20, ad in 1i64..5, bn in 0i64..8, bd in 1i64..5) {
        let (a, b) = (rat(an, ad), rat(bn, bd));
        let s = a_series(j, &a, &b, p);
        prop_assert_eq!(&s, &a_closed(j, &a, &b, p));
        prop_assert_eq!(&s, &a_cycle(j, &a, &b, p).unwrap());
    }
}

#[test]
fn character_expansion_matches_pairs() {
    let b = Budget::default();
    for (q, ell, m) in [(3, 1, "x + 1"), (2, 2, "x^2 + x"), (5, 1, "x^2 + 2"), (4, 2, "1")] {
        let g = group(q, ell, m).unwrap();
        let table = all_characters(&decompose(&g));
        let dom = g.params().default_domain();
        let p = g.params();
        for k in 0..=2usize {
            let scale = 1e-6 * (q as f64).powi(k as i32).max(1.0);
            for j in k + 1..=k + p.t() + ell {
                let direct = w_direct_all(&g, j, k, &dom, &b).unwrap();
                for (eps, w) in direct.iter().enumerate() {
                    let c = w_character(&g, &table, j, eps, k, &dom, &b).unwrap();
                    let err = (c.value - w.to_f64().unwrap()).norm();
                    assert!(err <= scale, "q={q} ell={ell} Q={m} k={k} j={j} eps={eps}: {} vs {w}", c.value);
                }
            }
        }
    }
}

#[test]
fn distance_rows_match_codeword_count() {
    let b = Budget::default();
    for (q, ell, k) in [(3u32, 1usize, 2usize), (4, 2, 1), (5, 1, 2)] {
        let f = field(q);
        let g = group(q, ell, "1").unwrap();
        for w in enumerate_monic(&f, k + ell).unwrap().step_by(7) {
            let row = rs_distance_row(&g, &w, k, &b, Execution::Parallel).unwrap();
            let mut got = row.counts.clone();
            while got.len() > 1 && got.last().is_some_and(|c| *c == BigUint::default()) {
                got.pop();
            }
            assert_eq!(got, rs_codeword_oracle(&f, &w, k, &b).unwrap(), "q={q} word {w}");
        }
    }
}

#[test]
fn unit_modulus_gives_p_group() {
    for q in [2u32, 3, 4, 5] {
        for ell in 0..=3 {
            assert!(is_p_group(&group(q, ell, "1").unwrap()), "q={q} ell={ell}");
        }
    }
    // F_3^* has order 2, prime to 3
    assert!(!is_p_group(&group(3, 1, "x").unwrap()));
}
