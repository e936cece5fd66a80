//! Property tests over seeded valuations.

use gs_core::classes::{demand_bruteforce, demand_greedy, is_gs, is_monotone, is_submodular, PriceVector};
use gs_core::corpus::{random_gs, random_prices, rng, submodular_corpus};
use gs_core::rational::{format_rational, parse_rational};
use gs_core::transforms::{
    additive_perturb, aggregate, convolve, endow, induce_all, max_symmetrize, partial_symmetrize, split,
    InductionNetwork,
};
use gs_core::{Rational, SetFunction, Subset};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gs_sample(seed: u64) -> SetFunction {
    random_gs(&mut rng(seed), seed as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn subset_algebra(a in 0u32..256, b in 0u32..256) {
        let (x, y) = (Subset::from_mask(a), Subset::from_mask(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.difference(y).is_disjoint(y));
        prop_assert_eq!(x.subsets().count(), 1usize << x.len());
    }

    #[test]
    fn valuation_json_round_trips(seed in 0u64..10_000) {
        let f = gs_sample(seed);
        prop_assert_eq!(SetFunction::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn max_symmetrization_keeps_gs_and_makes_the_pair_symmetric(seed in 0u64..10_000, i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let g = gs_sample(seed);
        let h = max_symmetrize(&g, i, j).unwrap();
        prop_assert!(is_gs(&h));
        prop_assert!(h.is_pair_symmetric(i, j));
        prop_assert!(g.le_pointwise(&h));
    }

    #[test]
    fn partial_symmetrization_keeps_gs(seed in 0u64..10_000, x in 0usize..3, y in 0usize..3) {
        prop_assume!(x != y);
        let g = gs_sample(seed);
        prop_assert!(is_gs(&partial_symmetrize(&g, x, y).unwrap()));
    }

    #[test]
    fn convolution_is_commutative_and_keeps_gs(a in 0u64..10_000, b in 0u64..10_000) {
        let f = gs_sample(a);
        let g = gs_sample(b);
        let (f, g) = if f.m() == g.m() {
            (f, g)
        } else {
            let keep = Subset::full(f.m().min(g.m()));
            (f.restrict(keep).unwrap(), g.restrict(keep).unwrap())
        };
        let c = convolve(&f, &g).unwrap();
        prop_assert_eq!(&c, &convolve(&g, &f).unwrap());
        prop_assert!(is_gs(&c));
        prop_assert!(f.le_pointwise(&c) && g.le_pointwise(&c));
    }

    #[test]
    fn elementary_operations_keep_gs(seed in 0u64..10_000, x in 0usize..3, mask in 1u32..8) {
        let g = gs_sample(seed);
        prop_assert!(is_gs(&endow(&g, Subset::from_mask(mask).intersection(g.full()).without(0)).unwrap()));
        prop_assert!(is_gs(&split(&g, x).unwrap()));
        prop_assert!(is_gs(&aggregate(&g, x, (x + 1) % 3).unwrap()));
        let w: Vec<Rational> = (0..g.m()).map(|i| Rational::from_integer(BigInt::from(i as i64 - 1))).collect();
        prop_assert!(is_gs(&additive_perturb(&g, &w).unwrap()));
    }

    #[test]
    fn induced_valuations_keep_gs(seed in 0u64..10_000, x in 0usize..3) {
        let g = gs_sample(seed);
        let y = (x + 1) % 3;
        let net = InductionNetwork::max_symmetrization_graph(g.clone(), x, y).unwrap();
        let induced = induce_all(&net).unwrap();
        prop_assert!(is_gs(&induced));
        prop_assert_eq!(induced, max_symmetrize(&g, x, y).unwrap());
    }

    #[test]
    fn greedy_demand_is_optimal_for_gs(seed in 0u64..10_000) {
        let g = gs_sample(seed);
        let p = PriceVector::new(random_prices(&mut rng(seed ^ 0xabcd), g.m(), 4)).unwrap();
        let (_, greedy) = demand_greedy(&g, &p).unwrap();
        prop_assert_eq!(greedy, demand_bruteforce(&g, &p).unwrap().best_utility);
    }
}

#[test]
fn submodular_corpus_is_submodular_and_monotone() {
    assert!(submodular_corpus(50, 9)
        .iter()
        .all(|f| is_submodular(f) && is_monotone(f)));
}
