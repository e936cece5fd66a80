//! Oracles and frozen fixtures shared by the integration tests.

#![allow(dead_code)]

use gs_core::classes::PriceVector;
use gs_core::constructions::{ba, budget_additive, example_not_submodular};
use gs_core::rational::{int, rat};
use gs_core::{Rational, SetFunction, Subset};

/// Max-weight assignment of the items of `s` to distinct positions with
/// weights `min(g_j, T(r))`, by a bitmask DP over used positions.
pub fn matching_value(g: &[Rational], t: &[Rational], s: Subset) -> Rational {
    let m = g.len();
    let mut best: Vec<Option<Rational>> = vec![None; 1 << m];
    best[0] = Some(int(0));
    for j in s.items() {
        let mut next = best.clone();
        for (mask, v) in best.iter().enumerate() {
            let Some(v) = v else { continue };
            for r in (0..m).filter(|r| mask & (1 << r) == 0) {
                let w = v + g[j].clone().min(t[r].clone());
                let slot = &mut next[mask | (1 << r)];
                if slot.as_ref().is_none_or(|x| w > *x) {
                    *slot = Some(w);
                }
            }
        }
        best = next;
    }
    best.into_iter().flatten().max().expect("empty assignment")
}

/// Submodular non-GS fixtures, each with a price vector at which the greedy
/// demand is strictly worse than the best bundle.
pub fn greedy_failures() -> Vec<(&'static str, SetFunction, PriceVector)> {
    let p = |v: Vec<Rational>| PriceVector::new(v).expect("nonnegative prices");
    vec![
        (
            "example_not_submodular",
            example_not_submodular(),
            p(vec![rat(1, 4), int(0), int(0), int(0)]),
        ),
        ("ba(2,1)", ba(2, 1).expect("ba"), p(vec![rat(1, 4), int(0), int(0)])),
        (
            "ba(3,1)",
            ba(3, 1).expect("ba"),
            p(vec![rat(1, 4), int(0), int(0), int(0)]),
        ),
        (
            "budget_additive(2,1,1;2)",
            budget_additive(&[int(2), int(1), int(1)], &int(2)),
            p(vec![rat(1, 4), int(0), int(0)]),
        ),
    ]
}
