//! The threshold construction against a max-weight assignment of items to
//! positions with weights `min(g_j, T(r))`.

use gs_core::classes::is_gs;
use gs_core::constructions::threshold_gs;
use gs_core::rational::int;
use gs_core::{Rational, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::matching_value;

#[test]
fn threshold_equals_matching_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for case in 0..200 {
        let m = rng.gen_range(1..=8);
        let g: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(0..=9))).collect();
        let mut t: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(0..=9))).collect();
        t.sort_by(|a, b| b.cmp(a));
        let h = threshold_gs(&g, &t).unwrap();
        for s in Subset::all(m) {
            assert_eq!(*h.value(s), matching_value(&g, &t, s), "case {case} set {s:?}");
        }
        if m <= 6 {
            assert!(is_gs(&h), "case {case}");
        }
    }
}

#[test]
fn worked_example() {
    let h = threshold_gs(&[int(5), int(3)], &[int(4), int(2)]).unwrap();
    assert_eq!(*h.value(Subset::from_items(&[0])), int(4));
    assert_eq!(*h.value(Subset::from_items(&[1])), int(3));
    assert_eq!(*h.value(Subset::from_items(&[0, 1])), int(6));
}
