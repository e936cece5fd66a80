//! Seeded random valuations for property tests and reproductions.
//!
//! GS samples come from families that are GS by construction, plus random
//! tables and submodular families filtered through [`is_gs`]. Values are small
//! integers (or simple fractions) to keep exact arithmetic cheap.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::approximation_ratio;
use crate::classes::{is_gs, is_monotone, is_submodular};
use crate::constructions::{
    additive, budget_additive, coverage_function, mrs, oxs, rado, threshold_gs, unit_demand, wmrf, BipartiteWeights,
    Matroid,
};
use crate::rational::{int, Rational};
use crate::setfn::{SetFunction, Subset};
use crate::transforms::{concave_compose, ConcaveFn};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

/// Uniform, partition or graphic matroid on `n` elements.
pub fn random_matroid(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
    match rng.gen_range(0..3) {
        0 => Matroid::uniform(n, rng.gen_range(1..=n)).expect("uniform matroid"),
        1 => {
            let blocks_count = rng.gen_range(1..=n.min(3));
            let mut labels: Vec<usize> = (0..n).map(|i| i % blocks_count).collect();
            labels.shuffle(rng);
            let blocks: Vec<Subset> = (0..blocks_count)
                .map(|b| (0..n).filter(|&i| labels[i] == b).fold(Subset::EMPTY, Subset::with))
                .collect();
            let caps: Vec<usize> = blocks.iter().map(|b| rng.gen_range(1..=b.len())).collect();
            Matroid::partition(n, &blocks, &caps).expect("partition matroid")
        }
        _ => {
            let vertices = rng.gen_range(2..=4);
            let edges: Vec<(usize, usize)> = (0..n)
                .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
                .collect();
            Matroid::graphic(vertices, &edges).expect("graphic matroid")
        }
    }
}

fn random_bipartite(rng: &mut ChaCha8Rng, left: usize, right: usize) -> BipartiteWeights {
    let weights = (0..left)
        .map(|_| {
            (0..right)
                .map(|_| rng.gen_bool(0.6).then(|| small(rng, 0, 6)))
                .collect()
        })
        .collect();
    BipartiteWeights::new(weights, right).expect("consistent dimensions")
}

pub fn random_oxs(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let right = rng.gen_range(1..=m);
    oxs(&random_bipartite(rng, m, right)).expect("oxs")
}

pub fn random_rado(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let right = rng.gen_range(1..=m);
    let w = random_bipartite(rng, m, right);
    let mat = random_matroid(rng, right);
    rado(&w, &mat).expect("rado")
}

pub fn random_wmrf(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let mat = random_matroid(rng, m);
    let w: Vec<Rational> = (0..m).map(|_| small(rng, 0, 6)).collect();
    wmrf(&mat, &w).expect("wmrf")
}

pub fn random_unit_demand(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    unit_demand(&(0..m).map(|_| small(rng, 0, 6)).collect::<Vec<_>>())
}

/// A random monotone concave piecewise-linear function with integer data.
pub fn random_concave(rng: &mut ChaCha8Rng) -> ConcaveFn {
    let pieces = rng.gen_range(1..=3);
    let mut slope = rng.gen_range(1..=4);
    let (mut x, mut y) = (0i64, 0i64);
    let mut pts = vec![(int(0), int(0))];
    for _ in 0..pieces {
        let len = rng.gen_range(1..=3);
        x += len;
        y += slope * len;
        pts.push((int(x), int(y)));
        slope = rng.gen_range(0..=slope);
    }
    ConcaveFn::new(pts).expect("concave by construction")
}

/// Concave function of a scaled matroid rank function.
pub fn random_concave_mrf(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let mat = random_matroid(rng, m);
    let scale = small(rng, 1, 3);
    concave_compose(&random_concave(rng), &mat.rank_function().scale(&scale)).expect("nonnegative")
}

pub fn random_threshold(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let g: Vec<Rational> = (0..m).map(|_| small(rng, 0, 8)).collect();
    let mut t: Vec<Rational> = (0..m).map(|_| small(rng, 0, 8)).collect();
    t.sort_by(|a, b| b.cmp(a));
    threshold_gs(&g, &t).expect("sorted thresholds")
}

pub fn random_additive(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    additive(&(0..m).map(|_| small(rng, 0, 6)).collect::<Vec<_>>())
}

/// Budget-additive with all item values equal, hence GS.
pub fn random_equal_ba(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let v = small(rng, 1, 4);
    let budget = small(rng, 1, 4 * m as i64);
    budget_additive(&vec![v; m], &budget)
}

pub fn random_budget_additive(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let v: Vec<Rational> = (0..m).map(|_| small(rng, 0, 5)).collect();
    budget_additive(&v, &small(rng, 1, 10))
}

pub fn random_coverage(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let universe = rng.gen_range(2..=6);
    let covers: Vec<Vec<usize>> = (0..m)
        .map(|_| (0..universe).filter(|_| rng.gen_bool(0.4)).collect())
        .collect();
    coverage_function(&covers, universe, &int(1))
}

pub fn random_mrs(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let parts: Vec<(Matroid, Rational)> = (0..rng.gen_range(1..=3))
        .map(|_| (random_matroid(rng, m), small(rng, 1, 3)))
        .collect();
    mrs(&parts).expect("mrs")
}

/// Random monotone table on `m` items with small integer values.
pub fn random_monotone_table(rng: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let mut values = vec![Rational::from_integer(0.into()); 1 << m];
    for mask in 1..values.len() {
        let s = Subset::from_mask(mask as u32);
        let floor = s
            .items()
            .map(|j| values[s.without(j).index()].clone())
            .max()
            .expect("nonempty");
        values[mask] = floor + small(rng, 0, 3);
    }
    SetFunction::from_values(m, values).expect("valid table")
}

/// One GS sample with `3 <= m <= 5`; `index` cycles through the families.
pub fn random_gs(rng: &mut ChaCha8Rng, index: usize) -> SetFunction {
    let m = rng.gen_range(3..=5);
    match index % 10 {
        0 => random_oxs(rng, m),
        1 => random_wmrf(rng, m),
        2 => random_rado(rng, m),
        3 => random_unit_demand(rng, m),
        4 => random_concave_mrf(rng, m),
        5 => random_threshold(rng, m),
        6 => random_additive(rng, m),
        7 => random_equal_ba(rng, m),
        8 => loop {
            let f = random_monotone_table(rng, 3);
            if is_gs(&f) {
                break f;
            }
        },
        _ => loop {
            let f = match rng.gen_range(0..3) {
                0 => random_coverage(rng, m.min(4)),
                1 => random_budget_additive(rng, m.min(4)),
                _ => random_mrs(rng, m.min(4)),
            };
            if is_gs(&f) {
                break f;
            }
        },
    }
}

/// `count` GS samples from `seed`.
pub fn gs_corpus(count: usize, seed: u64) -> Vec<SetFunction> {
    let mut r = rng(seed);
    (0..count).map(|i| random_gs(&mut r, i)).collect()
}

/// Monotone submodular samples with `3 <= m <= 5`, GS or not.
pub fn submodular_corpus(count: usize, seed: u64) -> Vec<SetFunction> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = r.gen_range(3..=5);
        let f = match out.len() % 5 {
            0 => random_coverage(&mut r, m),
            1 => random_budget_additive(&mut r, m),
            2 => random_mrs(&mut r, m),
            3 => random_monotone_table(&mut r, m.min(4)),
            _ => random_gs(&mut r, out.len()),
        };
        if is_monotone(&f) && is_submodular(&f) {
            out.push(f);
        }
    }
    out
}

/// `f(S) = max_π g(π(S))` over permutations `π` preserving a random
/// partition of the items. Then `g <= f`, `f` is symmetric within each block,
/// and `ρ` is the realized ratio.
pub fn symmetrization_pair(rng: &mut ChaCha8Rng, index: usize) -> (SetFunction, SetFunction, Rational) {
    loop {
        let g = random_gs(rng, index);
        let m = g.m();
        let blocks = rng.gen_range(1..=m);
        let labels: Vec<usize> = (0..m).map(|_| rng.gen_range(0..blocks)).collect();
        let perms = block_permutations(&labels);
        let f = SetFunction::from_fn(m, |s| {
            perms
                .iter()
                .map(|p| {
                    g.value(Subset::from_items(&s.items().map(|i| p[i]).collect::<Vec<_>>()))
                        .clone()
                })
                .max()
                .expect("identity permutation")
        });
        if let Some(rho) = approximation_ratio(&g, &f).expect("same m").ratio {
            return (g, f, rho);
        }
    }
}

/// Every permutation mapping each item to an item with the same label.
fn block_permutations(labels: &[usize]) -> Vec<Vec<usize>> {
    let m = labels.len();
    let mut out = Vec::new();
    let mut cur = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn go(i: usize, labels: &[usize], cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..labels.len() {
            if !used[t] && labels[t] == labels[i] {
                used[t] = true;
                cur[i] = t;
                go(i + 1, labels, cur, used, out);
                used[t] = false;
            }
        }
    }
    go(0, labels, &mut cur, &mut used, &mut out);
    debug_assert!(out.iter().all(|p| p.len() == m));
    out
}

/// A random nonnegative price vector with entries in `0..=max` (integers)
/// and occasional halves.
pub fn random_prices(rng: &mut ChaCha8Rng, m: usize, max: i64) -> Vec<Rational> {
    (0..m)
        .map(|_| Rational::new(rng.gen_range(0..=2 * max).into(), 2.into()))
        .collect()
}
