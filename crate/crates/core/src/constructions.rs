//! Concrete valuation families and explicit approximators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::classes::as_budget_additive;
use crate::error::{Error, Result};
use crate::rational::{floor_log2_inverse, int, rat, Rational};
use crate::setfn::{SetFunction, Subset, MAX_ITEMS};

fn names(prefix_free: impl IntoIterator<Item = String>) -> Vec<String> {
    prefix_free.into_iter().collect()
}

/// Four-item monotone submodular function that is not GS; max-symmetrizing
/// items `a` and `b` destroys submodularity.
pub fn example_not_submodular() -> SetFunction {
    // Masks: a = 1, b = 2, c = 4, d = 8.
    let table = [0, 3, 2, 5, 1, 3, 3, 5, 2, 3, 4, 5, 3, 3, 5, 5];
    SetFunction::from_values(4, table.iter().map(|&v| int(v)).collect())
        .expect("valid table")
        .with_names(names(["a", "b", "c", "d"].map(String::from)))
        .expect("four names")
}

pub fn additive(values: &[Rational]) -> SetFunction {
    SetFunction::from_fn(values.len(), |s| s.items().map(|j| values[j].clone()).sum())
}

/// `f(S) = min(B, Σ_{j∈S} v_j)`.
pub fn budget_additive(values: &[Rational], budget: &Rational) -> SetFunction {
    SetFunction::from_fn(values.len(), |s| {
        if s.is_empty() {
            return Rational::zero();
        }
        let total: Rational = s.items().map(|j| values[j].clone()).sum();
        total.min(budget.clone())
    })
}

/// `f(S) = max_{j∈S} v_j`.
pub fn unit_demand(values: &[Rational]) -> SetFunction {
    SetFunction::from_fn(values.len(), |s| {
        s.items()
            .map(|j| values[j].clone())
            .max()
            .unwrap_or_else(Rational::zero)
    })
}

fn check_size(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ITEMS {
        return Err(Error::domain(format!(
            "construction needs {m} items, supported range is 1..={MAX_ITEMS}"
        )));
    }
    Ok(())
}

/// Budget-additive with budget 1 and `d + 1` levels; level `h` holds `k^h`
/// items of value `k^-h`. Level `h` items are named by letter `h` (`a`,
/// `b1`, `b2`, ..., `c1`, ...).
pub fn ba(k: usize, d: usize) -> Result<SetFunction> {
    if k < 2 || d < 1 {
        return Err(Error::domain("ba(k, d) needs k >= 2 and d >= 1"));
    }
    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut count = 1usize;
    for h in 0..=d {
        if values.len() + count > MAX_ITEMS {
            return Err(Error::domain(format!("ba({k}, {d}) exceeds {MAX_ITEMS} items")));
        }
        let v = Rational::new(BigInt::one(), BigInt::from(k).pow(h as u32));
        let letter = (b'a' + h as u8) as char;
        for t in 0..count {
            values.push(v.clone());
            labels.push(if h == 0 {
                letter.to_string()
            } else {
                format!("{letter}{}", t + 1)
            });
        }
        count *= k;
    }
    budget_additive(&values, &int(1)).with_names(labels)
}

/// The item-level sets of `ba(k, d)`.
pub fn ba_levels(k: usize, d: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut count = 1;
    for _ in 0..=d {
        out.push(Subset::from_items(&(start..start + count).collect::<Vec<_>>()));
        start += count;
        count *= k;
    }
    out
}

/// `h(S) = Σ_r min(g(S_r), T(r))` with `S` sorted by non-increasing `g`,
/// ties by ascending index. GS when `T` is non-increasing.
pub fn threshold_gs(g: &[Rational], thresholds: &[Rational]) -> Result<SetFunction> {
    if thresholds.len() != g.len() {
        return Err(Error::domain("threshold list must have one entry per item"));
    }
    if thresholds.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::domain("thresholds must be non-increasing"));
    }
    if g.iter().any(|v| v.is_negative()) {
        return Err(Error::domain("item values must be nonnegative"));
    }
    check_size(g.len())?;
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&x, &y| g[y].cmp(&g[x]).then(x.cmp(&y)));
    Ok(SetFunction::from_fn(g.len(), |s| {
        order
            .iter()
            .filter(|&&j| s.contains(j))
            .zip(thresholds)
            .map(|(&j, t)| g[j].clone().min(t.clone()))
            .sum()
    }))
}

/// Largest multiple of `1/10^6` strictly below `x`, clamped at 0.
fn micro_floor_below(x: f64) -> Rational {
    let scaled = (x * 1e6).floor() - 1.0;
    rat(scaled.max(0.0) as i64, 1_000_000)
}

/// Threshold approximator of a budget-additive function for `m >= 16`.
///
/// The budget is rescaled to `1 + L` with `L ≈ ln ln m / ln m`, thresholds are
/// `T(1) = L` and `T(i) ≈ 1/(i ln m)`, all rounded down to multiples of
/// `10^-6`. The result is GS and lies below `f`.
pub fn ba_loglog_approx(f: &SetFunction) -> Result<SetFunction> {
    let m = f.m();
    if m < 16 {
        return Err(Error::domain("ba_loglog_approx needs at least 16 items"));
    }
    let fit = as_budget_additive(f).ok_or_else(|| Error::domain("input is not budget-additive"))?;
    if !fit.budget.is_positive() {
        return Err(Error::domain("budget must be positive"));
    }
    let ln_m = (m as f64).ln();
    let big_l = micro_floor_below(ln_m.ln() / ln_m);
    let mut thresholds = vec![big_l.clone()];
    thresholds.extend((2..=m).map(|i| micro_floor_below(1.0 / (i as f64 * ln_m))));
    let target = int(1) + &big_l;
    let total: Rational = thresholds.iter().cloned().sum();
    if total > target {
        return Err(Error::Internal("rounded thresholds exceed the budget".into()));
    }
    let scale = &target / &fit.budget;
    let g: Vec<Rational> = fit.values.iter().map(|v| v * &scale).collect();
    let h = threshold_gs(&g, &thresholds)?;
    Ok(h.scale(&(int(1) / scale)).set_names(f.names().map(<[String]>::to_vec)))
}

/// The explicit GS function on items `a, b1..bk` approximating `ba(k, 1)`
/// within `2k/(k+1)`.
pub fn approx2_gs(k: usize) -> Result<SetFunction> {
    if k < 2 {
        return Err(Error::domain("approx2_gs needs k >= 2"));
    }
    check_size(k + 1)?;
    let two_k = 2 * k as i64;
    let f = SetFunction::from_fn(k + 1, |s| {
        let l = s.without(0).len() as i64;
        if s.contains(0) {
            rat(k as i64 + 1 + l, two_k).min(int(1))
        } else if l == 0 {
            Rational::zero()
        } else {
            rat(l + 1, two_k)
        }
    });
    let mut labels = vec!["a".to_string()];
    labels.extend((1..=k).map(|t| format!("b{t}")));
    f.with_names(labels)
}

/// GS approximator of a budget-additive `f` from below within `2(1 + ⌈log m⌉)`.
///
/// Values (after normalizing the budget to 1) are rounded down to powers of
/// two and split into classes `t = 0..=L`, `L = ⌈log2 m⌉`; class `L` also takes
/// every smaller value. The result is `B/(L+1) · Σ_t min(1, f'(S ∩ M_t))`.
pub fn ba_log_approx(f: &SetFunction) -> Result<SetFunction> {
    let fit = as_budget_additive(f).ok_or_else(|| Error::domain("input is not budget-additive"))?;
    let budget = fit.budget;
    if !budget.is_positive() {
        return Err(Error::domain("budget must be positive"));
    }
    let m = f.m();
    let big_l = usize::BITS - (m - 1).leading_zeros();
    let mut class = Vec::with_capacity(m);
    let mut rounded = Vec::with_capacity(m);
    for v in &fit.values {
        let v = (v / &budget).min(int(1));
        if v.is_zero() {
            class.push(big_l);
            rounded.push(Rational::zero());
            continue;
        }
        let t = floor_log2_inverse(&v);
        class.push(t.min(big_l));
        rounded.push(Rational::new(BigInt::one(), BigInt::one() << t));
    }
    let classes = big_l as i64 + 1;
    let factor = &budget / int(classes);
    Ok(SetFunction::from_fn(m, |s| {
        let mut per_class = vec![Rational::zero(); classes as usize];
        for j in s.items() {
            per_class[class[j] as usize] += &rounded[j];
        }
        let h: Rational = per_class.into_iter().map(|x| x.min(int(1))).sum();
        h * &factor
    })
    .set_names(f.names().map(<[String]>::to_vec)))
}

/// `q` groups of `q` consecutive items; `f(S)` is the largest in-group count.
pub fn xos_grid(q: usize) -> Result<SetFunction> {
    if q < 2 {
        return Err(Error::domain("xos_grid needs q >= 2"));
    }
    check_size(q * q)?;
    Ok(SetFunction::from_fn(q * q, |s| {
        int((0..q)
            .map(|g| (s.mask() >> (g * q)) & ((1 << q) - 1))
            .map(u32::count_ones)
            .max()
            .unwrap_or(0) as i64)
    }))
}

/// Submodular approximator of `xos_grid(q)` within `q - 1/2`.
pub fn xos_grid_submod_approx(q: usize) -> Result<SetFunction> {
    if q < 2 {
        return Err(Error::domain("xos_grid_submod_approx needs q >= 2"));
    }
    check_size(q * q)?;
    let den = 2 * q as i64 - 1;
    Ok(SetFunction::from_fn(q * q, |s| {
        let n = s.len();
        if n < q {
            rat(2 * n as i64, den)
        } else if n > q {
            rat(2 * q as i64, den)
        } else {
            let groups: BTreeSet<usize> = s.items().map(|j| j / q).collect();
            if groups.len() == q {
                int(1)
            } else {
                rat(2 * q as i64, den)
            }
        }
    }))
}

/// A randomized coverage function sandwiching a budget-additive function.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageApprox {
    /// Weight of every universe element.
    #[serde_as(as = "DisplayFromStr")]
    pub element_weight: Rational,
    pub universe_size: usize,
    /// Sorted element indices covered by each item.
    pub covers: Vec<Vec<usize>>,
    pub g: SetFunction,
    /// Number of samples drawn, including the accepted one.
    pub attempts: usize,
}

pub const COVERAGE_RETRIES: usize = 10;

/// Upper bound on `e/(e-1)` used as the default coverage ratio.
pub fn coverage_ratio_bound() -> Rational {
    rat(791, 500)
}

/// Item `i` covers `v_i N / B` uniformly random elements, each element weighs
/// `ρ B / N`. Resamples until `f <= g <= ρ f` holds everywhere.
pub fn coverage_approx_ba(f: &SetFunction, n: usize, seed: u64, rho: &Rational) -> Result<CoverageApprox> {
    if *rho < coverage_ratio_bound() {
        return Err(Error::domain("ratio must be at least 791/500"));
    }
    let fit = as_budget_additive(f).ok_or_else(|| Error::domain("input is not budget-additive"))?;
    let budget = fit.budget;
    if !budget.is_positive() || n == 0 {
        return Err(Error::domain("budget and universe size must be positive"));
    }
    let mut sizes = Vec::with_capacity(f.m());
    for (i, v) in fit.values.iter().enumerate() {
        let share = v.clone().min(budget.clone()) * int(n as i64) / &budget;
        if !share.is_integer() {
            return Err(Error::domain(format!(
                "item {i}: v_i N / B = {share} is not an integer; choose another N"
            )));
        }
        sizes.push(share.to_integer().to_usize().expect("share fits in usize"));
    }
    let weight = rho * &budget / int(n as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=COVERAGE_RETRIES {
        let covers: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&c| {
                let mut v = sample(&mut rng, n, c).into_vec();
                v.sort_unstable();
                v
            })
            .collect();
        let g = coverage_function(&covers, n, &weight);
        let ok = f
            .subsets()
            .all(|s| f.value(s) <= g.value(s) && *g.value(s) <= rho * f.value(s));
        if ok {
            return Ok(CoverageApprox {
                element_weight: weight,
                universe_size: n,
                covers,
                g: g.set_names(f.names().map(<[String]>::to_vec)),
                attempts: attempt,
            });
        }
    }
    Err(Error::Sampling(format!(
        "no valid coverage sample in {COVERAGE_RETRIES} attempts with N = {n}; increase N"
    )))
}

/// `g(S) = weight · |∪_{i∈S} covers_i|`.
pub fn coverage_function(covers: &[Vec<usize>], universe: usize, weight: &Rational) -> SetFunction {
    let words = universe.div_ceil(64);
    let bits: Vec<Vec<u64>> = covers
        .iter()
        .map(|c| {
            let mut b = vec![0u64; words];
            for &e in c {
                b[e / 64] |= 1 << (e % 64);
            }
            b
        })
        .collect();
    SetFunction::from_fn(covers.len(), |s| {
        let mut acc = vec![0u64; words];
        for j in s.items() {
            for (a, b) in acc.iter_mut().zip(&bits[j]) {
                *a |= b;
            }
        }
        let count: u32 = acc.iter().map(|w| w.count_ones()).sum();
        weight * int(count as i64)
    })
}

/// Replaces each entry by the maximum over its submasks.
pub(crate) fn downward_max(m: usize, mut t: Vec<Rational>) -> Vec<Rational> {
    for bit in 0..m {
        for mask in 0..t.len() {
            if mask & (1 << bit) != 0 {
                let below = t[mask ^ (1 << bit)].clone();
                if below > t[mask] {
                    t[mask] = below;
                }
            }
        }
    }
    t
}

/// A matroid given by its family of independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground_size: usize,
    independent: Vec<bool>,
    rank: Vec<usize>,
}

const MAX_MATROID_GROUND: usize = 16;

impl Matroid {
    /// Verifies nonemptiness, downward closure and the exchange property.
    pub fn new(ground_size: usize, independent: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if ground_size > MAX_MATROID_GROUND {
            return Err(Error::domain(format!(
                "matroid ground set larger than {MAX_MATROID_GROUND}"
            )));
        }
        let n = 1usize << ground_size;
        let mut indep = vec![false; n];
        for s in independent {
            if s.index() >= n {
                return Err(Error::domain(format!("independent set {s:?} outside the ground set")));
            }
            indep[s.index()] = true;
        }
        if !indep[0] {
            return Err(Error::domain("the empty set must be independent"));
        }
        for mask in 0..n {
            if indep[mask] {
                let s = Subset::from_mask(mask as u32);
                if let Some(j) = s.items().find(|&j| !indep[s.without(j).index()]) {
                    return Err(Error::domain(format!(
                        "not downward closed: {s:?} independent but removing {j} is not"
                    )));
                }
            }
        }
        let mut rank = vec![0usize; n];
        for mask in 1..n {
            rank[mask] = if indep[mask] {
                mask.count_ones() as usize
            } else {
                let s = Subset::from_mask(mask as u32);
                s.items().map(|j| rank[s.without(j).index()]).max().unwrap_or(0)
            };
        }
        // Exchange holds iff every independent set maximal inside X has size r(X).
        let full = Subset::full(ground_size);
        for mask in 0..n {
            if !indep[mask] {
                continue;
            }
            let i = Subset::from_mask(mask as u32);
            let ext: Subset = full
                .difference(i)
                .items()
                .filter(|&x| indep[i.with(x).index()])
                .fold(Subset::EMPTY, Subset::with);
            let free = full.difference(i).difference(ext);
            for y in free.subsets() {
                let x = i.union(y);
                if rank[x.index()] != i.len() {
                    return Err(Error::domain(format!(
                        "exchange property fails: {i:?} is maximal in {x:?} but smaller than its rank"
                    )));
                }
            }
        }
        Ok(Matroid {
            ground_size,
            independent: indep,
            rank,
        })
    }

    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        Self::new(n, Subset::all(n).filter(|s| s.len() <= r))
    }

    /// At most `caps[b]` items from each block `blocks[b]`; blocks partition the ground set.
    pub fn partition(n: usize, blocks: &[Subset], caps: &[usize]) -> Result<Self> {
        if blocks.len() != caps.len() {
            return Err(Error::domain("one capacity per block"));
        }
        let union = blocks.iter().fold(Subset::EMPTY, |a, &b| a.union(b));
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        if union != Subset::full(n) || total != n {
            return Err(Error::domain("blocks must partition the ground set"));
        }
        Self::new(
            n,
            Subset::all(n).filter(|s| blocks.iter().zip(caps).all(|(b, &c)| s.intersection(*b).len() <= c)),
        )
    }

    /// Forests of a multigraph on `vertices` whose edge `e` is `edges[e]`.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::domain("edge endpoint out of range"));
        }
        let acyclic = |s: &Subset| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            s.items().all(|e| {
                let (u, v) = edges[e];
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
                a != b
            })
        };
        Self::new(edges.len(), Subset::all(edges.len()).filter(acyclic))
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.independent.get(s.index()).copied().unwrap_or(false)
    }

    pub fn rank(&self, s: Subset) -> usize {
        self.rank[s.index()]
    }

    pub fn independent_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..self.independent.len())
            .filter(|&m| self.independent[m])
            .map(|m| Subset::from_mask(m as u32))
    }

    pub fn rank_function(&self) -> SetFunction {
        SetFunction::from_fn(self.ground_size.max(1), |s| int(self.rank(s) as i64))
    }
}

#[derive(Serialize, Deserialize)]
struct MatroidFile {
    n: usize,
    independent: Vec<u32>,
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatroidFile {
            n: self.ground_size,
            independent: self.independent_sets().map(Subset::mask).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = MatroidFile::deserialize(d)?;
        Matroid::new(file.n, file.independent.into_iter().map(Subset::from_mask)).map_err(serde::de::Error::custom)
    }
}

/// Edge weights of a bipartite graph; `None` marks a missing edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteWeights {
    left_size: usize,
    right_size: usize,
    weights: Vec<Vec<Option<Rational>>>,
}

impl BipartiteWeights {
    pub fn new(weights: Vec<Vec<Option<Rational>>>, right_size: usize) -> Result<Self> {
        if weights.iter().any(|row| row.len() != right_size) {
            return Err(Error::domain("every row needs one entry per right vertex"));
        }
        Ok(BipartiteWeights {
            left_size: weights.len(),
            right_size,
            weights,
        })
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.weights[u][v].as_ref()
    }
}

/// Calls `visit(left_set, right_set, weight)` for every matching.
pub(crate) fn for_each_matching(
    left: usize,
    right: usize,
    weight: &dyn Fn(usize, usize) -> Option<Rational>,
    visit: &mut dyn FnMut(Subset, Subset, &Rational),
) {
    #[allow(clippy::too_many_arguments)]
    fn go(
        u: usize,
        left: usize,
        right: usize,
        weight: &dyn Fn(usize, usize) -> Option<Rational>,
        ls: Subset,
        rs: Subset,
        acc: &Rational,
        visit: &mut dyn FnMut(Subset, Subset, &Rational),
    ) {
        if u == left {
            visit(ls, rs, acc);
            return;
        }
        go(u + 1, left, right, weight, ls, rs, acc, visit);
        for v in 0..right {
            if rs.contains(v) {
                continue;
            }
            if let Some(w) = weight(u, v) {
                go(u + 1, left, right, weight, ls.with(u), rs.with(v), &(acc + w), visit);
            }
        }
    }
    go(
        0,
        left,
        right,
        weight,
        Subset::EMPTY,
        Subset::EMPTY,
        &Rational::zero(),
        visit,
    );
}

fn matching_valuation(w: &BipartiteWeights, mut accept: impl FnMut(Subset) -> bool) -> Result<SetFunction> {
    check_size(w.left_size)?;
    let mut best = vec![Rational::zero(); 1 << w.left_size];
    let weight = |u: usize, v: usize| w.weights[u][v].clone();
    for_each_matching(w.left_size, w.right_size, &weight, &mut |ls, rs, val| {
        if accept(rs) && *val > best[ls.index()] {
            best[ls.index()] = val.clone();
        }
    });
    SetFunction::from_values(w.left_size, downward_max(w.left_size, best))
}

/// Maximum-weight matching using only items in `S` (left side).
pub fn oxs(w: &BipartiteWeights) -> Result<SetFunction> {
    matching_valuation(w, |_| true)
}

/// Maximum-weight matching from `S` whose matched right side is independent.
pub fn rado(w: &BipartiteWeights, m: &Matroid) -> Result<SetFunction> {
    if m.ground_size() != w.right_size {
        return Err(Error::domain("matroid must live on the right side of the graph"));
    }
    matching_valuation(w, |rs| m.is_independent(rs))
}

/// Maximum weight of an independent subset of `S`.
pub fn wmrf(m: &Matroid, weights: &[Rational]) -> Result<SetFunction> {
    if weights.len() != m.ground_size() {
        return Err(Error::domain("one weight per matroid element"));
    }
    check_size(weights.len())?;
    let mut best = vec![Rational::zero(); 1 << weights.len()];
    for s in m.independent_sets() {
        best[s.index()] = s
            .items()
            .map(|j| weights[j].clone())
            .sum::<Rational>()
            .max(Rational::zero());
    }
    SetFunction::from_values(weights.len(), downward_max(weights.len(), best))
}

/// `Σ_t w_t · rank_t(S)`.
pub fn mrs(parts: &[(Matroid, Rational)]) -> Result<SetFunction> {
    let n = parts
        .first()
        .map(|(m, _)| m.ground_size())
        .ok_or_else(|| Error::domain("mrs needs at least one matroid"))?;
    if parts.iter().any(|(m, _)| m.ground_size() != n) {
        return Err(Error::domain("all matroids must share the ground set"));
    }
    check_size(n)?;
    Ok(SetFunction::from_fn(n, |s| {
        parts.iter().map(|(m, w)| w * int(m.rank(s) as i64)).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::approximation_ratio;
    use crate::classes::{is_gs, is_subadditive, is_submodular, is_xos};

    fn s(items: &[usize]) -> Subset {
        Subset::from_items(items)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn ba_examples() {
        let f = ba(2, 1).unwrap();
        assert_eq!(f.m(), 3);
        assert_eq!(*f.value(s(&[0])), int(1));
        assert_eq!(*f.value(s(&[1])), rat(1, 2));
        assert_eq!(*f.value(f.full()), int(1));
        assert_eq!(*f.value(s(&[1, 2])), int(1));
        assert_eq!(f.names().unwrap(), &["a", "b1", "b2"]);
        let g = ba(3, 1).unwrap();
        assert_eq!(g.m(), 4);
        assert_eq!(*g.value(s(&[3])), rat(1, 3));
        assert_eq!(ba(3, 2).unwrap().m(), 13);
        assert!(ba(5, 2).is_err());
        assert!(ba(1, 1).is_err());
    }

    #[test]
    fn ba_classes_are_levels() {
        for (k, d) in [(2, 1), (2, 2), (3, 1)] {
            let f = ba(k, d).unwrap();
            assert_eq!(f.symmetry_classes().classes(), ba_levels(k, d).as_slice());
        }
    }

    #[test]
    fn simple_families() {
        let f = budget_additive(&ints(&[1, 1, 2]), &int(2));
        assert_eq!(*f.value(s(&[0, 2])), int(2));
        assert_eq!(*f.value(s(&[0, 1])), int(2));
        let u = unit_demand(&[int(5), int(5), int(5)]);
        assert!(u.subsets().skip(1).all(|t| *u.value(t) == int(5)));
        assert_eq!(*additive(&ints(&[3, 1])).value(s(&[0, 1])), int(4));
    }

    #[test]
    fn threshold_examples() {
        let h = threshold_gs(&ints(&[5, 3]), &ints(&[4, 2])).unwrap();
        assert_eq!(*h.value(s(&[0])), int(4));
        assert_eq!(*h.value(s(&[1])), int(3));
        assert_eq!(*h.value(s(&[0, 1])), int(6));
        let g = ints(&[2, 7, 1]);
        assert_eq!(threshold_gs(&g, &ints(&[100, 100, 100])).unwrap(), additive(&g));
        assert!(threshold_gs(&g, &ints(&[1, 2, 3])).is_err());
        assert!(threshold_gs(&g, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn threshold_exchange_inequality() {
        // μ(j, r) = min(g_j, T(r)); for g_j >= g_k the exchange inequality holds.
        let t = ints(&[9, 6, 6, 2, 1]);
        let gs = ints(&[10, 7, 6, 3, 2, 0]);
        let mu = |g: &Rational, r: usize| g.clone().min(t[r].clone());
        for r in 0..t.len() - 1 {
            for (x, gj) in gs.iter().enumerate() {
                for gk in &gs[x..] {
                    assert!(mu(gj, r) + mu(gk, r + 1) >= mu(gk, r) + mu(gj, r + 1));
                }
            }
        }
    }

    #[test]
    fn approx2_examples() {
        let g = approx2_gs(2).unwrap();
        assert_eq!(*g.value(s(&[0])), rat(3, 4));
        assert_eq!(*g.value(s(&[1, 2])), rat(3, 4));
        assert_eq!(*g.value(s(&[0, 1])), int(1));
        assert_eq!(*g.value(s(&[1])), rat(1, 2));
        for k in 2..=4 {
            let g = approx2_gs(k).unwrap();
            let f = ba(k, 1).unwrap();
            let rho = rat(2 * k as i64, k as i64 + 1);
            assert!(g.le_pointwise(&f));
            assert!(f.le_pointwise(&g.scale(&rho)));
            assert_eq!(approximation_ratio(&g, &f).unwrap().ratio, Some(rho));
        }
    }

    #[test]
    fn ba_log_sandwich() {
        let f = ba(2, 1).unwrap();
        let h = ba_log_approx(&f).unwrap();
        assert!(is_gs(&h));
        // m = 3: L = 2, T = 3, so f <= 6 h.
        assert!(h.le_pointwise(&f));
        assert!(f.le_pointwise(&h.scale(&int(6))));
        let single = budget_additive(&vec![rat(1, 2); 4], &int(1));
        let h = ba_log_approx(&single).unwrap();
        assert!(h.le_pointwise(&single));
        assert!(single.le_pointwise(&h.scale(&int(6))));
        assert!(ba_log_approx(&xos_grid(2).unwrap()).is_err());
    }

    #[test]
    fn xos_grid_examples() {
        let f = xos_grid(2).unwrap();
        assert_eq!(*f.value(s(&[0, 1])), int(2));
        assert_eq!(*f.value(s(&[0, 2])), int(1));
        assert!(is_xos(&f).unwrap());
        assert!(!is_submodular(&f));
        let g = xos_grid_submod_approx(2).unwrap();
        assert!(is_submodular(&g));
        assert_eq!(approximation_ratio(&g, &f).unwrap().ratio, Some(rat(3, 2)));
        let g3 = xos_grid_submod_approx(3).unwrap();
        let f3 = xos_grid(3).unwrap();
        assert!(is_submodular(&g3));
        assert_eq!(approximation_ratio(&g3, &f3).unwrap().ratio, Some(rat(5, 2)));
    }

    #[test]
    fn coverage_examples() {
        let f = budget_additive(&ints(&[1, 1, 1, 2]), &int(2));
        let rho = coverage_ratio_bound();
        let c = coverage_approx_ba(&f, 40, 7, &rho).unwrap();
        assert_eq!(*c.g.value(s(&[3])), &rho * int(2));
        assert!(is_subadditive(&c.g));
        assert!(c.g.values().iter().all(|v| *v <= &rho * int(2)));
        assert_eq!(coverage_approx_ba(&f, 40, 7, &rho).unwrap(), c);
        assert!(coverage_approx_ba(&f, 41, 7, &rho).is_err());
        assert!(coverage_approx_ba(&f, 40, 7, &rat(3, 2)).is_err());
    }

    #[test]
    fn matroid_axioms() {
        assert!(Matroid::uniform(4, 2).is_ok());
        // {0,1} and {2} independent, but {2} cannot be extended from {0,1}.
        let bad = Matroid::new(3, [0u32, 1, 2, 4, 3].map(Subset::from_mask));
        assert!(bad.is_err());
        let not_dc = Matroid::new(2, [0u32, 3].map(Subset::from_mask));
        assert!(not_dc.is_err());
        assert!(Matroid::new(2, [1u32].map(Subset::from_mask)).is_err());
        let tri = Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.rank(Subset::full(3)), 2);
        let p = Matroid::partition(4, &[s(&[0, 1]), s(&[2, 3])], &[1, 2]).unwrap();
        assert_eq!(p.rank(Subset::full(4)), 3);
        let json = serde_json::to_string(&p).unwrap();
        let back: Matroid = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn matching_families() {
        let diag = BipartiteWeights::new(
            vec![
                vec![Some(int(3)), None, None],
                vec![None, Some(int(1)), None],
                vec![None, None, Some(int(2))],
            ],
            3,
        )
        .unwrap();
        assert_eq!(oxs(&diag).unwrap(), additive(&ints(&[3, 1, 2])));
        let u = Matroid::uniform(4, 2).unwrap();
        let f = wmrf(&u, &ints(&[1, 1, 1, 1])).unwrap();
        assert!(f.subsets().all(|t| *f.value(t) == int(t.len().min(2) as i64)));
        let free = Matroid::uniform(3, 3).unwrap();
        assert_eq!(rado(&diag, &free).unwrap(), oxs(&diag).unwrap());
        let r = rado(&diag, &Matroid::uniform(3, 1).unwrap()).unwrap();
        assert_eq!(r, unit_demand(&ints(&[3, 1, 2])));
        assert!(is_gs(&r));
        let m = mrs(&[(u.clone(), int(2)), (Matroid::uniform(4, 1).unwrap(), int(1))]).unwrap();
        assert_eq!(*m.value(Subset::full(4)), int(5));
        assert!(is_submodular(&m));
    }

    #[test]
    fn example_values() {
        let g = example_not_submodular();
        assert_eq!(*g.value(s(&[1, 3])), int(4));
        assert_eq!(*g.value(s(&[0, 1])), int(5));
        assert_eq!(g.names().unwrap(), &["a", "b", "c", "d"]);
    }
}
