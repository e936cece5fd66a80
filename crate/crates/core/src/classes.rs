//! Exhaustive membership checks for valuation classes, plus demand oracles.
//!
//! Every `*_violation` function returns `None` when the property holds and a
//! concrete [`Witness`] otherwise. Scans run in parallel and always report the
//! violation with the lowest base-set mask, so results are deterministic.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{Error, Result};
use crate::lp::{self, Constraint, LinExpr, LpProblem};
use crate::rational::Rational;
use crate::setfn::{SetFunction, Subset};

/// A concrete violation of a class property, re-checkable against the function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `f(∅) != 0`.
    Normalized,
    /// `f(S ∪ {item}) < f(S)`.
    Monotone { set: Subset, item: usize },
    /// `f(j | S ∪ {k}) > f(j | S)`.
    Submodular { set: Subset, j: usize, k: usize },
    /// The largest of the three pair-sums over `{i, j, k}` at `S` is unique.
    Triplet { set: Subset, i: usize, j: usize, k: usize },
    /// Same-class items `a`, `b` with `f(a | S ∪ {c}) < f(a | S ∪ {b})`.
    WeakSubstitutes { set: Subset, a: usize, b: usize, c: usize },
    /// `f(S) != Σ_{j∈S} f(j)`.
    Additive { set: Subset },
    /// `f(S) != min(f(M), Σ_{j∈S} f(j))`.
    BudgetAdditive { set: Subset },
    /// No nonnegative additive function supported on `set` reaches `f(set)`
    /// while staying below `f`.
    Xos { set: Subset },
    /// `f(S ∪ T) > f(S) + f(T)`.
    Subadditive { s: Subset, t: Subset },
    /// A single-item marginal outside `{0, c}` for every common `c`.
    MrfScale { set: Subset, item: usize },
}

impl Witness {
    /// True iff the witness really exhibits a violation in `f`.
    pub fn confirms(&self, f: &SetFunction) -> Result<bool> {
        Ok(match *self {
            Witness::Normalized => !f.value(Subset::EMPTY).is_zero(),
            Witness::Monotone { set, item } => !set.contains(item) && f.value(set.with(item)) < f.value(set),
            Witness::Submodular { set, j, k } => {
                j != k
                    && !set.contains(j)
                    && !set.contains(k)
                    && f.item_marginal(j, set.with(k)) > f.item_marginal(j, set)
            }
            Witness::Triplet { set, i, j, k } => {
                let t = Subset::from_items(&[i, j, k]);
                t.len() == 3 && t.is_disjoint(set) && unique_max_pair_sum(f, set, i, j, k)
            }
            Witness::WeakSubstitutes { set, a, b, c } => {
                let t = Subset::from_items(&[a, b, c]);
                t.len() == 3
                    && t.is_disjoint(set)
                    && f.symmetry_classes().same_class(a, b)
                    && f.item_marginal(a, set.with(c)) < f.item_marginal(a, set.with(b))
            }
            Witness::Additive { set } => *f.value(set) != singleton_sum(f, set),
            Witness::BudgetAdditive { set } => {
                let fit = singleton_sum(f, set).min(f.value(f.full()).clone());
                *f.value(set) != fit
            }
            Witness::Xos { set } => !xos_clause_exists(f, set)?,
            Witness::Subadditive { s, t } => f.value(s.union(t)) > &(f.value(s) + f.value(t)),
            Witness::MrfScale { .. } => mrf_scale(f).is_none(),
        })
    }
}

fn singleton_sum(f: &SetFunction, s: Subset) -> Rational {
    s.items().map(|j| f.value(Subset::singleton(j)).clone()).sum()
}

/// The three pair-sums `f(S∪jk)+f(S∪i)`, `f(S∪ik)+f(S∪j)`, `f(S∪ij)+f(S∪k)`.
/// Differences of these equal differences of the marginal forms.
fn pair_sums(f: &SetFunction, s: Subset, i: usize, j: usize, k: usize) -> [Rational; 3] {
    let v = |items: &[usize]| f.value(items.iter().fold(s, |acc, &x| acc.with(x)));
    [v(&[j, k]) + v(&[i]), v(&[i, k]) + v(&[j]), v(&[i, j]) + v(&[k])]
}

fn unique_max_pair_sum(f: &SetFunction, s: Subset, i: usize, j: usize, k: usize) -> bool {
    let t = pair_sums(f, s, i, j, k);
    let max = t.iter().max().expect("three terms");
    t.iter().filter(|x| *x == max).count() == 1
}

/// First violation in increasing mask order of `S`.
fn scan<F>(f: &SetFunction, per_set: F) -> Option<Witness>
where
    F: Fn(Subset) -> Option<Witness> + Sync,
{
    let n = 1u32 << f.m();
    (0..n)
        .into_par_iter()
        .with_min_len(64)
        .find_map_first(|mask| per_set(Subset::from_mask(mask)))
}

fn outside(f: &SetFunction, s: Subset) -> Vec<usize> {
    f.full().difference(s).items().collect()
}

pub fn normalized_violation(f: &SetFunction) -> Option<Witness> {
    (!f.value(Subset::EMPTY).is_zero()).then_some(Witness::Normalized)
}

/// Single-item increments suffice for monotonicity.
pub fn monotone_violation(f: &SetFunction) -> Option<Witness> {
    scan(f, |s| {
        outside(f, s)
            .into_iter()
            .find(|&j| f.value(s.with(j)) < f.value(s))
            .map(|item| Witness::Monotone { set: s, item })
    })
}

pub fn is_monotone(f: &SetFunction) -> bool {
    monotone_violation(f).is_none()
}

/// Local form: `f(j | S∪k) <= f(j | S)` for all `S` and distinct `j, k ∉ S`.
pub fn submodular_violation(f: &SetFunction) -> Option<Witness> {
    scan(f, |s| {
        let out = outside(f, s);
        let fs = f.value(s);
        for (x, &j) in out.iter().enumerate() {
            let fj = f.value(s.with(j));
            for &k in &out[x + 1..] {
                if f.value(s.with(j).with(k)) + fs > fj + f.value(s.with(k)) {
                    return Some(Witness::Submodular { set: s, j, k });
                }
            }
        }
        None
    })
}

pub fn is_submodular(f: &SetFunction) -> bool {
    submodular_violation(f).is_none()
}

/// Triplet condition alone, without the submodularity part of GS.
pub fn triplet_violation(f: &SetFunction) -> Option<Witness> {
    scan(f, |s| {
        let out = outside(f, s);
        for (x, &i) in out.iter().enumerate() {
            for (y, &j) in out.iter().enumerate().skip(x + 1) {
                for &k in &out[y + 1..] {
                    if unique_max_pair_sum(f, s, i, j, k) {
                        return Some(Witness::Triplet { set: s, i, j, k });
                    }
                }
            }
        }
        None
    })
}

/// GS as submodularity plus the triplet condition.
pub fn gs_violation(f: &SetFunction) -> Option<Witness> {
    submodular_violation(f).or_else(|| triplet_violation(f))
}

pub fn is_gs(f: &SetFunction) -> bool {
    gs_violation(f).is_none()
}

/// Every pair of items in a common symmetry class must be weak substitutes.
pub fn sws_violation(f: &SetFunction) -> Option<Witness> {
    let classes = f.symmetry_classes();
    let mut pairs = Vec::new();
    for class in classes.classes() {
        let items: Vec<usize> = class.items().collect();
        for (x, &a) in items.iter().enumerate() {
            for &b in &items[x + 1..] {
                pairs.push((a, b));
                pairs.push((b, a));
            }
        }
    }
    if pairs.is_empty() {
        return None;
    }
    scan(f, |s| {
        for &(a, b) in &pairs {
            if s.contains(a) || s.contains(b) {
                continue;
            }
            let against_b = f.item_marginal(a, s.with(b));
            for c in outside(f, s) {
                if c != a && c != b && f.item_marginal(a, s.with(c)) < against_b {
                    return Some(Witness::WeakSubstitutes { set: s, a, b, c });
                }
            }
        }
        None
    })
}

pub fn is_sws(f: &SetFunction) -> bool {
    sws_violation(f).is_none()
}

pub fn additive_violation(f: &SetFunction) -> Option<Witness> {
    scan(f, |s| {
        (*f.value(s) != singleton_sum(f, s)).then_some(Witness::Additive { set: s })
    })
}

pub fn is_additive(f: &SetFunction) -> bool {
    additive_violation(f).is_none()
}

/// Values and budget of a budget-additive function.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetAdditiveFit {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub values: Vec<Rational>,
    #[serde_as(as = "DisplayFromStr")]
    pub budget: Rational,
}

/// Fits `v_j = f(j)`, `B = f(M)` and checks `f(S) = min(B, Σ_{j∈S} v_j)`.
pub fn budget_additive_violation(f: &SetFunction) -> Option<Witness> {
    let budget = f.value(f.full());
    scan(f, |s| {
        let fit = singleton_sum(f, s).min(budget.clone());
        (*f.value(s) != fit).then_some(Witness::BudgetAdditive { set: s })
    })
}

pub fn as_budget_additive(f: &SetFunction) -> Option<BudgetAdditiveFit> {
    if budget_additive_violation(f).is_some() {
        return None;
    }
    Some(BudgetAdditiveFit {
        values: (0..f.m()).map(|j| f.value(Subset::singleton(j)).clone()).collect(),
        budget: f.value(f.full()).clone(),
    })
}

/// Whether some additive `a >= 0` supported on `s` has `a(S) >= f(S)` and
/// `a(T) <= f(T)` for every `T`.
///
/// Since `a(T) = a(T ∩ s)`, the upper constraints reduce to
/// `a(U) <= min{f(T) : T ∩ s = U}` for `U ⊆ s`.
fn xos_clause_exists(f: &SetFunction, s: Subset) -> Result<bool> {
    let items: Vec<usize> = s.items().collect();
    let var_of = |u: Subset| -> LinExpr {
        let mut e = LinExpr::zero();
        for (v, &j) in items.iter().enumerate() {
            if u.contains(j) {
                e.add_term(v, Rational::from_integer(1.into()));
            }
        }
        e
    };
    let rest = f.full().difference(s);
    let mut constraints = Vec::new();
    for (v, _) in items.iter().enumerate() {
        constraints.push(Constraint::ge(LinExpr::var(v), LinExpr::zero()));
    }
    for u in s.subsets() {
        if u.is_empty() {
            continue;
        }
        let cap = rest
            .subsets()
            .map(|r| f.value(u.union(r)))
            .min()
            .expect("nonempty family")
            .clone();
        constraints.push(Constraint::le(var_of(u), LinExpr::constant(cap)));
    }
    constraints.push(Constraint::ge(var_of(s), LinExpr::constant(f.value(s).clone())));
    let p = LpProblem::feasibility(items.len(), constraints);
    Ok(lp::solve(&p)?.is_feasible())
}

/// XOS membership with nonnegative clauses, one LP per set.
pub fn xos_violation(f: &SetFunction) -> Result<Option<Witness>> {
    if f.value(Subset::EMPTY).is_positive() || f.values().iter().any(|v| v.is_negative()) {
        // a >= 0 cannot reach below zero, and f(∅) > 0 is out of reach too.
        let set = f
            .subsets()
            .find(|&s| f.value(s).is_negative() || (s.is_empty() && f.value(s).is_positive()))
            .expect("violation located above");
        return Ok(Some(Witness::Xos { set }));
    }
    if is_monotone(f) && is_submodular(f) {
        return Ok(None);
    }
    let results: Vec<Result<Option<Witness>>> = (0..1u32 << f.m())
        .into_par_iter()
        .map(|mask| {
            let s = Subset::from_mask(mask);
            Ok((!xos_clause_exists(f, s)?).then_some(Witness::Xos { set: s }))
        })
        .collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn is_xos(f: &SetFunction) -> Result<bool> {
    Ok(xos_violation(f)?.is_none())
}

/// Disjoint pairs suffice when `f` is monotone; all pairs are scanned otherwise.
pub fn subadditive_violation(f: &SetFunction) -> Option<Witness> {
    let full = f.full();
    let monotone = is_monotone(f);
    scan(f, |s| {
        let pool = if monotone { full.difference(s) } else { full };
        pool.subsets()
            .find(|&t| f.value(s.union(t)) > &(f.value(s) + f.value(t)))
            .map(|t| Witness::Subadditive { s, t })
    })
}

pub fn is_subadditive(f: &SetFunction) -> bool {
    subadditive_violation(f).is_none()
}

/// The common nonzero marginal `c` of a submodular function whose single-item
/// marginals all lie in `{0, c}`; `Some(0)` for the zero function.
pub fn mrf_scale(f: &SetFunction) -> Option<Rational> {
    if !is_submodular(f) {
        return None;
    }
    let mut c: Option<Rational> = None;
    for s in f.subsets() {
        for j in outside(f, s) {
            let d = f.item_marginal(j, s);
            if d.is_zero() {
                continue;
            }
            match &c {
                None if d.is_positive() => c = Some(d),
                Some(c0) if *c0 == d => {}
                _ => return None,
            }
        }
    }
    Some(c.unwrap_or_else(Rational::zero))
}

/// Minimum over `S` and role assignments of
/// `max{f(ik|S)+f(j|S), f(jk|S)+f(i|S)} / (f(ij|S)+f(k|S))`, skipping zero
/// denominators. Returns 1 when no term is defined.
pub fn local_approx_ratio(f: &SetFunction) -> Result<Rational> {
    if let Some(w) = submodular_violation(f) {
        return Err(Error::domain(format!("function is not submodular: {w:?}")));
    }
    let per_set: Vec<Option<Rational>> = (0..1u32 << f.m())
        .into_par_iter()
        .map(|mask| {
            let s = Subset::from_mask(mask);
            let out = outside(f, s);
            let fs2 = f.value(s) * Rational::from_integer(2.into());
            let mut best: Option<Rational> = None;
            for (x, &i) in out.iter().enumerate() {
                for (y, &j) in out.iter().enumerate().skip(x + 1) {
                    for &k in &out[y + 1..] {
                        let t = pair_sums(f, s, i, j, k).map(|v| v - &fs2);
                        for r in 0..3 {
                            if t[r].is_zero() {
                                continue;
                            }
                            let other = t[(r + 1) % 3].clone().max(t[(r + 2) % 3].clone());
                            let q = other / &t[r];
                            if best.as_ref().is_none_or(|b| q < *b) {
                                best = Some(q);
                            }
                        }
                    }
                }
            }
            best
        })
        .collect();
    Ok(per_set
        .into_iter()
        .flatten()
        .min()
        .unwrap_or_else(|| Rational::from_integer(1.into())))
}

/// Nonnegative item prices.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PriceVector(#[serde_as(as = "Vec<DisplayFromStr>")] Vec<Rational>);

impl PriceVector {
    pub fn new(prices: Vec<Rational>) -> Result<Self> {
        if let Some(j) = prices.iter().position(|p| p.is_negative()) {
            return Err(Error::domain(format!("price of item {j} is negative")));
        }
        Ok(PriceVector(prices))
    }

    pub fn prices(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn cost(&self, s: Subset) -> Rational {
        s.items().map(|j| self.0[j].clone()).sum()
    }

    fn check_len(&self, f: &SetFunction) -> Result<()> {
        if self.0.len() != f.m() {
            return Err(Error::domain(format!("{} prices for {} items", self.0.len(), f.m())));
        }
        Ok(())
    }
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandResult {
    #[serde_as(as = "DisplayFromStr")]
    pub best_utility: Rational,
    /// All utility-maximizing sets, in increasing mask order.
    pub demanded: Vec<Subset>,
}

pub fn utility(f: &SetFunction, p: &PriceVector, s: Subset) -> Rational {
    f.value(s) - p.cost(s)
}

pub fn demand_bruteforce(f: &SetFunction, p: &PriceVector) -> Result<DemandResult> {
    p.check_len(f)?;
    let mut best = Rational::zero();
    let mut demanded = Vec::new();
    for s in f.subsets() {
        let u = utility(f, p, s);
        if demanded.is_empty() || u > best {
            best = u;
            demanded = vec![s];
        } else if u == best {
            demanded.push(s);
        }
    }
    Ok(DemandResult {
        best_utility: best,
        demanded,
    })
}

/// Adds the item of highest strictly positive marginal utility (lowest index
/// on ties) until none remains.
pub fn demand_greedy(f: &SetFunction, p: &PriceVector) -> Result<(Subset, Rational)> {
    p.check_len(f)?;
    let mut s = Subset::EMPTY;
    loop {
        let mut pick: Option<(usize, Rational)> = None;
        for j in outside(f, s) {
            let gain = f.item_marginal(j, s) - &p.prices()[j];
            if gain.is_positive() && pick.as_ref().is_none_or(|(_, g)| gain > *g) {
                pick = Some((j, gain));
            }
        }
        match pick {
            Some((j, _)) => s = s.with(j),
            None => break,
        }
    }
    Ok((s, utility(f, p, s)))
}

/// Class memberships of a valuation (normalized, monotone).
///
/// Each class flag includes the valuation requirement, so the containments
/// `gs ⇒ submodular ⇒ xos ⇒ subadditive` hold for every report. A false flag
/// has an entry in `witnesses` under the flag's name.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub normalized: bool,
    pub monotone: bool,
    pub additive: bool,
    pub budget_additive: bool,
    pub submodular: bool,
    pub gs: bool,
    pub sws: bool,
    pub xos: bool,
    pub subadditive: bool,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub mrf_scaled: Option<Rational>,
    pub witnesses: std::collections::BTreeMap<String, Witness>,
}

impl ClassReport {
    pub fn check(f: &SetFunction) -> Result<ClassReport> {
        let mut witnesses = std::collections::BTreeMap::new();
        let valuation_witness = normalized_violation(f).or_else(|| monotone_violation(f));
        let mut flag = |name: &str, own: Option<Witness>| -> bool {
            match valuation_witness.clone().or(own) {
                Some(w) => {
                    witnesses.insert(name.to_string(), w);
                    false
                }
                None => true,
            }
        };
        let normalized = normalized_violation(f).is_none();
        let monotone = is_monotone(f);
        let additive = flag("additive", additive_violation(f));
        let budget_additive = flag("budget_additive", budget_additive_violation(f));
        let submod_w = submodular_violation(f);
        let submodular = flag("submodular", submod_w.clone());
        let gs = flag("gs", submod_w.or_else(|| triplet_violation(f)));
        let sws = flag("sws", sws_violation(f));
        let xos = flag("xos", xos_violation(f)?);
        let subadditive = flag("subadditive", subadditive_violation(f));
        if let Some(w) = normalized_violation(f) {
            witnesses.insert("normalized".into(), w);
        }
        if let Some(w) = monotone_violation(f) {
            witnesses.insert("monotone".into(), w);
        }
        Ok(ClassReport {
            normalized,
            monotone,
            additive,
            budget_additive,
            submodular,
            gs,
            sws,
            xos,
            subadditive,
            mrf_scaled: if monotone { mrf_scale(f) } else { None },
            witnesses,
        })
    }

    /// `gs ⇒ submodular ⇒ xos ⇒ subadditive`.
    pub fn chain_consistent(&self) -> bool {
        (!self.gs || self.submodular) && (!self.submodular || self.xos) && (!self.xos || self.subadditive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        additive, approx2_gs, ba, budget_additive, example_not_submodular, unit_demand, xos_grid,
    };
    use crate::rational::{int, rat};
    use crate::setfn::Subset;

    fn s(items: &[usize]) -> Subset {
        Subset::from_items(items)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn monotone_examples() {
        assert!(is_monotone(&ba(2, 1).unwrap()));
        assert!(is_monotone(&example_not_submodular()));
        let f = SetFunction::from_values(2, ints(&[0, 1, 0, 0])).unwrap();
        let w = monotone_violation(&f).unwrap();
        assert_eq!(w, Witness::Monotone { set: s(&[0]), item: 1 });
        assert!(w.confirms(&f).unwrap());
    }

    #[test]
    fn submodular_and_gs_on_the_example() {
        let g = example_not_submodular();
        assert!(is_submodular(&g));
        let w = gs_violation(&g).unwrap();
        assert!(matches!(w, Witness::Triplet { .. }));
        assert!(w.confirms(&g).unwrap());
        assert!(is_submodular(&additive(&ints(&[1, 5, 2]))));
    }

    #[test]
    fn gs_positive_examples() {
        for k in 2..=4 {
            assert!(is_gs(&approx2_gs(k).unwrap()), "k={k}");
        }
        assert!(is_gs(&unit_demand(&ints(&[3, 1, 4, 1]))));
    }

    #[test]
    fn sws_examples() {
        let f = budget_additive(&ints(&[2, 1, 1]), &int(2));
        let w = sws_violation(&f).unwrap();
        assert!(w.confirms(&f).unwrap());
        match w {
            Witness::WeakSubstitutes { a, b, c, .. } => {
                assert_eq!(s(&[a, b]), s(&[1, 2]));
                assert_eq!(c, 0);
            }
            _ => unreachable!(),
        }
        assert!(is_sws(&additive(&ints(&[1, 2, 3]))));
        assert!(!is_sws(&ba(2, 1).unwrap()));
        assert!(is_sws(&approx2_gs(2).unwrap()));
    }

    #[test]
    fn budget_additive_fits() {
        let fit = as_budget_additive(&ba(2, 1).unwrap()).unwrap();
        assert_eq!(fit.values, vec![int(1), rat(1, 2), rat(1, 2)]);
        assert_eq!(fit.budget, int(1));
        let fit = as_budget_additive(&additive(&ints(&[3, 4]))).unwrap();
        assert_eq!(fit.budget, int(7));
        assert!(as_budget_additive(&xos_grid(2).unwrap()).is_none());
    }

    #[test]
    fn xos_examples() {
        assert!(is_xos(&xos_grid(2).unwrap()).unwrap());
        assert!(!is_submodular(&xos_grid(2).unwrap()));
        let f = SetFunction::from_fn(3, |t| {
            int(((t.mask() & 1).count_ones()).max((t.mask() & 6).count_ones()) as i64)
        });
        assert!(is_xos(&f).unwrap());
        // f(ab) = 2 with f(a) = f(b) = 1 exceeds every additive clause.
        let g = SetFunction::from_values(2, ints(&[0, 1, 1, 3])).unwrap();
        let w = xos_violation(&g).unwrap().unwrap();
        assert_eq!(w, Witness::Xos { set: s(&[0, 1]) });
        assert!(w.confirms(&g).unwrap());
    }

    #[test]
    fn subadditive_examples() {
        assert!(is_subadditive(&additive(&ints(&[1, 2]))));
        let g = SetFunction::from_values(2, ints(&[0, 1, 1, 3])).unwrap();
        let w = subadditive_violation(&g).unwrap();
        assert!(w.confirms(&g).unwrap());
    }

    #[test]
    fn mrf_scale_examples() {
        let u = SetFunction::from_fn(3, |t| int(t.len().min(2) as i64));
        assert_eq!(mrf_scale(&u), Some(int(1)));
        assert_eq!(mrf_scale(&u.scale(&int(4))), Some(int(4)));
        assert_eq!(mrf_scale(&ba(2, 1).unwrap()), None);
        assert_eq!(mrf_scale(&SetFunction::zero(2)), Some(int(0)));
    }

    #[test]
    fn local_ratio_examples() {
        let f = budget_additive(&ints(&[1, 1, 2]), &int(2));
        assert_eq!(local_approx_ratio(&f).unwrap(), rat(3, 4));
        assert_eq!(local_approx_ratio(&approx2_gs(3).unwrap()).unwrap(), int(1));
        assert!(local_approx_ratio(&xos_grid(2).unwrap()).is_err());
    }

    #[test]
    fn demand_examples() {
        let f = additive(&ints(&[3, 1]));
        let p = PriceVector::new(ints(&[1, 2])).unwrap();
        let d = demand_bruteforce(&f, &p).unwrap();
        assert_eq!(d.best_utility, int(2));
        assert_eq!(d.demanded, vec![s(&[0])]);
        assert_eq!(demand_greedy(&f, &p).unwrap(), (s(&[0]), int(2)));

        let g = ba(2, 1).unwrap();
        let zero = PriceVector::new(vec![Rational::zero(); 3]).unwrap();
        assert!(demand_bruteforce(&g, &zero).unwrap().demanded.contains(&g.full()));

        let high = PriceVector::new(ints(&[5, 5, 5])).unwrap();
        assert_eq!(demand_greedy(&g, &high).unwrap(), (Subset::EMPTY, int(0)));
        assert!(PriceVector::new(vec![int(-1)]).is_err());
        assert!(demand_greedy(&g, &p).is_err());
    }

    #[test]
    fn report_chain_and_witnesses() {
        let g = example_not_submodular();
        let r = ClassReport::check(&g).unwrap();
        assert!(r.monotone && r.submodular && !r.gs && r.xos && r.subadditive);
        assert!(r.chain_consistent());
        assert!(r.witnesses["gs"].confirms(&g).unwrap());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"kind\":\"triplet\""));

        let bad = SetFunction::from_values(2, ints(&[0, 2, 1, 1])).unwrap();
        let r = ClassReport::check(&bad).unwrap();
        assert!(!r.monotone && !r.gs && !r.subadditive);
        assert!(r.chain_consistent());
        for w in r.witnesses.values() {
            assert!(w.confirms(&bad).unwrap());
        }
    }
}
