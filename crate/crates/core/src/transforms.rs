//! Operations on valuations: symmetrizations, convolution, endowment, concave
//! composition and induction by bipartite networks.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{downward_max, for_each_matching};
use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, Rational};
use crate::setfn::{SetFunction, Subset, MAX_ITEMS};

fn check_item(f: &SetFunction, i: usize) -> Result<()> {
    if i >= f.m() {
        return Err(Error::domain(format!("item {i} out of range for {} items", f.m())));
    }
    Ok(())
}

fn check_pair(f: &SetFunction, i: usize, j: usize) -> Result<()> {
    check_item(f, i)?;
    check_item(f, j)?;
    if i == j {
        return Err(Error::domain("the two items must differ"));
    }
    Ok(())
}

fn check_same_m(f: &SetFunction, g: &SetFunction) -> Result<()> {
    if f.m() != g.m() {
        return Err(Error::domain(format!(
            "ground sets differ: {} vs {} items",
            f.m(),
            g.m()
        )));
    }
    Ok(())
}

/// `out(Si) = out(Sj) = max(g(Si), g(Sj))` for `S` avoiding `i, j`; all other
/// values unchanged.
pub fn max_symmetrize(g: &SetFunction, i: usize, j: usize) -> Result<SetFunction> {
    check_pair(g, i, j)?;
    Ok(g.map(|s, v| {
        if s.contains(i) != s.contains(j) {
            let base = s.without(i).without(j);
            g.value(base.with(i)).max(g.value(base.with(j))).clone()
        } else {
            v.clone()
        }
    }))
}

/// `q(Sy) = max(g(Sx), g(Sy))` for `S` avoiding `x, y`; all other values
/// unchanged.
pub fn partial_symmetrize(g: &SetFunction, x: usize, y: usize) -> Result<SetFunction> {
    check_pair(g, x, y)?;
    Ok(g.map(|s, v| {
        if s.contains(y) && !s.contains(x) {
            v.max(g.value(s.without(y).with(x))).clone()
        } else {
            v.clone()
        }
    }))
}

/// One max-symmetrization step of [`symmetrize_to_fixpoint_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizationStep {
    pub pair: (usize, usize),
    pub potential: Rational,
}

/// Max-symmetrizes the lexicographically first pair that is symmetric in `f`
/// but not in the current function, until no such pair remains.
pub fn symmetrize_to_fixpoint(g: &SetFunction, f: &SetFunction) -> Result<SetFunction> {
    Ok(symmetrize_to_fixpoint_traced(g, f)?.0)
}

/// As [`symmetrize_to_fixpoint`], also returning each step with the potential
/// `Σ_S g_t(S)` after it.
pub fn symmetrize_to_fixpoint_traced(
    g: &SetFunction,
    f: &SetFunction,
) -> Result<(SetFunction, Vec<SymmetrizationStep>)> {
    check_same_m(f, g)?;
    let classes = f.symmetry_classes();
    let pairs: Vec<(usize, usize)> = (0..f.m())
        .flat_map(|i| (i + 1..f.m()).map(move |j| (i, j)))
        .filter(|&(i, j)| classes.same_class(i, j))
        .collect();
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| !cur.is_pair_symmetric(i, j)) {
        cur = max_symmetrize(&cur, i, j)?;
        steps.push(SymmetrizationStep {
            pair: (i, j),
            potential: cur.potential(),
        });
    }
    Ok((cur, steps))
}

/// `(f ⋆ g)(S) = max_{T ⊆ S} f(T) + g(S ∖ T)`.
pub fn convolve(f: &SetFunction, g: &SetFunction) -> Result<SetFunction> {
    check_same_m(f, g)?;
    let values: Vec<Rational> = (0..1u32 << f.m())
        .into_par_iter()
        .map(|mask| {
            let s = Subset::from_mask(mask);
            s.subsets()
                .map(|t| f.value(t) + g.value(s.difference(t)))
                .max()
                .expect("at least the empty split")
        })
        .collect();
    Ok(SetFunction::from_values(f.m(), values)?.set_names(f.names().map(<[String]>::to_vec)))
}

/// Left fold of binary convolutions: the welfare function of the bidders.
pub fn convolve_all(fs: &[SetFunction]) -> Result<SetFunction> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::domain("need at least one function"))?;
    rest.iter().try_fold(first.clone(), |acc, f| convolve(&acc, f))
}

pub fn sum(f: &SetFunction, g: &SetFunction) -> Result<SetFunction> {
    check_same_m(f, g)?;
    Ok(f.map(|s, v| v + g.value(s)))
}

pub fn average(f: &SetFunction, g: &SetFunction) -> Result<SetFunction> {
    Ok(sum(f, g)?.scale(&Rational::new(1.into(), 2.into())))
}

/// `out(S) = f(S ∪ X) - f(X)` on the items outside `X`, renumbered in order.
pub fn endow(f: &SetFunction, x: Subset) -> Result<SetFunction> {
    if !x.is_subset_of(f.full()) {
        return Err(Error::domain("endowment must be a subset of the items"));
    }
    let rest = f.full().difference(x);
    if rest.is_empty() {
        return Err(Error::domain("endowing every item leaves an empty ground set"));
    }
    let base = f.value(x);
    let shifted = f.map(|s, v| {
        if s.is_subset_of(rest) {
            f.value(s.union(x)) - base
        } else {
            v.clone()
        }
    });
    shifted.restrict(rest)
}

/// Monotone concave piecewise-linear function with `c(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcaveFn {
    breakpoints: Vec<(Rational, Rational)>,
}

impl ConcaveFn {
    /// Breakpoints must start at `(0, 0)`, have strictly increasing `x`,
    /// non-decreasing `y` and non-increasing slopes. Beyond the last
    /// breakpoint the final slope continues.
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::domain("need at least two breakpoints"));
        }
        if !breakpoints[0].0.is_zero() || !breakpoints[0].1.is_zero() {
            return Err(Error::domain("first breakpoint must be (0, 0)"));
        }
        let mut last_slope: Option<Rational> = None;
        for w in breakpoints.windows(2) {
            let (dx, dy) = (&w[1].0 - &w[0].0, &w[1].1 - &w[0].1);
            if !dx.is_positive() {
                return Err(Error::domain("breakpoint x values must increase strictly"));
            }
            if dy.is_negative() {
                return Err(Error::domain("function must be non-decreasing"));
            }
            let slope = dy / dx;
            if last_slope.as_ref().is_some_and(|s| slope > *s) {
                return Err(Error::domain("slopes must be non-increasing"));
            }
            last_slope = Some(slope);
        }
        Ok(ConcaveFn { breakpoints })
    }

    pub fn identity() -> Self {
        ConcaveFn::new(vec![(int(0), int(0)), (int(1), int(1))]).expect("valid")
    }

    /// `min(x, b)` for `b > 0`.
    pub fn budget(b: Rational) -> Result<Self> {
        let far = &b + int(1);
        ConcaveFn::new(vec![(int(0), int(0)), (b.clone(), b.clone()), (far, b)])
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() {
            return Err(Error::domain("concave function evaluated at a negative point"));
        }
        let k = self
            .breakpoints
            .windows(2)
            .position(|w| *x <= w[1].0)
            .unwrap_or(self.breakpoints.len() - 2);
        let (x0, y0) = &self.breakpoints[k];
        let (x1, y1) = &self.breakpoints[k + 1];
        Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

/// `out(S) = c(f(S))` for nonnegative `f`.
pub fn concave_compose(c: &ConcaveFn, f: &SetFunction) -> Result<SetFunction> {
    let values = f.values().iter().map(|v| c.eval(v)).collect::<Result<Vec<_>>>()?;
    Ok(SetFunction::from_values(f.m(), values)?.set_names(f.names().map(<[String]>::to_vec)))
}

/// Adds a last item `x'` that copies `x`: `out(T) = v(T with x' read as x)`.
pub fn split(v: &SetFunction, x: usize) -> Result<SetFunction> {
    check_item(v, x)?;
    let m = v.m();
    if m + 1 > MAX_ITEMS {
        return Err(Error::domain("ground-set cap exceeded"));
    }
    let copy = m;
    let out = SetFunction::from_fn(m + 1, |t| {
        let s = if t.contains(copy) { t.without(copy).with(x) } else { t };
        v.value(s).clone()
    });
    Ok(out.set_names(v.names().map(|n| {
        let mut n = n.to_vec();
        n.push(format!("{}'", n[x]));
        n
    })))
}

/// Replaces items `x, y` by a last item `z` with `out(Sz) = max(v(Sx), v(Sy))`;
/// the other items keep their relative order.
pub fn aggregate(v: &SetFunction, x: usize, y: usize) -> Result<SetFunction> {
    check_pair(v, x, y)?;
    let kept: Vec<usize> = (0..v.m()).filter(|&i| i != x && i != y).collect();
    let m = kept.len() + 1;
    let z = m - 1;
    let out = SetFunction::from_fn(m, |t| {
        let base = Subset::from_items(&t.without(z).items().map(|i| kept[i]).collect::<Vec<_>>());
        if t.contains(z) {
            v.value(base.with(x)).max(v.value(base.with(y))).clone()
        } else {
            v.value(base).clone()
        }
    });
    Ok(out.set_names(v.names().map(|n| {
        let mut out: Vec<String> = kept.iter().map(|&i| n[i].clone()).collect();
        out.push(format!("{}|{}", n[x], n[y]));
        out
    })))
}

/// `out(S) = v(S) + Σ_{i∈S} w_i`; weights may be negative.
pub fn additive_perturb(v: &SetFunction, w: &[Rational]) -> Result<SetFunction> {
    if w.len() != v.m() {
        return Err(Error::domain("one weight per item"));
    }
    Ok(v.map(|s, val| val + s.items().map(|i| w[i].clone()).sum::<Rational>()))
}

/// Bipartite graph `G(U, V; E)` with edge weights and a valuation on `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionNetwork {
    u_size: usize,
    v_size: usize,
    edges: Vec<(usize, usize, Rational)>,
    inner: SetFunction,
}

impl InductionNetwork {
    pub fn new(u_size: usize, v_size: usize, edges: Vec<(usize, usize, Rational)>, inner: SetFunction) -> Result<Self> {
        if u_size == 0 || u_size > MAX_ITEMS {
            return Err(Error::domain(format!("U must have 1..={MAX_ITEMS} vertices")));
        }
        if inner.m() != v_size {
            return Err(Error::domain("inner valuation must live on V"));
        }
        if let Some((u, v, _)) = edges.iter().find(|(u, v, _)| *u >= u_size || *v >= v_size) {
            return Err(Error::domain(format!("edge ({u}, {v}) has an endpoint out of range")));
        }
        Ok(InductionNetwork {
            u_size,
            v_size,
            edges,
            inner,
        })
    }

    /// Identity edges plus a complete `{x,y} × {x,y}` block, all of weight 0.
    pub fn max_symmetrization_graph(inner: SetFunction, x: usize, y: usize) -> Result<Self> {
        let n = inner.m();
        let mut edges: Vec<(usize, usize, Rational)> = (0..n).map(|i| (i, i, int(0))).collect();
        edges.push((x, y, int(0)));
        edges.push((y, x, int(0)));
        Self::new(n, n, edges, inner)
    }

    /// Identity edges plus the edge `y → x`, all of weight 0.
    pub fn partial_symmetrization_graph(inner: SetFunction, x: usize, y: usize) -> Result<Self> {
        let n = inner.m();
        let mut edges: Vec<(usize, usize, Rational)> = (0..n).map(|i| (i, i, int(0))).collect();
        edges.push((y, x, int(0)));
        Self::new(n, n, edges, inner)
    }

    pub fn u_size(&self) -> usize {
        self.u_size
    }

    pub fn v_size(&self) -> usize {
        self.v_size
    }

    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    pub fn inner(&self) -> &SetFunction {
        &self.inner
    }

    /// Best weight among parallel edges `u - v`.
    fn weight(&self, u: usize, v: usize) -> Option<Rational> {
        self.edges
            .iter()
            .filter(|(a, b, _)| *a == u && *b == v)
            .map(|(_, _, w)| w.clone())
            .max()
    }
}

/// `max` over matchings `M` with `∂_U(M) ⊆ S` of `v(∂_V(M)) + Σ_{e∈M} w_e`.
/// The empty matching makes this at least `v(∅) = 0`.
pub fn induce(net: &InductionNetwork, s: Subset) -> Result<Rational> {
    if !s.is_subset_of(Subset::full(net.u_size)) {
        return Err(Error::domain("set is not a subset of U"));
    }
    let weight = |u: usize, v: usize| if s.contains(u) { net.weight(u, v) } else { None };
    let mut best = Rational::zero();
    for_each_matching(net.u_size, net.v_size, &weight, &mut |_, rs, w| {
        let val = net.inner.value(rs) + w;
        if val > best {
            best = val;
        }
    });
    Ok(best)
}

/// [`induce`] for every subset of `U`.
pub fn induce_all(net: &InductionNetwork) -> Result<SetFunction> {
    let mut best = vec![Rational::zero(); 1 << net.u_size];
    let weight = |u: usize, v: usize| net.weight(u, v);
    for_each_matching(net.u_size, net.v_size, &weight, &mut |ls, rs, w| {
        let val = net.inner.value(rs) + w;
        if val > best[ls.index()] {
            best[ls.index()] = val;
        }
    });
    SetFunction::from_values(net.u_size, downward_max(net.u_size, best))
}

/// The network's valuation built from the elementary operations: split every
/// `V` vertex into one copy per incident edge, add edge weights, then
/// aggregate all copies sharing a `U` endpoint.
///
/// Agrees with [`induce_all`] when `v` is monotone and the weights are zero,
/// or when `v` is monotone, weights are nonnegative and every `V` vertex has
/// at most one edge. Otherwise two `U` vertices may use the same `V` vertex,
/// which no matching allows.
pub fn induce_by_composition(net: &InductionNetwork) -> Result<SetFunction> {
    if net.edges.is_empty() {
        return Ok(SetFunction::zero(net.u_size));
    }
    // Item labels of the current function: edge index once assigned.
    let mut f = net.inner.clone();
    let mut label: Vec<Option<usize>> = vec![None; f.m()];
    for (e, &(_, v, _)) in net.edges.iter().enumerate() {
        if label[v].is_none() {
            label[v] = Some(e);
        } else {
            f = split(&f, v)?;
            label.push(Some(e));
        }
    }
    let keep = (0..f.m())
        .filter(|&i| label[i].is_some())
        .fold(Subset::EMPTY, Subset::with);
    let f = f.restrict(keep)?;
    let edge_of: Vec<usize> = keep.items().map(|i| label[i].expect("kept")).collect();
    let f = f.permute_items(&edge_of)?;
    let weights: Vec<Rational> = net.edges.iter().map(|(_, _, w)| w.clone()).collect();
    let mut f = additive_perturb(&f, &weights)?;
    // Labels are now U vertices.
    let mut owner: Vec<usize> = net.edges.iter().map(|&(u, _, _)| u).collect();
    for u in 0..net.u_size {
        loop {
            let mine: Vec<usize> = (0..owner.len()).filter(|&i| owner[i] == u).collect();
            if mine.len() < 2 {
                break;
            }
            f = aggregate(&f, mine[0], mine[1])?;
            owner = owner
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != mine[0] && i != mine[1])
                .map(|(_, &o)| o)
                .chain(std::iter::once(u))
                .collect();
        }
    }
    for u in 0..net.u_size {
        if !owner.contains(&u) {
            f = f.with_dummy_item(None)?;
            owner.push(u);
        }
    }
    f.permute_items(&owner).map(|g| g.set_names(None))
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    u: usize,
    v: usize,
    edges: Vec<(usize, usize, String)>,
    inner: SetFunction,
}

impl Serialize for InductionNetwork {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NetworkFile {
            u: self.u_size,
            v: self.v_size,
            edges: self.edges.iter().map(|(a, b, w)| (*a, *b, w.to_string())).collect(),
            inner: self.inner.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InductionNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = NetworkFile::deserialize(d)?;
        let edges = file
            .edges
            .into_iter()
            .enumerate()
            .map(|(k, (a, b, w))| {
                parse_rational(&w)
                    .map(|w| (a, b, w))
                    .map_err(|e| serde::de::Error::custom(format!("edges[{k}]: {e}")))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        InductionNetwork::new(file.u, file.v, edges, file.inner).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{as_budget_additive, is_gs, is_submodular};
    use crate::constructions::{additive, approx2_gs, ba, budget_additive, example_not_submodular};
    use crate::rational::rat;

    fn s(items: &[usize]) -> Subset {
        Subset::from_items(items)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn max_symmetrize_breaks_submodularity_of_the_example() {
        let g = example_not_submodular();
        let h = max_symmetrize(&g, 0, 1).unwrap();
        assert_eq!(h.marginal(s(&[2]), s(&[0])), int(0));
        assert_eq!(h.marginal(s(&[2]), s(&[0, 3])), int(1));
        assert!(!is_submodular(&h));
        assert!(max_symmetrize(&g, 1, 1).is_err());
    }

    #[test]
    fn max_symmetrize_examples() {
        let f = ba(2, 1).unwrap();
        assert_eq!(max_symmetrize(&f, 1, 2).unwrap(), f);
        let g = budget_additive(&ints(&[2, 2, 0]), &int(2));
        let h = max_symmetrize(&g, 1, 2).unwrap();
        assert_eq!(*h.value(s(&[1])), int(2));
        assert_eq!(*h.value(s(&[2])), int(2));
    }

    #[test]
    fn partial_symmetrize_examples() {
        let g = example_not_submodular();
        let q = partial_symmetrize(&g, 0, 1).unwrap();
        assert_eq!(*q.value(s(&[1])), int(3));
        assert_eq!(*q.value(s(&[0])), int(3));
        let twice = partial_symmetrize(&q, 1, 0).unwrap();
        assert_eq!(twice, max_symmetrize(&g, 0, 1).unwrap());
        let f = ba(2, 1).unwrap();
        assert_eq!(partial_symmetrize(&f, 1, 2).unwrap(), f);
    }

    #[test]
    fn fixpoint_examples() {
        let g = budget_additive(&ints(&[2, 2, 0]), &int(2));
        let f = budget_additive(&ints(&[2, 1, 1]), &int(2));
        let (out, steps) = symmetrize_to_fixpoint_traced(&g, &f).unwrap();
        assert!(out.is_pair_symmetric(1, 2));
        assert!(out.symmetry_classes().is_coarsening_of(&f.symmetry_classes()));
        assert!(steps.windows(2).all(|w| w[1].potential > w[0].potential));
        assert!(steps[0].potential > g.potential());
        let a = approx2_gs(3).unwrap();
        assert_eq!(symmetrize_to_fixpoint(&a, &ba(3, 1).unwrap()).unwrap(), a);
    }

    #[test]
    fn convolution_examples() {
        let f = additive(&ints(&[3, 1, 2]));
        let g = additive(&ints(&[1, 4, 2]));
        assert_eq!(convolve(&f, &SetFunction::zero(3)).unwrap(), f);
        assert_eq!(convolve(&f, &g).unwrap(), additive(&ints(&[3, 4, 2])));
        let a = approx2_gs(2).unwrap();
        let b = approx2_gs(2).unwrap().permute_items(&[2, 1, 0]).unwrap();
        assert!(is_gs(&convolve(&a, &b).unwrap()));
        assert_eq!(
            convolve_all(&[f.clone(), g.clone(), f.clone()]).unwrap(),
            additive(&ints(&[3, 4, 2]))
        );
    }

    #[test]
    fn average_and_sum() {
        let f = budget_additive(&ints(&[2, 2, 0]), &int(2));
        let g = budget_additive(&ints(&[2, 0, 2]), &int(2));
        let avg = average(&f, &g).unwrap();
        assert_eq!(avg, budget_additive(&ints(&[2, 1, 1]), &int(2)));
        assert!(!is_gs(&avg));
        assert_eq!(average(&f, &f).unwrap(), f);
        // Disjoint supports: items {0,1} and {2,3}.
        let p = SetFunction::from_fn(4, |t| int((t.mask() & 3).count_ones().min(1) as i64));
        let q = SetFunction::from_fn(4, |t| int((t.mask() & 12).count_ones().min(1) as i64 * 2));
        assert!(is_gs(&sum(&p, &q).unwrap()));
    }

    #[test]
    fn endow_examples() {
        let g = example_not_submodular();
        assert_eq!(endow(&g, Subset::EMPTY).unwrap(), g);
        let p = endow(&g, s(&[0])).unwrap();
        assert_eq!(p.m(), 3);
        // item c is now index 1
        assert_eq!(*p.value(s(&[1])), int(0));
        assert_eq!(p.names().unwrap(), &["b", "c", "d"]);
        assert!(is_gs(&endow(&approx2_gs(3).unwrap(), s(&[1])).unwrap()));
        assert!(endow(&g, g.full()).is_err());
    }

    #[test]
    fn concave_examples() {
        let f = additive(&ints(&[1, 2, 3]));
        assert_eq!(concave_compose(&ConcaveFn::identity(), &f).unwrap(), f);
        let capped = concave_compose(&ConcaveFn::budget(int(4)).unwrap(), &f).unwrap();
        let fit = as_budget_additive(&capped).unwrap();
        assert_eq!(fit.budget, int(4));
        let c = ConcaveFn::new(vec![(int(0), int(0)), (int(1), int(2)), (int(3), int(3))]).unwrap();
        assert_eq!(c.eval(&int(2)).unwrap(), rat(5, 2));
        assert_eq!(c.eval(&int(5)).unwrap(), int(4));
        assert!(ConcaveFn::new(vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(3))]).is_err());
        assert!(ConcaveFn::new(vec![(int(0), int(1)), (int(1), int(1))]).is_err());
        let rank = SetFunction::from_fn(4, |t| int(t.len().min(2) as i64));
        assert!(is_gs(&concave_compose(&c, &rank.scale(&int(2))).unwrap()));
    }

    #[test]
    fn elementary_operations() {
        let v = approx2_gs(2).unwrap();
        let sp = split(&v, 1).unwrap();
        assert_eq!(sp.restrict(s(&[0, 1, 2])).unwrap(), v);
        assert_eq!(*sp.value(s(&[3])), *v.value(s(&[1])));
        assert_eq!(*sp.value(s(&[1, 3])), *v.value(s(&[1])));
        assert!(is_gs(&sp));
        assert_eq!(additive_perturb(&v, &vec![int(0); 3]).unwrap(), v);
        assert!(is_gs(&additive_perturb(&v, &ints(&[-1, 2, 0])).unwrap()));
        let ag = aggregate(&v, 0, 2).unwrap();
        assert_eq!(ag.m(), 2);
        assert_eq!(*ag.value(s(&[1])), v.value(s(&[0])).max(v.value(s(&[2]))).clone());
        assert_eq!(
            *ag.value(s(&[0, 1])),
            v.value(s(&[0, 1])).max(v.value(s(&[1, 2]))).clone()
        );
        assert!(is_gs(&ag));
        assert!(split(&v, 7).is_err());
        assert!(aggregate(&v, 1, 1).is_err());
    }

    #[test]
    fn figure_graphs() {
        for v in [approx2_gs(3).unwrap(), ba(2, 1).unwrap(), example_not_submodular()] {
            let n = v.m();
            for (x, y) in [(0, 1), (1, n - 1)] {
                let left = InductionNetwork::max_symmetrization_graph(v.clone(), x, y).unwrap();
                assert_eq!(
                    induce_all(&left).unwrap(),
                    max_symmetrize(&v, x, y).unwrap().set_names(None)
                );
                let right = InductionNetwork::partial_symmetrization_graph(v.clone(), x, y).unwrap();
                assert_eq!(
                    induce_all(&right).unwrap(),
                    partial_symmetrize(&v, x, y).unwrap().set_names(None)
                );
                assert_eq!(
                    induce(&right, s(&[y])).unwrap(),
                    v.value(s(&[x])).max(v.value(s(&[y]))).clone()
                );
            }
        }
    }

    #[test]
    fn composition_matches_induction_for_zero_weights() {
        let v = approx2_gs(2).unwrap();
        let net = InductionNetwork::new(
            3,
            3,
            vec![
                (0, 0, int(0)),
                (0, 1, int(0)),
                (1, 1, int(0)),
                (2, 2, int(0)),
                (2, 0, int(0)),
            ],
            v,
        )
        .unwrap();
        assert_eq!(induce_by_composition(&net).unwrap(), induce_all(&net).unwrap());
    }

    #[test]
    fn composition_double_counts_shared_endpoints() {
        // Two U vertices share the single V vertex; positive weights.
        let v = additive(&ints(&[1]));
        let net = InductionNetwork::new(2, 1, vec![(0, 0, int(1)), (1, 0, int(1))], v).unwrap();
        assert_eq!(*induce_all(&net).unwrap().value(s(&[0, 1])), int(2));
        assert_eq!(*induce_by_composition(&net).unwrap().value(s(&[0, 1])), int(3));
    }

    #[test]
    fn network_json_round_trip() {
        let net = InductionNetwork::new(
            2,
            2,
            vec![(0, 1, rat(-1, 2)), (1, 1, int(3))],
            ba(2, 1).unwrap().restrict(s(&[0, 1])).unwrap(),
        )
        .unwrap();
        let text = serde_json::to_string(&net).unwrap();
        assert!(text.contains("\"-1/2\""));
        let back: InductionNetwork = serde_json::from_str(&text).unwrap();
        assert_eq!(back, net);
        assert!(InductionNetwork::new(
            1,
            2,
            vec![(1, 0, int(0))],
            ba(2, 1).unwrap().restrict(s(&[0, 1])).unwrap()
        )
        .is_err());
    }
}
