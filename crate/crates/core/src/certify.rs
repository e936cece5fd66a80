//! Ternary branch-and-prune search over triplet-condition branches.
//!
//! Variables are the values `g(S)` of the nonempty subsets of a small ground
//! set; variable `S.mask() - 1` holds `g(S)`. For every combination (a triplet
//! and a disjoint base set) the search branches on which of the three
//! pair-sums is the minimum, adds the matching linear constraints, and prunes
//! subtrees whose LP is infeasible. An exhausted tree certifies that no
//! instantiation satisfies the triplet condition on all combinations.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::analysis::approximation_ratio;
use crate::classes::gs_violation;
use crate::error::{Error, Result};
use crate::lp::{solve, solve_with_farkas, Constraint, LinExpr, LpOutcome, LpProblem};
use crate::rational::{int, Rational};
use crate::setfn::{SetFunction, Subset};

/// Largest ground set accepted by the certifier.
pub const MAX_CERTIFY_ITEMS: usize = 6;

/// `g(S)` as a linear expression; `g(∅) = 0`.
pub fn value_var(s: Subset) -> LinExpr {
    if s.is_empty() {
        LinExpr::zero()
    } else {
        LinExpr::var(s.index() - 1)
    }
}

pub fn num_vars(m: usize) -> usize {
    (1 << m) - 1
}

/// A triplet together with a disjoint base set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Combination {
    pub triplet: Subset,
    pub base: Subset,
}

impl Combination {
    pub fn new(triplet: Subset, base: Subset) -> Result<Self> {
        if triplet.len() != 3 || !triplet.is_disjoint(base) {
            return Err(Error::domain("a combination is three items plus a disjoint base set"));
        }
        Ok(Combination { triplet, base })
    }

    /// Parses `"(acd;b)"`, items named by consecutive letters from `a`; an
    /// empty base is written `"(acd;)"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::parse(format!("{text:?}"), "expected \"(xyz;base)\" with item letters");
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (t, b) = inner.split_once(';').ok_or_else(bad)?;
        let items = |s: &str| -> Result<Subset> {
            s.chars().try_fold(Subset::EMPTY, |acc, c| {
                if !c.is_ascii_lowercase() || acc.contains((c as u8 - b'a') as usize) {
                    return Err(bad());
                }
                Ok(acc.with((c as u8 - b'a') as usize))
            })
        };
        Combination::new(items(t)?, items(b)?).map_err(|_| bad())
    }

    /// The items of the triplet in increasing order.
    pub fn items(&self) -> [usize; 3] {
        let v: Vec<usize> = self.triplet.items().collect();
        [v[0], v[1], v[2]]
    }

    /// The three pair-sums, term `r` pairing item `r` alone with the other two:
    /// `g(x_r | B) + g(rest | B)`. The shared `-2 g(B)` is dropped.
    pub fn terms(&self) -> [LinExpr; 3] {
        let it = self.items();
        std::array::from_fn(|r| {
            let single = self.base.with(it[r]);
            let pair = self.base.union(self.triplet.without(it[r]));
            value_var(single) + value_var(pair)
        })
    }

    /// The two constraints stating that term `min_term` is a minimum and the
    /// maximum is not unique: the first other term is at least the minimum
    /// and the second other term equals the first.
    pub fn branch_constraints(&self, min_term: u8) -> [Constraint; 2] {
        let t = self.terms();
        let r = min_term as usize;
        let others: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        [
            Constraint::ge(t[others[0]].clone(), t[r].clone()),
            Constraint::eq(t[others[1]].clone(), t[others[0]].clone()),
        ]
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = |s: Subset| s.items().map(|i| (b'a' + i as u8) as char).collect::<String>();
        write!(f, "({};{})", letters(self.triplet), letters(self.base))
    }
}

/// A combination with the index of its minimum pair-sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchChoice {
    pub combination: Combination,
    pub min_term: u8,
}

impl BranchChoice {
    pub fn new(combination: Combination, min_term: u8) -> Result<Self> {
        if min_term > 2 {
            return Err(Error::domain("min_term must be 0, 1 or 2"));
        }
        Ok(BranchChoice { combination, min_term })
    }

    pub fn constraints(&self) -> [Constraint; 2] {
        self.combination.branch_constraints(self.min_term)
    }
}

impl fmt::Display for BranchChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.combination, self.min_term)
    }
}

/// Every combination over `m` items: triplets in lexicographic order, each
/// with its base sets in increasing mask order.
pub fn all_combinations(m: usize) -> Vec<Combination> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let t = Subset::from_items(&[i, j, k]);
                for b in Subset::full(m).difference(t).subsets() {
                    out.push(Combination { triplet: t, base: b });
                }
            }
        }
    }
    out
}

fn parse_all(list: &[&str]) -> Vec<Combination> {
    list.iter()
        .map(|t| Combination::parse(t).expect("valid literal"))
        .collect()
}

/// First candidate sufficient set of six combinations.
pub fn s1_set1() -> Vec<Combination> {
    parse_all(&["(acd;b)", "(ace;b)", "(ade;b)", "(bce;a)", "(bde;a)", "(cde;b)"])
}

/// Second candidate sufficient set of six combinations.
pub fn s1_set2() -> Vec<Combination> {
    parse_all(&["(acd;e)", "(ace;d)", "(ade;c)", "(bcd;e)", "(bce;d)", "(cde;a)"])
}

/// Strict violation, encoded with margin 1, of
/// `g(ca) + g(deb) <= max{h(da) + h(cea), h(ea) + h(cda)}` where `h` is the
/// max-symmetrization of `g` in items `a, b`. Each `h` term is either its `a`
/// or its `b` version, chosen independently, giving 8 constraints.
pub fn s1_fixed_constraints() -> (usize, Vec<Constraint>) {
    let (a, b, c, d, e) = (0, 1, 2, 3, 4);
    let v = |items: &[usize]| value_var(Subset::from_items(items));
    let lhs = v(&[c, a]) + v(&[d, e, b]);
    let one = LinExpr::constant(int(1));
    let mut out = Vec::new();
    for (single, pair) in [(d, [c, e]), (e, [c, d])] {
        for alpha in [a, b] {
            for beta in [a, b] {
                let rhs = v(&[single, alpha]) + v(&[pair[0], pair[1], beta]) + one.clone();
                out.push(Constraint::ge(lhs.clone(), rhs));
            }
        }
    }
    (num_vars(5), out)
}

/// Local submodularity plus `g(M) >= g(M - j)` for every item `j`.
///
/// Together these imply monotonicity: submodularity makes every marginal of
/// `j` at least its marginal at `M - j`.
pub fn monotone_submodular_constraints(m: usize) -> Vec<Constraint> {
    let full = Subset::full(m);
    let mut out: Vec<Constraint> = (0..m)
        .map(|j| Constraint::ge(value_var(full), value_var(full.without(j))))
        .collect();
    for s in Subset::all(m) {
        let outside: Vec<usize> = full.difference(s).items().collect();
        for (x, &j) in outside.iter().enumerate() {
            for &k in &outside[x + 1..] {
                out.push(Constraint::ge(
                    value_var(s.with(j)) + value_var(s.with(k)),
                    value_var(s.with(j).with(k)) + value_var(s),
                ));
            }
        }
    }
    out
}

/// How the search picks the combination to branch on at each node.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branching {
    /// Level `h` branches on `order[h]`.
    #[default]
    Static,
    /// Each node branches on the first combination of `order`, not yet on its
    /// path, whose triplet condition the node's witness violates. A node whose
    /// witness satisfies every remaining combination is a feasible leaf.
    FirstViolated,
    /// Each node branches on the violated combination with the fewest
    /// LP-feasible children, ties broken by `order`.
    Strong,
}

/// The instance searched: fixed constraints plus an ordered list of combinations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub num_items: usize,
    pub fixed: Vec<Constraint>,
    pub order: Vec<Combination>,
    pub include_mono_submod: bool,
    #[serde(default)]
    pub branching: Branching,
}

impl SearchProblem {
    pub fn new(
        num_items: usize,
        fixed: Vec<Constraint>,
        order: Vec<Combination>,
        include_mono_submod: bool,
    ) -> Result<Self> {
        if !(3..=MAX_CERTIFY_ITEMS).contains(&num_items) {
            return Err(Error::domain(format!(
                "certifier supports 3..={MAX_CERTIFY_ITEMS} items"
            )));
        }
        let full = Subset::full(num_items);
        if order.iter().any(|c| !c.triplet.union(c.base).is_subset_of(full)) {
            return Err(Error::domain("combination uses an item outside the ground set"));
        }
        if order.iter().collect::<HashSet<_>>().len() != order.len() {
            return Err(Error::domain("combinations must be distinct"));
        }
        let p = SearchProblem {
            num_items,
            fixed,
            order,
            include_mono_submod,
            branching: Branching::Static,
        };
        let n = num_vars(num_items);
        if p.fixed.iter().any(|c| c.expr.max_var().is_some_and(|v| v >= n)) {
            return Err(Error::domain(
                "fixed constraint references a variable beyond the ground set",
            ));
        }
        Ok(p)
    }

    pub fn with_branching(mut self, branching: Branching) -> Self {
        self.branching = branching;
        self
    }

    /// The S1 instance with the given combination order.
    pub fn s1(order: Vec<Combination>, include_mono_submod: bool) -> Result<Self> {
        let (_, fixed) = s1_fixed_constraints();
        Self::new(5, fixed, order, include_mono_submod)
    }

    /// Constraints of the node reached by `path`.
    pub fn node_constraints(&self, path: &[BranchChoice]) -> Vec<Constraint> {
        let mut out = self.fixed.clone();
        if self.include_mono_submod {
            out.extend(monotone_submodular_constraints(self.num_items));
        }
        for b in path {
            out.extend(b.constraints());
        }
        out
    }

    pub fn node_lp(&self, path: &[BranchChoice]) -> LpProblem {
        LpProblem::feasibility(num_vars(self.num_items), self.node_constraints(path))
    }

    /// Whether `path` is a node of this problem's tree shape: distinct
    /// combinations from `order`, in level order when branching is static.
    fn is_node_shape(&self, path: &[BranchChoice]) -> bool {
        let known: HashSet<&Combination> = self.order.iter().collect();
        let distinct: HashSet<&Combination> = path.iter().map(|b| &b.combination).collect();
        distinct.len() == path.len()
            && path.len() <= self.order.len()
            && path.iter().all(|b| b.min_term < 3 && known.contains(&b.combination))
            && (self.branching != Branching::Static || path.iter().zip(&self.order).all(|(b, c)| b.combination == *c))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub lps_solved: u64,
    pub nodes_visited: u64,
    /// Nodes shown feasible by the parent's witness without an LP.
    pub lps_skipped: u64,
    pub max_depth: usize,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SearchResult {
    /// Every listed path has an infeasible LP, and together they cover every
    /// leaf of the tree.
    Infeasible { pruned: Vec<Vec<BranchChoice>> },
    /// A witness satisfying the fixed constraints and, for every combination
    /// of the order, the branch recorded in `path`.
    Feasible {
        #[serde_as(as = "Vec<DisplayFromStr>")]
        witness: Vec<Rational>,
        path: Vec<BranchChoice>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: SearchProblem,
    pub result: SearchResult,
    pub stats: SearchStats,
}

impl Certificate {
    pub fn is_infeasible(&self) -> bool {
        matches!(self.result, SearchResult::Infeasible { .. })
    }

    /// The witness as a valuation table, for feasible certificates.
    pub fn witness_function(&self) -> Option<SetFunction> {
        match &self.result {
            SearchResult::Feasible { witness, .. } => Some(witness_to_function(self.problem.num_items, witness)),
            SearchResult::Infeasible { .. } => None,
        }
    }
}

pub fn witness_to_function(m: usize, witness: &[Rational]) -> SetFunction {
    SetFunction::from_fn(m, |s| {
        if s.is_empty() {
            Rational::zero()
        } else {
            witness[s.index() - 1].clone()
        }
    })
}

/// The first branch of `c` whose constraints `w` satisfies, if any.
fn satisfied_branch(c: Combination, w: &[Rational]) -> Option<u8> {
    (0..3u8).find(|&r| c.branch_constraints(r).iter().all(|k| k.is_satisfied(w)))
}

struct Search<'a> {
    problem: &'a SearchProblem,
    stats: SearchStats,
    pruned: Vec<Vec<BranchChoice>>,
    base: Vec<Constraint>,
}

impl Search<'_> {
    fn solve(&mut self, extra: &[Constraint]) -> Result<Option<Vec<Rational>>> {
        self.stats.lps_solved += 1;
        let mut cons = self.base.clone();
        cons.extend_from_slice(extra);
        let lp = LpProblem::feasibility(num_vars(self.problem.num_items), cons);
        Ok(match solve(&lp)? {
            LpOutcome::Feasible { witness, .. } => Some(witness),
            _ => None,
        })
    }

    /// The combination to branch on below `path`, or `None` at a leaf.
    fn next_combination(&self, path: &[BranchChoice], w: &[Rational]) -> Option<Combination> {
        match self.problem.branching {
            Branching::Static => self.problem.order.get(path.len()).copied(),
            Branching::FirstViolated | Branching::Strong => {
                let used: HashSet<Combination> = path.iter().map(|b| b.combination).collect();
                self.problem
                    .order
                    .iter()
                    .find(|c| !used.contains(c) && satisfied_branch(**c, w).is_none())
                    .copied()
            }
        }
    }

    /// Completes a leaf path with, for every combination not on it, the
    /// first branch the witness satisfies.
    fn complete_path(&self, path: &[BranchChoice], w: &[Rational]) -> Vec<BranchChoice> {
        let used: HashSet<Combination> = path.iter().map(|b| b.combination).collect();
        let mut out = path.to_vec();
        for &c in self.problem.order.iter().filter(|c| !used.contains(c)) {
            let r = satisfied_branch(c, w).expect("leaf witness satisfies every remaining combination");
            out.push(BranchChoice {
                combination: c,
                min_term: r,
            });
        }
        out
    }

    /// Explores the subtree below a feasible node; `branch` holds the branch
    /// constraints along `path` and `w` satisfies all of the node's constraints.
    fn dfs(
        &mut self,
        path: &mut Vec<BranchChoice>,
        branch: &mut Vec<Constraint>,
        w: Vec<Rational>,
    ) -> Result<Option<(Vec<Rational>, Vec<BranchChoice>)>> {
        let depth = path.len();
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let Some(comb) = self.next_combination(path, &w) else {
            let full = self.complete_path(path, &w);
            return Ok(Some((w, full)));
        };
        let mut choices: Vec<(u8, [Constraint; 2], bool)> = (0..3u8)
            .map(|r| {
                let cs = comb.branch_constraints(r);
                let ok = cs.iter().all(|c| c.is_satisfied(&w));
                (r, cs, ok)
            })
            .collect();
        choices.sort_by_key(|&(r, _, ok)| (!ok, r));
        for (r, cs, ok) in choices {
            self.stats.nodes_visited += 1;
            path.push(BranchChoice {
                combination: comb,
                min_term: r,
            });
            branch.extend(cs.iter().cloned());
            let child = if ok {
                self.stats.lps_skipped += 1;
                Some(w.clone())
            } else {
                self.solve(branch)?
            };
            let found = match child {
                Some(cw) => self.dfs(path, branch, cw)?,
                None => {
                    self.stats.max_depth = self.stats.max_depth.max(depth + 1);
                    self.pruned.push(path.clone());
                    None
                }
            };
            branch.truncate(branch.len() - 2);
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Result of exploring a subtree with conflict-directed backjumping.
enum Explored {
    Found(Vec<Rational>, Vec<BranchChoice>),
    /// Every leaf below the node is infeasible. `leaves` are pruned paths
    /// relative to the node, and `conflict` holds the depths of the path
    /// choices their infeasibility proofs use.
    Refuted {
        conflict: BTreeSet<usize>,
        leaves: Vec<Vec<BranchChoice>>,
    },
}

impl Search<'_> {
    /// Runs the search below a feasible root; `None` means the tree is
    /// exhausted and `self.pruned` holds the pruned paths.
    fn explore(&mut self, w: Vec<Rational>) -> Result<Option<(Vec<Rational>, Vec<BranchChoice>)>> {
        match self.problem.branching {
            Branching::Static => self.dfs(&mut Vec::new(), &mut Vec::new(), w),
            Branching::FirstViolated | Branching::Strong => {
                match self.dfs_backjump(&mut Vec::new(), &mut Vec::new(), w)? {
                    Explored::Found(w, path) => Ok(Some((w, path))),
                    Explored::Refuted { leaves, .. } => {
                        self.pruned = leaves;
                        Ok(None)
                    }
                }
            }
        }
    }

    /// Depths of the branch choices with nonzero Farkas multipliers.
    fn conflict_of(&self, farkas: &[Rational]) -> BTreeSet<usize> {
        let skip = self.base.len();
        farkas[skip..]
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .map(|(k, _)| k / 2)
            .collect()
    }

    /// Solves the LP of the current node extended by `extra`.
    fn probe(&mut self, branch: &[Constraint], extra: &[Constraint]) -> Result<Probe> {
        self.stats.lps_solved += 1;
        let mut cons = self.base.clone();
        cons.extend_from_slice(branch);
        cons.extend_from_slice(extra);
        let lp = LpProblem::feasibility(num_vars(self.problem.num_items), cons);
        match solve_with_farkas(&lp)? {
            (LpOutcome::Feasible { witness, .. }, _) => Ok(Probe::Feasible(witness)),
            (_, Some(y)) => Ok(Probe::Infeasible(self.conflict_of(&y))),
            (_, None) => Err(Error::Internal("infeasible LP without Farkas multipliers".into())),
        }
    }

    /// Picks the combination to branch on, with any child LPs already solved.
    fn choose(
        &mut self,
        path: &[BranchChoice],
        branch: &[Constraint],
        w: &[Rational],
    ) -> Result<Option<(Combination, [Option<Probe>; 3])>> {
        if self.problem.branching != Branching::Strong {
            return Ok(self.next_combination(path, w).map(|c| (c, [None, None, None])));
        }
        let used: HashSet<Combination> = path.iter().map(|b| b.combination).collect();
        let candidates: Vec<Combination> = self
            .problem
            .order
            .iter()
            .filter(|c| !used.contains(c) && satisfied_branch(**c, w).is_none())
            .copied()
            .collect();
        let mut best: Option<(usize, Combination, [Option<Probe>; 3])> = None;
        for c in candidates {
            let mut probes: [Option<Probe>; 3] = [None, None, None];
            let mut feasible = 0;
            for r in 0..3u8 {
                let p = self.probe(branch, &c.branch_constraints(r))?;
                feasible += usize::from(matches!(p, Probe::Feasible(_)));
                probes[r as usize] = Some(p);
            }
            if best.as_ref().is_none_or(|(f, ..)| feasible < *f) {
                best = Some((feasible, c, probes));
                if feasible == 0 {
                    break;
                }
            }
        }
        Ok(best.map(|(_, c, p)| (c, p)))
    }

    /// Dynamic-branching search. When a child's refutation does not use the
    /// choice leading to it, the same refutation holds at this node, so the
    /// remaining siblings are skipped and the child's subtree is re-rooted here.
    fn dfs_backjump(
        &mut self,
        path: &mut Vec<BranchChoice>,
        branch: &mut Vec<Constraint>,
        w: Vec<Rational>,
    ) -> Result<Explored> {
        let depth = path.len();
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let Some((comb, mut probes)) = self.choose(path, branch, &w)? else {
            let full = self.complete_path(path, &w);
            return Ok(Explored::Found(w, full));
        };
        // Children the witness satisfies first, then infeasible ones, so a
        // backjump is found before any subtree is explored.
        let mut order: Vec<u8> = (0..3).collect();
        let rank = |r: u8, probes: &[Option<Probe>; 3]| {
            let satisfied = comb.branch_constraints(r).iter().all(|c| c.is_satisfied(&w));
            let infeasible = matches!(probes[r as usize], Some(Probe::Infeasible(_)));
            (!satisfied, !infeasible, r)
        };
        order.sort_by_key(|&r| rank(r, &probes));
        let mut conflict = BTreeSet::new();
        let mut leaves = Vec::new();
        for r in order {
            self.stats.nodes_visited += 1;
            let choice = BranchChoice {
                combination: comb,
                min_term: r,
            };
            let cs = comb.branch_constraints(r);
            let probe = match probes[r as usize].take() {
                Some(p) => p,
                None if cs.iter().all(|c| c.is_satisfied(&w)) => {
                    self.stats.lps_skipped += 1;
                    Probe::Feasible(w.clone())
                }
                None => self.probe(branch, &cs)?,
            };
            let child = match probe {
                Probe::Feasible(cw) => {
                    path.push(choice);
                    branch.extend(cs.iter().cloned());
                    let out = self.dfs_backjump(path, branch, cw)?;
                    branch.truncate(branch.len() - 2);
                    path.pop();
                    out
                }
                Probe::Infeasible(k) => {
                    self.stats.max_depth = self.stats.max_depth.max(depth + 1);
                    Explored::Refuted {
                        conflict: k,
                        leaves: vec![Vec::new()],
                    }
                }
            };
            match child {
                Explored::Found(..) => return Ok(child),
                Explored::Refuted { conflict: k, leaves: l } => {
                    if !k.contains(&depth) {
                        return Ok(Explored::Refuted { conflict: k, leaves: l });
                    }
                    conflict.extend(k.into_iter().filter(|&d| d != depth));
                    leaves.extend(l.into_iter().map(|mut rel| {
                        rel.insert(0, choice);
                        rel
                    }));
                }
            }
        }
        Ok(Explored::Refuted { conflict, leaves })
    }
}

/// A solved child LP.
enum Probe {
    Feasible(Vec<Rational>),
    /// Depths of the path choices used by the infeasibility proof; the
    /// child's own choice sits at the node's depth.
    Infeasible(BTreeSet<usize>),
}

/// Depth-first search of the branch tree.
///
/// A child whose constraints the parent's witness already satisfies is
/// explored first and without solving an LP.
pub fn tree_search(problem: &SearchProblem) -> Result<Certificate> {
    let mut base = problem.fixed.clone();
    if problem.include_mono_submod {
        base.extend(monotone_submodular_constraints(problem.num_items));
    }
    let mut s = Search {
        problem,
        stats: SearchStats::default(),
        pruned: Vec::new(),
        base,
    };
    s.stats.nodes_visited = 1;
    let result = match s.solve(&[])? {
        None => SearchResult::Infeasible { pruned: vec![vec![]] },
        Some(w) => match s.explore(w)? {
            Some((witness, path)) => {
                let all = problem.node_constraints(&path);
                if !all.iter().all(|c| c.is_satisfied(&witness)) {
                    return Err(Error::Internal("feasible leaf witness violates its constraints".into()));
                }
                SearchResult::Feasible { witness, path }
            }
            None => SearchResult::Infeasible {
                pruned: std::mem::take(&mut s.pruned),
            },
        },
    };
    Ok(Certificate {
        problem: problem.clone(),
        result,
        stats: s.stats,
    })
}

/// Outcome of re-checking a certificate from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub valid: bool,
    pub lps_solved: u64,
    pub failure: Option<String>,
}

/// Re-solves every pruned LP and checks that the pruned paths cover every
/// leaf; for a feasible certificate, re-checks the witness against one
/// branch of every combination.
pub fn replay(cert: &Certificate) -> Result<ReplayReport> {
    let p = &cert.problem;
    let fail = |lps: u64, msg: String| ReplayReport {
        valid: false,
        lps_solved: lps,
        failure: Some(msg),
    };
    match &cert.result {
        SearchResult::Feasible { witness, path } => {
            if path.len() != p.order.len() || !p.is_node_shape(path) {
                return Ok(fail(0, "witness path does not branch on every combination".into()));
            }
            if witness.len() != num_vars(p.num_items) {
                return Ok(fail(0, "witness has the wrong length".into()));
            }
            if let Some(k) = p.node_constraints(path).iter().position(|c| !c.is_satisfied(witness)) {
                return Ok(fail(0, format!("witness violates constraint {k}")));
            }
            Ok(ReplayReport {
                valid: true,
                lps_solved: 0,
                failure: None,
            })
        }
        SearchResult::Infeasible { pruned } => {
            if let Some(bad) = pruned.iter().find(|path| !p.is_node_shape(path)) {
                return Ok(fail(0, format!("path {} is not a tree node", show_path(bad))));
            }
            let results: Vec<Result<Option<String>>> = pruned
                .par_iter()
                .map(|path| {
                    Ok(match solve(&p.node_lp(path))? {
                        LpOutcome::Infeasible => None,
                        _ => Some(format!("pruned node {} is feasible", show_path(path))),
                    })
                })
                .collect();
            let lps = pruned.len() as u64;
            for r in results {
                if let Some(msg) = r? {
                    return Ok(fail(lps, msg));
                }
            }
            if let Err(msg) = check_coverage(pruned) {
                return Ok(fail(lps, msg));
            }
            Ok(ReplayReport {
                valid: true,
                lps_solved: lps,
                failure: None,
            })
        }
    }
}

fn show_path(path: &[BranchChoice]) -> String {
    let parts: Vec<String> = path.iter().map(BranchChoice::to_string).collect();
    format!("[{}]", parts.join(" "))
}

/// Every internal node must branch on a single combination with all three
/// children present, and every root-to-leaf walk must end at a pruned node.
fn check_coverage(pruned: &[Vec<BranchChoice>]) -> std::result::Result<(), String> {
    let leaves: HashSet<&[BranchChoice]> = pruned.iter().map(Vec::as_slice).collect();
    let mut branch_on: HashMap<&[BranchChoice], Combination> = HashMap::new();
    for path in pruned {
        for (h, b) in path.iter().enumerate() {
            let prefix = &path[..h];
            if leaves.contains(prefix) {
                return Err(format!("pruned node {} has pruned descendants", show_path(prefix)));
            }
            if let Some(prev) = branch_on.insert(prefix, b.combination) {
                if prev != b.combination {
                    return Err(format!("node {} branches on two combinations", show_path(prefix)));
                }
            }
        }
    }
    let mut prefix = Vec::new();
    if covered(&leaves, &branch_on, &mut prefix) {
        Ok(())
    } else {
        Err("pruned nodes do not cover the whole tree".into())
    }
}

fn covered(
    leaves: &HashSet<&[BranchChoice]>,
    branch_on: &HashMap<&[BranchChoice], Combination>,
    prefix: &mut Vec<BranchChoice>,
) -> bool {
    if leaves.contains(prefix.as_slice()) {
        return true;
    }
    let Some(&combination) = branch_on.get(prefix.as_slice()) else {
        return false;
    };
    (0..3u8).all(|r| {
        prefix.push(BranchChoice {
            combination,
            min_term: r,
        });
        let ok = covered(leaves, branch_on, prefix);
        prefix.pop();
        ok
    })
}

/// Searches for a GS function `g` with `g <= f <= ρ g`.
///
/// Infeasible certifies that no GS function approximates `f` within `ρ`.
/// With `respect_symmetries`, `g` is also required to share the symmetries of
/// `f`, which loses nothing since symmetrizing a GS approximator keeps it GS
/// and within the same ratio.
pub fn gs_gap_certifier(f: &SetFunction, rho: &Rational, respect_symmetries: bool) -> Result<Certificate> {
    let m = f.m();
    if !(3..=MAX_CERTIFY_ITEMS).contains(&m) {
        return Err(Error::domain(format!(
            "gap certifier supports 3..={MAX_CERTIFY_ITEMS} items"
        )));
    }
    if *rho < int(1) {
        return Err(Error::domain("ratio must be at least 1"));
    }
    let mut fixed = Vec::new();
    for s in Subset::all(m).skip(1) {
        let fv = LinExpr::constant(f.value(s).clone());
        fixed.push(Constraint::le(value_var(s), fv.clone()));
        fixed.push(Constraint::le(fv, value_var(s) * rho));
    }
    fixed.extend(monotone_submodular_constraints(m));
    if respect_symmetries {
        for class in f.symmetry_classes().classes() {
            let items: Vec<usize> = class.items().collect();
            for w in items.windows(2) {
                let (i, j) = (w[0], w[1]);
                for s in Subset::full(m).without(i).without(j).subsets() {
                    fixed.push(Constraint::eq(value_var(s.with(i)), value_var(s.with(j))));
                }
            }
        }
    }
    let problem = SearchProblem::new(m, fixed, all_combinations(m), false)?.with_branching(Branching::Strong);
    let cert = tree_search(&problem)?;
    if let Some(g) = cert.witness_function() {
        if let Some(w) = gs_violation(&g) {
            return Err(Error::Internal(format!("gap witness is not GS: {w:?}")));
        }
        let gap = approximation_ratio(&g, f)?;
        if !gap.within(rho) {
            return Err(Error::Internal("gap witness misses the ratio".into()));
        }
    }
    Ok(cert)
}

/// Outcome of [`find_sufficient_sets`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientSearch {
    /// Sets (in enumeration order) whose tree is fully infeasible.
    pub sets: Vec<Vec<Combination>>,
    /// False when the LP budget ran out before every subset was checked.
    pub complete: bool,
    pub subsets_checked: u64,
    pub lps_solved: u64,
}

/// Size-`size` subsets of the 40 S1 combinations that alone make the S1
/// search infeasible. Stops once `budget` LPs have been solved.
pub fn find_sufficient_sets(size: usize, budget: u64) -> Result<SufficientSearch> {
    if !(5..=6).contains(&size) {
        return Err(Error::domain("size must be 5 or 6"));
    }
    find_sufficient_sets_in(&all_combinations(5), size, budget)
}

/// As [`find_sufficient_sets`] over an arbitrary pool of S1 combinations.
pub fn find_sufficient_sets_in(pool: &[Combination], size: usize, budget: u64) -> Result<SufficientSearch> {
    if size == 0 || size > pool.len() {
        return Err(Error::domain("size must be between 1 and the pool size"));
    }
    const CHUNK: usize = 4096;
    let mut out = SufficientSearch {
        sets: Vec::new(),
        complete: true,
        subsets_checked: 0,
        lps_solved: 0,
    };
    let mut idx: Vec<usize> = (0..size).collect();
    let mut done = false;
    while !done {
        let mut chunk = Vec::with_capacity(CHUNK);
        while chunk.len() < CHUNK && !done {
            chunk.push(idx.clone());
            done = !next_combination(&mut idx, pool.len());
        }
        let used = AtomicU64::new(out.lps_solved);
        let exhausted = AtomicBool::new(false);
        let results: Vec<Result<Option<(bool, u64)>>> = chunk
            .par_iter()
            .map(|ix| {
                if used.load(Ordering::Relaxed) >= budget {
                    exhausted.store(true, Ordering::Relaxed);
                    return Ok(None);
                }
                let order: Vec<Combination> = ix.iter().map(|&i| pool[i]).collect();
                let cert = tree_search(&SearchProblem::s1(order, false)?)?;
                used.fetch_add(cert.stats.lps_solved, Ordering::Relaxed);
                Ok(Some((cert.is_infeasible(), cert.stats.lps_solved)))
            })
            .collect();
        for (ix, r) in chunk.iter().zip(results) {
            match r? {
                Some((infeasible, lps)) => {
                    out.subsets_checked += 1;
                    out.lps_solved += lps;
                    if infeasible {
                        out.sets.push(ix.iter().map(|&i| pool[i]).collect());
                    }
                }
                None => out.complete = false,
            }
        }
        if exhausted.load(Ordering::Relaxed) || (!done && out.lps_solved >= budget) {
            out.complete = false;
            break;
        }
    }
    Ok(out)
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        if idx[pos] < n - k + pos {
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::ba;
    use crate::rational::rat;

    #[test]
    fn combination_parsing_and_count() {
        let c = Combination::parse("(abd;e)").unwrap();
        assert_eq!(c.triplet, Subset::from_items(&[0, 1, 3]));
        assert_eq!(c.base, Subset::from_items(&[4]));
        assert_eq!(c.to_string(), "(abd;e)");
        assert_eq!(Combination::parse("(abc;)").unwrap().base, Subset::EMPTY);
        assert!(Combination::parse("(ab;c)").is_err());
        assert!(Combination::parse("(abc;a)").is_err());
        assert!(Combination::parse("abc;d").is_err());
        assert_eq!(all_combinations(5).len(), 40);
        assert_eq!(all_combinations(4).len(), 8);
    }

    #[test]
    fn branch_constraints_of_the_worked_example() {
        // (abd;e) with minimum g(d|e) + g(ab|e).
        let c = Combination::parse("(abd;e)").unwrap();
        let v = |items: &[usize]| value_var(Subset::from_items(items));
        let (a, b, d, e) = (0, 1, 3, 4);
        let term_a = v(&[a, e]) + v(&[b, d, e]);
        let term_b = v(&[b, e]) + v(&[a, d, e]);
        let term_d = v(&[d, e]) + v(&[a, b, e]);
        let [ineq, eq] = c.branch_constraints(2);
        assert_eq!(ineq, Constraint::ge(term_a.clone(), term_d));
        assert_eq!(eq, Constraint::eq(term_b, term_a));
    }

    #[test]
    fn empty_base_uses_only_triplet_subsets() {
        let c = Combination::parse("(abd;)").unwrap();
        let allowed = Subset::from_items(&[0, 1, 3]);
        for r in 0..3 {
            for con in c.branch_constraints(r) {
                for (var, _) in con.expr.terms() {
                    assert!(Subset::from_mask(var as u32 + 1).is_subset_of(allowed));
                }
            }
        }
    }

    #[test]
    fn all_three_branches_together_force_equality() {
        let c = Combination::parse("(abc;)").unwrap();
        let cons: Vec<Constraint> = (0..3).flat_map(|r| c.branch_constraints(r)).collect();
        let t = c.terms();
        let differ = Constraint::ge(t[0].clone(), t[1].clone() + LinExpr::constant(int(1)));
        let mut with = cons.clone();
        with.push(differ);
        assert!(!solve(&LpProblem::feasibility(7, with)).unwrap().is_feasible());
        assert!(solve(&LpProblem::feasibility(7, cons)).unwrap().is_feasible());
    }

    #[test]
    fn fixed_constraints_and_root() {
        let (n, fixed) = s1_fixed_constraints();
        assert_eq!(n, 31);
        assert_eq!(fixed.len(), 8);
        assert!(fixed.iter().all(|c| *c.expr.constant_term() == int(-1)));
        assert!(solve(&LpProblem::feasibility(n, fixed)).unwrap().is_feasible());
    }

    #[test]
    fn second_set_is_infeasible_and_replays() {
        let p = SearchProblem::s1(s1_set2(), false).unwrap();
        let cert = tree_search(&p).unwrap();
        assert!(cert.is_infeasible());
        assert!(cert.stats.lps_solved <= 729);
        assert!(replay(&cert).unwrap().valid);
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn first_set_admits_a_witness() {
        let p = SearchProblem::s1(s1_set1(), false).unwrap();
        let cert = tree_search(&p).unwrap();
        let SearchResult::Feasible { witness, path } = &cert.result else {
            panic!("expected a feasible leaf");
        };
        let (_, fixed) = s1_fixed_constraints();
        assert!(fixed.iter().all(|c| c.is_satisfied(witness)));
        for c in s1_set1() {
            assert!(satisfied_branch(c, witness).is_some(), "{c}");
        }
        assert_eq!(path.len(), 6);
        assert!(replay(&cert).unwrap().valid);
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let p = SearchProblem::s1(s1_set2(), false).unwrap();
        let cert = tree_search(&p).unwrap();
        let mut dropped = cert.clone();
        if let SearchResult::Infeasible { pruned } = &mut dropped.result {
            pruned.pop();
        }
        assert!(!replay(&dropped).unwrap().valid);
        let mut swapped = cert.clone();
        swapped.problem.order.swap(0, 5);
        assert!(!replay(&swapped).unwrap().valid);
    }

    #[test]
    fn short_orders_are_feasible() {
        for branching in [Branching::Static, Branching::FirstViolated, Branching::Strong] {
            let p = SearchProblem::s1(s1_set2()[..2].to_vec(), false)
                .unwrap()
                .with_branching(branching);
            let cert = tree_search(&p).unwrap();
            assert!(!cert.is_infeasible());
            assert!(replay(&cert).unwrap().valid);
        }
    }

    #[test]
    fn dynamic_branching_agrees_on_the_second_set() {
        for branching in [Branching::FirstViolated, Branching::Strong] {
            let p = SearchProblem::s1(s1_set2(), false).unwrap().with_branching(branching);
            let cert = tree_search(&p).unwrap();
            assert!(cert.is_infeasible());
            assert!(replay(&cert).unwrap().valid);
        }
    }

    #[test]
    fn reduced_constraints_imply_monotonicity() {
        // Each g(S) >= g(S - j) must be implied: adding its violation is infeasible.
        let m = 4;
        let base = monotone_submodular_constraints(m);
        for s in Subset::all(m).skip(1) {
            for j in s.items() {
                let mut cons = base.clone();
                cons.push(Constraint::ge(
                    value_var(s.without(j)),
                    value_var(s) + LinExpr::constant(int(1)),
                ));
                assert!(!solve(&LpProblem::feasibility(num_vars(m), cons)).unwrap().is_feasible());
            }
        }
    }

    #[test]
    fn gap_certifier_brackets_ba21() {
        let f = ba(2, 1).unwrap();
        let below = gs_gap_certifier(&f, &(rat(4, 3) - rat(1, 100)), true).unwrap();
        assert!(below.is_infeasible());
        assert!(replay(&below).unwrap().valid);
        let at = gs_gap_certifier(&f, &rat(4, 3), false).unwrap();
        let g = at.witness_function().unwrap();
        assert_eq!(approximation_ratio(&g, &f).unwrap().ratio, Some(rat(4, 3)));
        assert!(gs_gap_certifier(&f, &rat(1, 2), false).is_err());
    }

    #[test]
    fn sufficient_sets_over_a_small_pool() {
        let mut pool = s1_set2();
        pool.push(Combination::parse("(abc;d)").unwrap());
        let r = find_sufficient_sets_in(&pool, 6, u64::MAX).unwrap();
        assert!(r.complete);
        assert_eq!(r.subsets_checked, 7);
        assert!(r.sets.contains(&s1_set2()));
        assert!(!r.sets.contains(&s1_set1()));
        let r5 = find_sufficient_sets_in(&s1_set2(), 5, u64::MAX).unwrap();
        assert!(r5.sets.is_empty());
        let partial = find_sufficient_sets_in(&pool, 6, 0).unwrap();
        assert!(!partial.complete);
        assert!(find_sufficient_sets(4, 10).is_err());
    }

    #[test]
    fn next_combination_enumerates_all() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
