//! Approximation ratios, the closed-form lower bound for `BA(k, d)`, and the
//! weak-substitutes hybrid inequality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::setfn::{SetFunction, Subset};

/// Result of comparing an approximator `g` with a target `f`.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    /// Worst ratio over sets with `f(S) > 0`; `None` means unbounded.
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub ratio: Option<Rational>,
    /// Lowest-mask set attaining the ratio.
    pub argmax_set: Option<Subset>,
    /// Whether the one-sided bound holds everywhere.
    pub lower_ok: bool,
    /// Sets where the one-sided bound fails.
    pub violations: Vec<Subset>,
}

impl GapReport {
    /// True iff the bound holds everywhere and the ratio is finite and at most `rho`.
    pub fn within(&self, rho: &Rational) -> bool {
        self.lower_ok && self.ratio.as_ref().is_some_and(|r| r <= rho)
    }
}

fn gap(
    g: &SetFunction,
    f: &SetFunction,
    mut ratio_at: impl FnMut(&Rational, &Rational) -> Option<Rational>,
    mut violated: impl FnMut(&Rational, &Rational) -> bool,
) -> Result<GapReport> {
    if g.m() != f.m() {
        return Err(Error::domain("ground sets differ"));
    }
    let mut violations = Vec::new();
    let mut ratio: Option<Rational> = Some(Rational::one());
    let mut argmax: Option<Subset> = None;
    let mut unbounded = false;
    for s in f.subsets() {
        let (gv, fv) = (g.value(s), f.value(s));
        if violated(gv, fv) {
            violations.push(s);
        }
        if unbounded || !fv.is_positive() {
            continue;
        }
        match ratio_at(gv, fv) {
            None => {
                unbounded = true;
                ratio = None;
                argmax = Some(s);
            }
            Some(r) => {
                if argmax.is_none() || ratio.as_ref().is_some_and(|cur| r > *cur) {
                    ratio = Some(r);
                    argmax = Some(s);
                }
            }
        }
    }
    Ok(GapReport {
        ratio,
        argmax_set: argmax,
        lower_ok: violations.is_empty(),
        violations,
    })
}

/// `g` approximates `f` from below: `g <= f <= ρ g`; `ρ = max f(S)/g(S)`.
pub fn approximation_ratio(g: &SetFunction, f: &SetFunction) -> Result<GapReport> {
    gap(
        g,
        f,
        |gv, fv| gv.is_positive().then(|| fv / gv),
        |gv, fv| gv > fv || (fv.is_zero() && !gv.is_zero()),
    )
}

/// `g` approximates `f` from above: `f <= g <= ρ f`; `ρ = max g(S)/f(S)`.
/// Sets with `f(S) = 0` need `g(S) = 0`.
pub fn approximation_ratio_from_above(g: &SetFunction, f: &SetFunction) -> Result<GapReport> {
    let mut report = gap(g, f, |gv, fv| Some(gv / fv), |gv, fv| gv < fv)?;
    if let Some(s) = f.subsets().find(|&s| f.value(s).is_zero() && !g.value(s).is_zero()) {
        report.ratio = None;
        report.argmax_set = Some(s);
    }
    Ok(report)
}

/// Lower bound on the best GS approximation ratio of `BA(k, d)`.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaBound {
    /// `ρ(k, d)` is at least this.
    #[serde_as(as = "DisplayFromStr")]
    pub bound: Rational,
    /// `1/bound = (1/(d+1)) (1 + Σ_{h=1..d} h k^(h-1) / k^d)`.
    #[serde_as(as = "DisplayFromStr")]
    pub reciprocal: Rational,
    /// `1/(d+1) + 1/(k-1)`, a simpler upper bound on `reciprocal` for `k >= 3`.
    #[serde_as(as = "DisplayFromStr")]
    pub simplified_reciprocal: Rational,
}

pub fn ba_negative_bound(k: u32, d: u32) -> Result<BaBound> {
    if k < 2 || d < 1 {
        return Err(Error::domain("need k >= 2 and d >= 1"));
    }
    let kb = BigInt::from(k);
    let kd = kb.pow(d);
    let mut inner = Rational::one();
    for h in 1..=d {
        inner += Rational::new(BigInt::from(h) * kb.pow(h - 1), kd.clone());
    }
    let reciprocal = inner / int(d as i64 + 1);
    Ok(BaBound {
        bound: reciprocal.recip(),
        simplified_reciprocal: Rational::new(BigInt::one(), BigInt::from(d + 1))
            + Rational::new(BigInt::one(), BigInt::from(k - 1)),
        reciprocal,
    })
}

/// `g(B2 | C1) >= g(B2 | B1)` with `B2 = B ∖ B1`.
///
/// `B` must be a symmetry class of `g`, `B1 ⊆ B`, `|C1| = |B1|` and `C1`
/// disjoint from `B2`.
pub fn lemma_key_check(g: &SetFunction, b: Subset, b1: Subset, c1: Subset) -> Result<bool> {
    if !g.symmetry_classes().classes().contains(&b) {
        return Err(Error::domain("B must be a symmetry class"));
    }
    if !b1.is_subset_of(b) {
        return Err(Error::domain("B1 must be a subset of B"));
    }
    let b2 = b.difference(b1);
    if c1.len() != b1.len() || !c1.is_disjoint(b2) || !c1.is_subset_of(g.full()) {
        return Err(Error::domain("C1 must match |B1| and avoid B ∖ B1"));
    }
    Ok(g.marginal(b2, c1) >= g.marginal(b2, b1))
}

/// A failing `(B, B1, C1)` of [`lemma_key_check`] over every class and every
/// valid choice of `B1` and `C1`, or `None` if all hold.
pub fn lemma_key_exhaustive(g: &SetFunction) -> Option<(Subset, Subset, Subset)> {
    let classes = g.symmetry_classes();
    for &b in classes.classes() {
        for b1 in b.subsets() {
            let b2 = b.difference(b1);
            let pool = g.full().difference(b2);
            for c1 in pool.subsets().filter(|c| c.len() == b1.len()) {
                if g.marginal(b2, c1) < g.marginal(b2, b1) {
                    return Some((b, b1, c1));
                }
            }
        }
    }
    None
}
