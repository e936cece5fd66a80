//! Set functions over small ground sets with exact rational values.
//!
//! A [`SetFunction`] stores one value per subset of `{0, .., m-1}`; bit `i` of
//! a [`Subset`] mask stands for item `i`, and the value table is indexed by
//! mask. Every function is normalized: the empty set has value zero.

use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Hard cap on the ground-set size (table of 16M entries).
pub const MAX_ITEMS: usize = 24;

/// A subset of the ground set, as a bitmask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_items(items: &[usize]) -> Self {
        Subset(items.iter().fold(0, |m, &i| m | (1 << i)))
    }

    /// All `m` items.
    pub fn full(m: usize) -> Self {
        Subset(((1u64 << m) - 1) as u32)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Items in increasing order.
    pub fn items(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, in increasing mask order (starting with the empty set).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Every subset of an `m`-item ground set, in increasing mask order.
    pub fn all(m: usize) -> impl Iterator<Item = Subset> {
        (0..(1u32 << m)).map(Subset)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items()).finish()
    }
}

/// A normalized valuation over `m` items with exact values on every subset.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFunction {
    m: usize,
    names: Option<Vec<String>>,
    values: Vec<Rational>,
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(format_rational).collect();
        f.debug_struct("SetFunction")
            .field("m", &self.m)
            .field("names", &self.names)
            .field("values", &vals)
            .finish()
    }
}

impl SetFunction {
    /// Builds a function from its full value table (indexed by mask).
    pub fn from_values(m: usize, values: Vec<Rational>) -> Result<Self> {
        if m == 0 || m > MAX_ITEMS {
            return Err(Error::domain(format!("ground-set size {m} outside 1..={MAX_ITEMS}")));
        }
        if values.len() != 1 << m {
            return Err(Error::domain(format!(
                "value table has {} entries, expected 2^{m} = {}",
                values.len(),
                1usize << m
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::domain("value of the empty set must be 0"));
        }
        Ok(SetFunction { m, names: None, values })
    }

    /// Tabulates `f` over all subsets. Panics if `f(∅) != 0` or `m` is out of range.
    pub fn from_fn(m: usize, f: impl FnMut(Subset) -> Rational) -> Self {
        assert!((1..=MAX_ITEMS).contains(&m), "ground-set size {m} out of range");
        let values: Vec<Rational> = Subset::all(m).map(f).collect();
        assert!(values[0].is_zero(), "set function must vanish on the empty set");
        SetFunction { m, names: None, values }
    }

    pub fn zero(m: usize) -> Self {
        Self::from_fn(m, |_| Rational::zero())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.m {
            return Err(Error::domain(format!(
                "{} names given for {} items",
                names.len(),
                self.m
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub(crate) fn set_names(mut self, names: Option<Vec<String>>) -> Self {
        debug_assert!(names.as_ref().is_none_or(|n| n.len() == self.m));
        self.names = names;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Label of item `i`: its name if present, otherwise the index.
    pub fn item_label(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        }
    }

    /// Index of the item called `name` (or given by its decimal index).
    pub fn item_index(&self, name: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i: &usize| i < self.m)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.m)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        Subset::all(self.m)
    }

    /// `f(S)`. Panics if `S` is not a subset of the ground set.
    pub fn value(&self, s: Subset) -> &Rational {
        &self.values[s.index()]
    }

    /// `f(S)`, rejecting masks outside the ground set.
    pub fn evaluate(&self, s: Subset) -> Result<&Rational> {
        self.values
            .get(s.index())
            .ok_or_else(|| Error::domain(format!("mask {} outside a {}-item ground set", s.mask(), self.m)))
    }

    /// `f(T | S) = f(T ∪ S) - f(S)`.
    pub fn marginal(&self, t: Subset, s: Subset) -> Rational {
        self.value(t.union(s)) - self.value(s)
    }

    /// `f(j | S)` for a single item.
    pub fn item_marginal(&self, j: usize, s: Subset) -> Rational {
        self.value(s.with(j)) - self.value(s)
    }

    pub fn map(&self, mut f: impl FnMut(Subset, &Rational) -> Rational) -> SetFunction {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| f(Subset::from_mask(k as u32), v))
            .collect();
        SetFunction {
            m: self.m,
            names: self.names.clone(),
            values,
        }
    }

    pub fn scale(&self, c: &Rational) -> SetFunction {
        self.map(|_, v| v * c)
    }

    /// True iff `self(S) <= other(S)` for every `S`.
    pub fn le_pointwise(&self, other: &SetFunction) -> bool {
        self.m == other.m && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `Σ_S f(S)`, the potential that strictly grows under max-symmetrization.
    pub fn potential(&self) -> Rational {
        self.values.iter().sum()
    }

    /// True iff `f(Si) = f(Sj)` for every `S` avoiding `i` and `j`.
    pub fn is_pair_symmetric(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let rest = self.full().without(i).without(j);
        rest.subsets().all(|s| self.value(s.with(i)) == self.value(s.with(j)))
    }

    /// Partition of the items into symmetry classes.
    pub fn symmetry_classes(&self) -> SymmetryPartition {
        let mut uf = UnionFind::new(self.m);
        for i in 0..self.m {
            for j in i + 1..self.m {
                if uf.find(i) != uf.find(j) && self.is_pair_symmetric(i, j) {
                    uf.union(i, j);
                }
            }
        }
        SymmetryPartition::from_labels(&(0..self.m).map(|i| uf.find(i)).collect::<Vec<_>>())
    }

    /// Relabels items: item `i` of `self` becomes item `perm[i]` of the result,
    /// so `result(S) = self(perm⁻¹(S))`.
    pub fn permute_items(&self, perm: &[usize]) -> Result<SetFunction> {
        if perm.len() != self.m {
            return Err(Error::domain("permutation length differs from ground-set size"));
        }
        let mut inv = vec![usize::MAX; self.m];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.m || inv[p] != usize::MAX {
                return Err(Error::domain("not a permutation"));
            }
            inv[p] = i;
        }
        let mut values = vec![Rational::zero(); 1 << self.m];
        for s in self.subsets() {
            let image = Subset::from_items(&s.items().map(|i| perm[i]).collect::<Vec<_>>());
            values[image.index()] = self.value(s).clone();
        }
        let names = self.names.as_ref().map(|n| inv.iter().map(|&i| n[i].clone()).collect());
        Ok(SetFunction {
            m: self.m,
            names,
            values,
        })
    }

    /// The function restricted to subsets of `keep`, with the kept items
    /// renumbered in increasing order.
    pub fn restrict(&self, keep: Subset) -> Result<SetFunction> {
        if !keep.is_subset_of(self.full()) || keep.is_empty() {
            return Err(Error::domain("restriction must keep a nonempty subset of the items"));
        }
        let kept: Vec<usize> = keep.items().collect();
        let f = SetFunction::from_fn(kept.len(), |s| {
            let orig = Subset::from_items(&s.items().map(|i| kept[i]).collect::<Vec<_>>());
            self.value(orig).clone()
        });
        Ok(f.set_names(
            self.names
                .as_ref()
                .map(|n| kept.iter().map(|&i| n[i].clone()).collect()),
        ))
    }

    /// Adds a new last item with marginal value zero everywhere.
    pub fn with_dummy_item(&self, name: Option<String>) -> Result<SetFunction> {
        if self.m + 1 > MAX_ITEMS {
            return Err(Error::domain("ground-set cap exceeded"));
        }
        let m = self.m;
        let f = SetFunction::from_fn(m + 1, |s| self.value(s.without(m)).clone());
        let names = self.names.as_ref().map(|n| {
            let mut n = n.clone();
            n.push(name.unwrap_or_else(|| format!("{m}")));
            n
        });
        Ok(f.set_names(names))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("valuation serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<SetFunction> {
        let file: ValuationFile = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        file.into_set_function()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<SetFunction> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}

impl SetFunction {
    fn to_file(&self) -> ValuationFile {
        ValuationFile {
            m: self.m,
            names: self.names.clone(),
            values: self.values.iter().map(format_rational).collect(),
        }
    }
}

impl Serialize for SetFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ValuationFile::deserialize(d)?
            .into_set_function()
            .map_err(serde::de::Error::custom)
    }
}

/// On-disk valuation format: `{"m": .., "names": [..], "values": ["0", ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValuationFile {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub values: Vec<String>,
}

impl ValuationFile {
    pub fn into_set_function(self) -> Result<SetFunction> {
        if self.m == 0 || self.m > MAX_ITEMS {
            return Err(Error::parse(
                "m",
                format!("ground-set size {} outside 1..={MAX_ITEMS}", self.m),
            ));
        }
        if self.values.len() != 1 << self.m {
            return Err(Error::parse(
                "values",
                format!(
                    "expected 2^{} = {} entries, found {}",
                    self.m,
                    1usize << self.m,
                    self.values.len()
                ),
            ));
        }
        let mut values = Vec::with_capacity(self.values.len());
        for (k, v) in self.values.iter().enumerate() {
            let r = parse_rational(v).map_err(|e| Error::parse(format!("values[{k}]"), e.to_string()))?;
            values.push(r);
        }
        if !values[0].is_zero() {
            return Err(Error::parse("values[0]", "value of the empty set must be \"0\""));
        }
        if let Some(names) = &self.names {
            if names.len() != self.m {
                return Err(Error::parse(
                    "names",
                    format!("expected {} names, found {}", self.m, names.len()),
                ));
            }
        }
        Ok(SetFunction {
            m: self.m,
            names: self.names,
            values,
        })
    }
}

/// Items grouped into classes of mutually symmetric items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryPartition {
    classes: Vec<Subset>,
}

impl SymmetryPartition {
    /// Builds the partition from one class label per item. Classes are ordered
    /// by their smallest item.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut classes: Vec<Subset> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match seen.iter().find(|(lab, _)| *lab == l) {
                Some(&(_, c)) => classes[c] = classes[c].with(i),
                None => {
                    seen.push((l, classes.len()));
                    classes.push(Subset::singleton(i));
                }
            }
        }
        SymmetryPartition { classes }
    }

    pub fn classes(&self) -> &[Subset] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> Subset {
        *self
            .classes
            .iter()
            .find(|c| c.contains(i))
            .expect("item belongs to some class")
    }

    pub fn same_class(&self, i: usize, j: usize) -> bool {
        self.class_of(i).contains(j)
    }

    /// True iff every class of `finer` lies inside a class of `self`.
    pub fn is_coarsening_of(&self, finer: &SymmetryPartition) -> bool {
        finer
            .classes
            .iter()
            .all(|c| self.classes.iter().any(|big| c.is_subset_of(*big)))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
