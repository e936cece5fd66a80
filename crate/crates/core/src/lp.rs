//! Exact linear feasibility and optimization over the rationals.
//!
//! Two-phase primal simplex on a dense tableau with Bland's rule. Variables
//! are free unless the caller constrains them; free variables are pivoted into
//! the basis up front and never leave it, so the simplex proper only works on
//! the nonnegative slack and artificial columns.
//!
//! Arithmetic runs on machine-word rationals and restarts on big rationals
//! at the first overflow. Every feasible point returned by [`solve`] is
//! re-checked against all constraints before it is handed back, and every
//! Farkas certificate is re-checked the same way.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `Σ coeff_i · x_i + constant`, with no zero coefficients stored.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LinExpr {
    #[serde_as(as = "BTreeMap<_, DisplayFromStr>")]
    terms: BTreeMap<usize, Rational>,
    #[serde_as(as = "DisplayFromStr")]
    constant: Rational,
}

impl LinExpr {
    pub fn zero() -> Self {
        LinExpr::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinExpr {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut e = LinExpr::zero();
        e.add_term(i, c);
        e
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(i).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_constant(&mut self, c: &Rational) {
        self.constant += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.terms.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut v = self.constant.clone();
        for (&i, c) in &self.terms {
            v += c * &x[i];
        }
        v
    }

    pub fn scaled(&self, c: &Rational) -> LinExpr {
        if c.is_zero() {
            return LinExpr::zero();
        }
        LinExpr {
            terms: self.terms.iter().map(|(&i, a)| (i, a * c)).collect(),
            constant: &self.constant * c,
        }
    }
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(mut self, rhs: LinExpr) -> LinExpr {
        for (i, c) in rhs.terms {
            self.add_term(i, c);
        }
        self.constant += rhs.constant;
        self
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(self, rhs: LinExpr) -> LinExpr {
        self + (-rhs)
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        LinExpr {
            terms: self.terms.into_iter().map(|(i, c)| (i, -c)).collect(),
            constant: -self.constant,
        }
    }
}

impl Mul<&Rational> for LinExpr {
    type Output = LinExpr;
    fn mul(self, rhs: &Rational) -> LinExpr {
        self.scaled(rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// `expr (rel) 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub expr: LinExpr,
    pub rel: Relation,
}

impl Constraint {
    /// `lhs (rel) rhs`.
    pub fn new(lhs: LinExpr, rel: Relation, rhs: LinExpr) -> Self {
        Constraint { expr: lhs - rhs, rel }
    }

    pub fn ge(lhs: LinExpr, rhs: LinExpr) -> Self {
        Self::new(lhs, Relation::Ge, rhs)
    }

    pub fn le(lhs: LinExpr, rhs: LinExpr) -> Self {
        Self::new(lhs, Relation::Le, rhs)
    }

    pub fn eq(lhs: LinExpr, rhs: LinExpr) -> Self {
        Self::new(lhs, Relation::Eq, rhs)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let v = self.expr.eval(x);
        match self.rel {
            Relation::Eq => v.is_zero(),
            Relation::Le => !v.is_positive(),
            Relation::Ge => !v.is_negative(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarBound {
    pub var: usize,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub lower: Option<Rational>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub upper: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpProblem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    #[serde(default)]
    pub objective: Option<(LinExpr, Direction)>,
    #[serde(default)]
    pub bounds: Vec<VarBound>,
}

impl LpProblem {
    pub fn feasibility(num_vars: usize, constraints: Vec<Constraint>) -> Self {
        LpProblem {
            num_vars,
            constraints,
            objective: None,
            bounds: Vec::new(),
        }
    }

    pub fn with_objective(mut self, expr: LinExpr, dir: Direction) -> Self {
        self.objective = Some((expr, dir));
        self
    }

    pub fn with_bound(mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> Self {
        self.bounds.push(VarBound { var, lower, upper });
        self
    }

    /// Constraints plus variable bounds, all as constraints.
    fn all_constraints(&self) -> Vec<Constraint> {
        let mut out = self.constraints.clone();
        for b in &self.bounds {
            if let Some(lo) = &b.lower {
                out.push(Constraint::ge(LinExpr::var(b.var), LinExpr::constant(lo.clone())));
            }
            if let Some(hi) = &b.upper {
                out.push(Constraint::le(LinExpr::var(b.var), LinExpr::constant(hi.clone())));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let in_range = |e: &LinExpr| e.max_var().is_none_or(|v| v < self.num_vars);
        if !self.constraints.iter().all(|c| in_range(&c.expr)) {
            return Err(Error::domain("constraint references a variable beyond num_vars"));
        }
        if let Some((obj, _)) = &self.objective {
            if !in_range(obj) {
                return Err(Error::domain("objective references a variable beyond num_vars"));
            }
        }
        if self.bounds.iter().any(|b| b.var >= self.num_vars) {
            return Err(Error::domain("bound on a variable beyond num_vars"));
        }
        Ok(())
    }
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum LpOutcome {
    Feasible {
        #[serde_as(as = "Vec<DisplayFromStr>")]
        witness: Vec<Rational>,
        #[serde_as(as = "Option<DisplayFromStr>")]
        objective: Option<Rational>,
    },
    Infeasible,
    /// Feasible, but the objective is unbounded in the requested direction.
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Solves `p` exactly.
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    Ok(solve_inner(p, false)?.0)
}

/// As [`solve`], and for an infeasible problem also returns Farkas
/// multipliers `y`, one per constraint (constraints first, then the lower and
/// upper bound of each [`VarBound`] that is present), passing
/// [`is_farkas_certificate`].
pub fn solve_with_farkas(p: &LpProblem) -> Result<(LpOutcome, Option<Vec<Rational>>)> {
    solve_inner(p, true)
}

/// Whether `y` proves `constraints` infeasible: `Σ y_k expr_k` has no variable
/// terms and a positive constant, while `y_k <= 0` on `>=` rows and
/// `y_k >= 0` on `<=` rows force the sum to be at most zero at any feasible
/// point.
pub fn is_farkas_certificate(constraints: &[Constraint], y: &[Rational]) -> bool {
    if y.len() != constraints.len() {
        return false;
    }
    let mut sum = LinExpr::zero();
    for (c, yk) in constraints.iter().zip(y) {
        let sign_ok = match c.rel {
            Relation::Eq => true,
            Relation::Ge => !yk.is_positive(),
            Relation::Le => !yk.is_negative(),
        };
        if !sign_ok {
            return false;
        }
        if !yk.is_zero() {
            sum = sum + c.expr.scaled(yk);
        }
    }
    sum.terms().next().is_none() && sum.constant_term().is_positive()
}

fn solve_inner(p: &LpProblem, want_farkas: bool) -> Result<(LpOutcome, Option<Vec<Rational>>)> {
    p.validate()?;
    let constraints = p.all_constraints();
    // Machine-word rationals first; any overflow reruns with big rationals.
    let (outcome, farkas) = match run::<Ratio<i64>>(p, &constraints, want_farkas) {
        Some(done) => done,
        None => run::<Rational>(p, &constraints, want_farkas).expect("big rationals do not overflow"),
    };
    if let Some(y) = &farkas {
        if !is_farkas_certificate(&constraints, y) {
            return Err(Error::Internal("simplex produced an invalid Farkas certificate".into()));
        }
    }
    if let LpOutcome::Feasible { witness, .. } = &outcome {
        if let Some(bad) = constraints.iter().position(|c| !c.is_satisfied(witness)) {
            return Err(Error::Internal(format!("simplex witness violates constraint {bad}")));
        }
    }
    Ok((outcome, farkas))
}

/// One simplex run over scalar type `T`; `None` on arithmetic overflow.
fn run<T: Scalar>(
    p: &LpProblem,
    constraints: &[Constraint],
    want_farkas: bool,
) -> Option<(LpOutcome, Option<Vec<Rational>>)> {
    let mut t = Tableau::<T>::build(p.num_vars, constraints, want_farkas)?;
    if !t.phase_one()? {
        let farkas = t.obj_trace.take().map(|y| y.iter().map(T::to_rational).collect());
        return Some((LpOutcome::Infeasible, farkas));
    }
    t.trace = None;
    t.obj_trace = None;
    let outcome = match &p.objective {
        None => LpOutcome::Feasible {
            witness: t.solution(),
            objective: None,
        },
        Some((obj, dir)) => {
            let cost = match dir {
                Direction::Minimize => obj.clone(),
                Direction::Maximize => -obj.clone(),
            };
            if !t.phase_two(&cost)? {
                LpOutcome::Unbounded
            } else {
                let x = t.solution();
                let v = obj.eval(&x);
                LpOutcome::Feasible {
                    witness: x,
                    objective: Some(v),
                }
            }
        }
    };
    Some((outcome, None))
}

/// Exact field arithmetic that may report overflow as `None`.
trait Scalar: Clone + PartialOrd {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn minus(&self, o: &Self) -> Option<Self>;
    fn times(&self, o: &Self) -> Option<Self>;
    fn over(&self, o: &Self) -> Option<Self>;
    fn negated(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
}

impl Scalar for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn over(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl Scalar for Ratio<i64> {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn over(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn negated(&self) -> Option<Self> {
        Some(Ratio::new_raw(self.numer().checked_neg()?, *self.denom()))
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(Ratio::new_raw(r.numer().to_i64()?, r.denom().to_i64()?))
    }
    fn to_rational(&self) -> Rational {
        Rational::new((*self.numer()).into(), (*self.denom()).into())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Free,
    Slack,
    Artificial,
}

struct Tableau<T> {
    /// Rows of `[coefficients..., rhs]`.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    /// Rows whose basic variable is free; excluded from ratio tests.
    free_row: Vec<bool>,
    /// Redundant rows dropped after phase one.
    dead_row: Vec<bool>,
    kinds: Vec<ColKind>,
    /// Artificial columns that have left the basis never return.
    dead_col: Vec<bool>,
    num_vars: usize,
    /// When present, row `r` equals `Σ_k trace[r][k] · (original row k)`.
    trace: Option<Vec<Vec<T>>>,
    /// Phase-one objective row as a combination of original rows, excluding
    /// artificial columns.
    obj_trace: Option<Vec<T>>,
}

impl<T: Scalar> Tableau<T> {
    fn build(num_vars: usize, constraints: &[Constraint], track: bool) -> Option<Self> {
        let num_slack = constraints.iter().filter(|c| c.rel != Relation::Eq).count();
        let ncols = num_vars + num_slack;
        let mut kinds = vec![ColKind::Free; num_vars];
        kinds.extend(std::iter::repeat_n(ColKind::Slack, num_slack));
        let mut rows = Vec::with_capacity(constraints.len());
        let mut slack = num_vars;
        for c in constraints {
            let mut row = vec![T::nil(); ncols + 1];
            for (i, a) in c.expr.terms() {
                row[i] = T::from_rational(a)?;
            }
            row[ncols] = T::from_rational(&-c.expr.constant_term().clone())?;
            match c.rel {
                Relation::Le => {
                    row[slack] = T::unit();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = T::unit().negated()?;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            rows.push(row);
        }
        let n = rows.len();
        Some(Tableau {
            rows,
            basis: vec![usize::MAX; n],
            free_row: vec![false; n],
            dead_row: vec![false; n],
            dead_col: vec![false; ncols],
            kinds,
            num_vars,
            trace: track.then(|| {
                (0..n)
                    .map(|r| {
                        let mut v = vec![T::nil(); n];
                        v[r] = T::unit();
                        v
                    })
                    .collect()
            }),
            obj_trace: None,
        })
    }

    fn scale_row(&mut self, r: usize, factor: &T) -> Option<()> {
        scale(&mut self.rows[r], factor)?;
        if let Some(tr) = &mut self.trace {
            scale(&mut tr[r], factor)?;
        }
        Some(())
    }

    fn ncols(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, r: usize) -> &T {
        &self.rows[r][self.ncols()]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: Option<&mut Vec<T>>) -> Option<()> {
        let width = self.ncols() + 1;
        let inv = T::unit().over(&self.rows[r][c])?;
        self.scale_row(r, &inv)?;
        let nz: Vec<usize> = (0..width).filter(|&k| !self.rows[r][k].is_nil()).collect();
        let prow = std::mem::take(&mut self.rows[r]);
        let ptrace = self.trace.as_mut().map(|tr| std::mem::take(&mut tr[r]));
        for i in 0..self.rows.len() {
            let row = &mut self.rows[i];
            if i == r || row.is_empty() || row[c].is_nil() {
                continue;
            }
            let factor = row[c].clone();
            for &k in &nz {
                row[k] = row[k].minus(&factor.times(&prow[k])?)?;
            }
            if let (Some(tr), Some(pt)) = (&mut self.trace, &ptrace) {
                sub_scaled(&mut tr[i], &factor, pt)?;
            }
        }
        if let Some(obj) = obj {
            if !obj[c].is_nil() {
                let factor = obj[c].clone();
                for &k in &nz {
                    obj[k] = obj[k].minus(&factor.times(&prow[k])?)?;
                }
                if let (Some(ot), Some(pt)) = (&mut self.obj_trace, &ptrace) {
                    sub_scaled(ot, &factor, pt)?;
                }
            }
        }
        self.rows[r] = prow;
        if let (Some(tr), Some(pt)) = (&mut self.trace, ptrace) {
            tr[r] = pt;
        }
        self.basis[r] = c;
        Some(())
    }

    fn live_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows.len()).filter(|&r| !self.dead_row[r])
    }

    /// Phase one: eliminate free variables, then minimize the sum of
    /// artificials. Returns false iff infeasible.
    fn phase_one(&mut self) -> Option<bool> {
        // Free variables into the basis.
        for j in 0..self.num_vars {
            let r = (0..self.rows.len()).find(|&r| !self.free_row[r] && !self.rows[r][j].is_nil());
            if let Some(r) = r {
                self.pivot(r, j, None)?;
                self.free_row[r] = true;
            }
        }
        let ncols = self.ncols();
        // Nonnegative right-hand sides on the remaining rows.
        let minus_one = T::unit().negated()?;
        for r in 0..self.rows.len() {
            if !self.free_row[r] && self.rows[r][ncols].is_neg() {
                self.scale_row(r, &minus_one)?;
            }
        }
        // Reuse a slack column as the initial basic variable where it is a
        // positive unit-like column confined to a single row.
        let mut needs_artificial = Vec::new();
        for r in 0..self.rows.len() {
            if self.free_row[r] {
                continue;
            }
            let candidate = (self.num_vars..ncols).find(|&c| {
                self.kinds[c] == ColKind::Slack
                    && self.rows[r][c].is_pos()
                    && !self.basis.contains(&c)
                    && (0..self.rows.len()).all(|i| i == r || self.rows[i][c].is_nil())
            });
            match candidate {
                Some(c) => {
                    let inv = T::unit().over(&self.rows[r][c])?;
                    self.scale_row(r, &inv)?;
                    self.basis[r] = c;
                }
                None => needs_artificial.push(r),
            }
        }
        let num_art = needs_artificial.len();
        if num_art == 0 {
            return Some(true);
        }
        // Append artificial columns (before the rhs column).
        for row in self.rows.iter_mut() {
            let rhs = row.pop().expect("row has rhs");
            row.extend(std::iter::repeat_with(T::nil).take(num_art));
            row.push(rhs);
        }
        for (k, &r) in needs_artificial.iter().enumerate() {
            let c = ncols + k;
            self.rows[r][c] = T::unit();
            self.basis[r] = c;
        }
        self.kinds.extend(std::iter::repeat_n(ColKind::Artificial, num_art));
        self.dead_col.extend(std::iter::repeat_n(false, num_art));

        // Reduced costs for min Σ artificials: obj = -Σ_{artificial rows} row.
        let width = self.ncols() + 1;
        let mut obj = vec![T::nil(); width];
        for &r in &needs_artificial {
            for (k, o) in obj.iter_mut().enumerate() {
                if !self.rows[r][k].is_nil() && self.kinds.get(k) != Some(&ColKind::Artificial) {
                    *o = o.minus(&self.rows[r][k])?;
                }
            }
        }
        if let Some(tr) = &self.trace {
            let mut ot = vec![T::nil(); tr.len()];
            for &r in &needs_artificial {
                sub_scaled(&mut ot, &T::unit(), &tr[r])?;
            }
            self.obj_trace = Some(ot);
        }
        // obj[width-1] holds -(current objective value).
        self.simplex(&mut obj)?;
        if !obj[width - 1].is_nil() {
            return Some(false);
        }
        // Drive remaining artificials out of the basis.
        for r in 0..self.rows.len() {
            if self.dead_row[r] || self.kinds[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            let c =
                (self.num_vars..self.ncols()).find(|&c| self.kinds[c] == ColKind::Slack && !self.rows[r][c].is_nil());
            match c {
                Some(c) => self.pivot(r, c, None)?,
                None => self.dead_row[r] = true,
            }
        }
        for c in 0..self.ncols() {
            if self.kinds[c] == ColKind::Artificial {
                self.dead_col[c] = true;
            }
        }
        Some(true)
    }

    /// Bland's-rule primal simplex minimizing the objective whose reduced-cost
    /// row is `obj`. Returns false iff unbounded.
    fn simplex(&mut self, obj: &mut Vec<T>) -> Option<bool> {
        let ncols = self.ncols();
        loop {
            let entering = (0..ncols).find(|&c| self.kinds[c] != ColKind::Free && !self.dead_col[c] && obj[c].is_neg());
            let Some(c) = entering else { return Some(true) };
            let mut best: Option<(usize, T)> = None;
            for r in self.live_rows() {
                if self.free_row[r] || !self.rows[r][c].is_pos() {
                    continue;
                }
                let ratio = self.rhs(r).over(&self.rows[r][c])?;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else { return Some(false) };
            let leaving = self.basis[r];
            self.pivot(r, c, Some(obj))?;
            if self.kinds[leaving] == ColKind::Artificial {
                self.dead_col[leaving] = true;
            }
        }
    }

    /// Phase two for `min cost·x`. Returns false iff unbounded.
    fn phase_two(&mut self, cost: &LinExpr) -> Option<bool> {
        let width = self.ncols() + 1;
        let mut obj = vec![T::nil(); width];
        for (i, c) in cost.terms() {
            obj[i] = T::from_rational(c)?;
        }
        for r in self.live_rows().collect::<Vec<_>>() {
            let b = self.basis[r];
            if obj[b].is_nil() {
                continue;
            }
            let factor = obj[b].clone();
            sub_scaled(&mut obj, &factor, &self.rows[r])?;
        }
        // A nonbasic free column with nonzero reduced cost can move either way.
        let mut basic = vec![false; self.ncols()];
        for r in self.live_rows() {
            basic[self.basis[r]] = true;
        }
        if (0..self.num_vars).any(|j| !basic[j] && !obj[j].is_nil()) {
            return Some(false);
        }
        self.simplex(&mut obj)
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_vars];
        for r in self.live_rows() {
            let b = self.basis[r];
            if b < self.num_vars {
                x[b] = self.rhs(r).to_rational();
            }
        }
        x
    }
}

fn scale<T: Scalar>(v: &mut [T], factor: &T) -> Option<()> {
    for x in v.iter_mut().filter(|x| !x.is_nil()) {
        *x = x.times(factor)?;
    }
    Some(())
}

/// `dst -= factor · src`, skipping zeros of `src`.
fn sub_scaled<T: Scalar>(dst: &mut [T], factor: &T, src: &[T]) -> Option<()> {
    for (d, v) in dst.iter_mut().zip(src) {
        if !v.is_nil() {
            *d = d.minus(&factor.times(v)?)?;
        }
    }
    Some(())
}
