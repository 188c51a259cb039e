//! Exact enumeration of the integer points of a bounded polyhedron over a
//! real cyclotomic field.
//!
//! The search fixes coordinates one at a time (project-and-lift). At every
//! node the range of the next coordinate comes from an integer outer
//! relaxation of the system, either projected ahead of time by
//! Fourier-Motzkin elimination or bounded by exact linear programming. Each
//! leaf is then tested against the exact constraints, so both methods return
//! exactly the integer points of the system.

mod fm;
pub mod lp;
mod relax;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::cyclo::{Cyclotomic, Rational, Sign};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scpoly::SSimplex;

use lp::LpResult;
pub(crate) use relax::ExactRow;
use relax::{IntRow, BOX_LIMIT};

/// Inequalities `<normals[j], (1, x)> >= rhs[j]` with an integer box
/// containing every solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub normals: Vec<Vec<Cyclotomic>>,
    pub rhs: Vec<Cyclotomic>,
    /// Inclusive integer bounds per coordinate.
    pub bounds_hint: Vec<(i64, i64)>,
}

fn bound_to_i64(v: BigInt) -> Result<i64> {
    v.to_i64()
        .filter(|x| x.abs() <= BOX_LIMIT)
        .ok_or_else(|| Error::InvalidArgument(format!("coordinate bound {v} is too large to enumerate")))
}

impl ConstraintSystem {
    pub fn new(normals: Vec<Vec<Cyclotomic>>, rhs: Vec<Cyclotomic>, bounds_hint: Vec<(i64, i64)>) -> Result<Self> {
        let dim = bounds_hint.len();
        if rhs.len() != normals.len() {
            return Err(Error::DimensionMismatch { expected: normals.len(), got: rhs.len() });
        }
        if let Some(n) = normals.iter().find(|n| n.len() != dim + 1) {
            return Err(Error::DimensionMismatch { expected: dim + 1, got: n.len() });
        }
        if bounds_hint.iter().any(|&(lo, hi)| lo > hi || lo.abs() > BOX_LIMIT || hi.abs() > BOX_LIMIT) {
            return Err(Error::InvalidArgument("bounds hint is empty or too large".into()));
        }
        let cs = ConstraintSystem { normals, rhs, bounds_hint };
        if cs.normals.len() == dim + 1 {
            cs.check_bounded()?;
        }
        Ok(cs)
    }

    /// The simplex with right-hand sides zero and the box spanned by its vertices.
    pub fn from_simplex(s: &SSimplex) -> Result<Self> {
        let mut bounds_hint = Vec::with_capacity(s.dim);
        for i in 0..s.dim {
            let mut lo: Option<BigInt> = None;
            let mut hi: Option<BigInt> = None;
            for v in &s.vertices {
                let f = v[i].real_floor()?;
                let c = v[i].real_ceil()?;
                lo = Some(lo.map_or(f.clone(), |l| l.min(f)));
                hi = Some(hi.map_or(c.clone(), |h| h.max(c)));
            }
            let (lo, hi) = (lo.unwrap_or_default(), hi.unwrap_or_default());
            bounds_hint.push((bound_to_i64(lo)?, bound_to_i64(hi)?));
        }
        Ok(ConstraintSystem {
            normals: s.facet_normals.clone(),
            rhs: vec![Cyclotomic::zero(); s.facet_normals.len()],
            bounds_hint,
        })
    }

    /// For `dim + 1` constraints: the unique dependency of the normals'
    /// linear parts must have constant sign.
    fn check_bounded(&self) -> Result<()> {
        let inv = linalg::inverse(&self.normals)?
            .ok_or_else(|| Error::InvalidArgument("constraint normals are linearly dependent".into()))?;
        let signs: Vec<Sign> = inv[0].iter().map(Cyclotomic::real_sign).collect::<Result<_>>()?;
        let reference = signs[0];
        match signs.iter().position(|&s| s == Sign::Zero || s != reference) {
            Some(j) => Err(Error::Unbounded(j)),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds_hint.len()
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.normals.iter().flatten().chain(&self.rhs).all(Cyclotomic::is_rational)
    }

    pub fn row_is_rational(&self, j: usize) -> bool {
        self.normals[j].iter().all(Cyclotomic::is_rational)
    }

    /// Raises the right-hand side of the given rows to 1. Only rows with
    /// rational normals may be strengthened.
    pub fn strengthen(&self, columns: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &j in columns {
            if j >= self.normals.len() {
                return Err(Error::InvalidArgument(format!("no constraint {j}")));
            }
            if !self.row_is_rational(j) {
                return Err(Error::IrrationalColumn(j));
            }
            out.rhs[j] = Cyclotomic::one();
        }
        Ok(out)
    }

    /// `<normals[j], (1, x)> - rhs[j]`.
    pub fn slack(&self, j: usize, x: &[i64]) -> Cyclotomic {
        let n = &self.normals[j];
        let mut acc = &n[0] - &self.rhs[j];
        for (c, &xi) in n[1..].iter().zip(x) {
            if xi != 0 {
                acc = &acc + &c.scale(&Rational::from_integer(BigInt::from(xi)));
            }
        }
        acc
    }

    /// Exact membership test through cyclotomic arithmetic.
    pub fn satisfies(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        for j in 0..self.normals.len() {
            if self.slack(j, x).real_sign()? == Sign::Negative {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn homogeneous_rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.normals
            .iter()
            .zip(&self.rhs)
            .map(|(n, b)| {
                let mut row = n.clone();
                row[0] = &row[0] - b;
                row
            })
            .collect()
    }
}

/// How the range of the next coordinate is found at each node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundMethod {
    /// Fourier-Motzkin projections computed once per elimination level.
    #[default]
    Projection,
    /// Exact linear programs solved at every node.
    LinearProgramming,
}

/// The order in which coordinates are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum EliminationOrder {
    RangeDescending,
    /// Narrowest box range first.
    #[default]
    RangeAscending,
    Natural,
    Custom(Vec<usize>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub bound_method: BoundMethod,
    pub order: EliminationOrder,
    /// Fail with [`Error::LimitExceeded`] once more points than this are found.
    pub limit: Option<u64>,
}

/// Receives the integer points of a system in search order.
pub trait Visitor {
    fn visit(&mut self, x: &[i64]) -> ControlFlow<()>;

    /// Polled during the search; returning true aborts it with [`Error::Interrupted`].
    fn interrupted(&self) -> bool {
        false
    }
}

impl<F: FnMut(&[i64]) -> ControlFlow<()>> Visitor for F {
    fn visit(&mut self, x: &[i64]) -> ControlFlow<()> {
        self(x)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub points: u64,
    pub nodes: u64,
    /// The visitor asked to stop early.
    pub stopped: bool,
}

impl Outcome {
    pub fn merge(&mut self, other: Outcome) {
        self.points += other.points;
        self.nodes += other.nodes;
        self.stopped |= other.stopped;
    }
}

/// A prepared search over one constraint system. Immutable and shareable
/// between threads; each `walk_*` call is independent.
#[derive(Clone, Debug)]
pub struct Enumerator {
    dim: usize,
    /// `order[t]` is the coordinate fixed at depth `t`.
    order: Vec<usize>,
    /// Box per depth.
    boxes: Vec<(i64, i64)>,
    levels: Vec<Vec<IntRow>>,
    /// Relaxed rows in depth order, used by the LP bounds.
    base: Vec<IntRow>,
    exact: Vec<ExactRow>,
    method: BoundMethod,
    empty: bool,
    limit: Option<u64>,
}

fn elimination_order(cs: &ConstraintSystem, order: &EliminationOrder) -> Result<Vec<usize>> {
    let d = cs.dim();
    let mut idx: Vec<usize> = (0..d).collect();
    let width = |i: usize| cs.bounds_hint[i].1 - cs.bounds_hint[i].0;
    match order {
        EliminationOrder::RangeDescending => idx.sort_by_key(|&i| (core::cmp::Reverse(width(i)), i)),
        EliminationOrder::RangeAscending => idx.sort_by_key(|&i| (width(i), i)),
        EliminationOrder::Natural => {}
        EliminationOrder::Custom(perm) => {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != idx {
                return Err(Error::InvalidArgument(format!("elimination order {perm:?} is not a permutation of 0..{d}")));
            }
            idx = perm.clone();
        }
    }
    Ok(idx)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

impl Enumerator {
    pub fn new(cs: &ConstraintSystem, options: &EnumerateOptions) -> Result<Enumerator> {
        let d = cs.dim();
        if cs.len() > 64 {
            return Err(Error::InvalidArgument("at most 64 constraints are supported".into()));
        }
        let order = elimination_order(cs, &options.order)?;
        let boxes: Vec<(i64, i64)> = order.iter().map(|&i| cs.bounds_hint[i]).collect();
        let exact: Vec<ExactRow> = cs.homogeneous_rows().iter().map(|r| ExactRow::new(r)).collect::<Result<_>>()?;
        let mags: Vec<i128> = relax::magnitudes(&cs.bounds_hint);
        let mut base = Vec::with_capacity(exact.len());
        for (j, row) in exact.iter().enumerate() {
            let c = row.relax(&mags)?;
            let mut permuted = vec![c[0]; d + 1];
            for (t, &i) in order.iter().enumerate() {
                permuted[t + 1] = c[i + 1];
            }
            base.push(IntRow { c: permuted, support: 1 << j });
        }
        let proj = fm::project(&base, &boxes);
        Ok(Enumerator {
            dim: d,
            order,
            boxes,
            levels: proj.levels,
            base,
            exact,
            method: options.bound_method,
            empty: proj.empty,
            limit: options.limit,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates in the order they are fixed.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Number of projected rows per depth.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Integer range of the coordinate at depth `k` given the first `k` values.
    pub fn range(&self, k: usize, prefix: &[i64]) -> Result<Option<(i64, i64)>> {
        if self.empty {
            return Ok(None);
        }
        match self.method {
            BoundMethod::Projection => Ok(self.projected_range(k, prefix)),
            BoundMethod::LinearProgramming => self.lp_range(k, prefix),
        }
    }

    fn projected_range(&self, k: usize, y: &[i64]) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (i128::from(self.boxes[k].0), i128::from(self.boxes[k].1));
        for row in &self.levels[k] {
            let rest = row.partial(y, k);
            let c = row.c[k + 1];
            if c > 0 {
                lo = lo.max(ceil_div(-rest, c));
            } else {
                hi = hi.min(rest.div_euclid(-c));
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo as i64, hi as i64))
    }

    fn lp_range(&self, k: usize, y: &[i64]) -> Result<Option<(i64, i64)>> {
        let d = self.dim;
        let q = |v: i128| Rational::from_integer(BigInt::from(v));
        let free = d - k;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for row in &self.base {
            // c_0 + sum_{t<k} c_t y_t + sum_{t>=k} c_t (z_t + lo_t) >= 0
            let mut constant = row.partial(y, k);
            for t in k..d {
                constant += row.c[t + 1] * i128::from(self.boxes[t].0);
            }
            a.push((k..d).map(|t| q(-row.c[t + 1])).collect::<Vec<_>>());
            b.push(q(constant));
        }
        for t in k..d {
            let mut unit = vec![q(0); free];
            unit[t - k] = q(1);
            a.push(unit);
            b.push(q(i128::from(self.boxes[t].1 - self.boxes[t].0)));
        }
        let mut obj = vec![q(0); free];
        obj[0] = q(1);
        let upper = match lp::maximize(&a, &b, &obj) {
            LpResult::Optimal(v) => v,
            LpResult::Infeasible => return Ok(None),
            LpResult::Unbounded => return Err(Error::Unbounded(self.order[k])),
        };
        obj[0] = q(-1);
        let lower = match lp::maximize(&a, &b, &obj) {
            LpResult::Optimal(v) => -v,
            LpResult::Infeasible => return Ok(None),
            LpResult::Unbounded => return Err(Error::Unbounded(self.order[k])),
        };
        let base = self.boxes[k].0;
        let lo = lower.ceil().to_integer().to_i64().unwrap_or(i64::MAX) + base;
        let hi = upper.floor().to_integer().to_i64().unwrap_or(i64::MIN) + base;
        Ok((lo <= hi).then_some((lo, hi)))
    }

    /// Visits every integer point of the system.
    pub fn walk<V: Visitor>(&self, visitor: &mut V) -> Result<Outcome> {
        self.walk_prefix(&[], visitor)
    }

    /// Visits the points whose first `prefix.len()` coordinates, in search
    /// order, equal `prefix`.
    pub fn walk_prefix<V: Visitor>(&self, prefix: &[i64], visitor: &mut V) -> Result<Outcome> {
        let mut out = Outcome::default();
        if self.empty || prefix.len() > self.dim {
            return Ok(out);
        }
        let mut y = vec![0i64; self.dim];
        for (k, &v) in prefix.iter().enumerate() {
            match self.range(k, &y[..k])? {
                Some((lo, hi)) if lo <= v && v <= hi => y[k] = v,
                _ => return Ok(out),
            }
        }
        let mut x = vec![0i64; self.dim];
        let _ = self.descend(prefix.len(), &mut y, &mut x, visitor, &mut out)?;
        Ok(out)
    }

    /// All prefixes of length `depth` admitted by the relaxed ranges, in
    /// search order. Used to split work.
    pub fn prefixes(&self, depth: usize) -> Result<Vec<Vec<i64>>> {
        let depth = depth.min(self.dim);
        let mut out = Vec::new();
        if self.empty {
            return Ok(out);
        }
        let mut y = vec![0i64; depth];
        self.collect_prefixes(0, depth, &mut y, &mut out)?;
        Ok(out)
    }

    fn collect_prefixes(&self, k: usize, depth: usize, y: &mut [i64], out: &mut Vec<Vec<i64>>) -> Result<()> {
        if k == depth {
            out.push(y.to_vec());
            return Ok(());
        }
        if let Some((lo, hi)) = self.range(k, &y[..k])? {
            for v in lo..=hi {
                y[k] = v;
                self.collect_prefixes(k + 1, depth, y, out)?;
            }
        }
        Ok(())
    }

    fn descend<V: Visitor>(&self, k: usize, y: &mut [i64], x: &mut [i64], visitor: &mut V, out: &mut Outcome) -> Result<ControlFlow<()>> {
        out.nodes += 1;
        if out.nodes & 0xfff == 0 && visitor.interrupted() {
            return Err(Error::Interrupted);
        }
        if k == self.dim {
            for (t, &i) in self.order.iter().enumerate() {
                x[i] = y[t];
            }
            for row in &self.exact {
                if !row.holds(x)? {
                    return Ok(ControlFlow::Continue(()));
                }
            }
            out.points += 1;
            if visitor.visit(x).is_break() {
                out.stopped = true;
                return Ok(ControlFlow::Break(()));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let Some((lo, hi)) = self.range(k, &y[..k])? else {
            return Ok(ControlFlow::Continue(()));
        };
        for v in lo..=hi {
            y[k] = v;
            if self.descend(k + 1, y, x, visitor, out)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// All integer points, sorted lexicographically.
    pub fn enumerate(&self) -> Result<Vec<Vec<i64>>> {
        let mut points = Vec::new();
        let limit = self.limit;
        let mut collect = |x: &[i64]| {
            points.push(x.to_vec());
            match limit {
                Some(l) if points.len() as u64 > l => ControlFlow::Break(()),
                _ => ControlFlow::Continue(()),
            }
        };
        let outcome = self.walk(&mut collect)?;
        if outcome.stopped {
            return Err(Error::LimitExceeded(limit.unwrap_or(0)));
        }
        points.sort_unstable();
        Ok(points)
    }
}

/// All integer points of `cs`, sorted lexicographically.
pub fn enumerate(cs: &ConstraintSystem, options: &EnumerateOptions) -> Result<Vec<Vec<i64>>> {
    Enumerator::new(cs, options)?.enumerate()
}

pub const BRUTE_FORCE_CAP: usize = 8;

/// Scans the whole box, testing every point with exact cyclotomic signs.
pub fn brute_force(cs: &ConstraintSystem) -> Result<Vec<Vec<i64>>> {
    brute_force_with_cap(cs, BRUTE_FORCE_CAP)
}

pub fn brute_force_with_cap(cs: &ConstraintSystem, cap: usize) -> Result<Vec<Vec<i64>>> {
    let d = cs.dim();
    if d > cap {
        return Err(Error::DimensionCap { dim: d, cap });
    }
    let mut out = Vec::new();
    let mut x: Vec<i64> = cs.bounds_hint.iter().map(|b| b.0).collect();
    loop {
        if cs.satisfies(&x)? {
            out.push(x.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if x[i] < cs.bounds_hint[i].1 {
                x[i] += 1;
                break;
            }
            x[i] = cs.bounds_hint[i].0;
        }
    }
}
