//! Exact constraint rows and their integer outer relaxations.
//!
//! Every row is kept in the form `c_0 + sum_i c_i x_i >= 0`. Search-time
//! pruning only uses [`IntRow`]s, which are implied by the exact rows for
//! every integer point of the box; the exact rows decide membership.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ball;
use crate::cyclo::{common_conductor, Cyclotomic, Rational, Sign};
use crate::error::{Error, Result};

/// Largest magnitude kept for a variable coefficient of an [`IntRow`].
pub(crate) const COEF_LIMIT: i128 = 1 << 40;
/// Largest magnitude allowed for a box coordinate.
pub(crate) const BOX_LIMIT: i64 = 1 << 20;

/// An integer inequality `c[0] + sum_t c[t + 1] y_t >= 0` together with the
/// set of original rows it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntRow {
    pub c: Vec<i128>,
    pub support: u64,
}

/// Outcome of tidying a row against the box.
pub(crate) enum Tidy {
    Keep(IntRow),
    /// Satisfied by every point of the box.
    Redundant,
    /// Violated by every point of the box.
    Infeasible,
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// `max |x_t|` over the box, per position.
pub(crate) fn magnitudes(boxes: &[(i64, i64)]) -> Vec<i128> {
    boxes.iter().map(|&(lo, hi)| i128::from(lo.unsigned_abs().max(hi.unsigned_abs()))).collect()
}

impl IntRow {
    /// Divides out the content of the variable part, rounding the constant
    /// down (valid for integer points), shrinks oversized coefficients and
    /// classifies the row against the box.
    pub fn tidy(mut self, boxes: &[(i64, i64)], mags: &[i128]) -> Tidy {
        let g = self.c[1..].iter().fold(0, |g, &v| gcd_i128(g, v));
        if g == 0 {
            return if self.c[0] >= 0 { Tidy::Redundant } else { Tidy::Infeasible };
        }
        if g > 1 {
            for v in &mut self.c[1..] {
                *v /= g;
            }
            self.c[0] = self.c[0].div_euclid(g);
        }
        let big = self.c[1..].iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        if big > COEF_LIMIT as u128 {
            let shift = 128 - (big / COEF_LIMIT as u128).leading_zeros();
            self = self.shrink(shift, mags);
        }
        let (mut low, mut high) = (self.c[0], self.c[0]);
        for (t, &v) in self.c[1..].iter().enumerate() {
            let (lo, hi) = (i128::from(boxes[t].0), i128::from(boxes[t].1));
            if v > 0 {
                low += v * lo;
                high += v * hi;
            } else {
                low += v * hi;
                high += v * lo;
            }
        }
        if low >= 0 {
            Tidy::Redundant
        } else if high < 0 {
            Tidy::Infeasible
        } else {
            Tidy::Keep(self)
        }
    }

    /// Divides the variable part by `2^shift`, rounding down, and loosens the
    /// constant so the result is implied on the box.
    fn shrink(self, shift: u32, mags: &[i128]) -> IntRow {
        let mut c = vec![0i128; self.c.len()];
        let mut slack = 0i128;
        for t in 1..self.c.len() {
            let v = self.c[t];
            c[t] = v >> shift;
            if v - (c[t] << shift) != 0 {
                slack += mags[t - 1];
            }
        }
        // c_0 + sum c_t y_t >= 0 with c_t = 2^s q_t + r_t, 0 <= r_t < 2^s,
        // gives sum q_t y_t + sum_{r_t != 0} |y_t| >= -c_0 / 2^s.
        c[0] = (self.c[0] >> shift) + slack;
        IntRow { c, support: self.support }
    }

    /// `c_0 + sum_{t < k} c_{t+1} y_t`.
    #[inline]
    pub fn partial(&self, y: &[i64], k: usize) -> i128 {
        let mut acc = self.c[0];
        for t in 0..k {
            acc += self.c[t + 1] * i128::from(y[t]);
        }
        acc
    }
}

/// An exact row `c_0 + sum_i c_i x_i >= 0` over a real cyclotomic field.
#[derive(Clone, Debug)]
pub(crate) enum ExactRow {
    /// Integral coefficients.
    Int(Vec<i128>),
    /// Irrational coefficients, stored by their basis coordinates at a common
    /// conductor: the value at `x` is `sum_e (sum_i coords[e][i] x_i) zeta^e`
    /// up to a positive scalar.
    Irr { coords: Vec<Vec<i128>>, cos: Vec<(BigInt, BigInt)>, original: Vec<Cyclotomic> },
}

const LEAF_PREC: u32 = 128;

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or_else(|| Error::InvalidArgument("coefficient too large for enumeration".into()))
}

impl ExactRow {
    /// `row[0]` is the constant, `row[i + 1]` the coefficient of `x_i`.
    pub fn new(row: &[Cyclotomic]) -> Result<ExactRow> {
        if row.iter().any(|v| !v.is_real()) {
            return Err(Error::NotReal);
        }
        if row.iter().all(Cyclotomic::is_rational) {
            let qs: Vec<Rational> = row.iter().map(|v| v.as_rational().unwrap_or_default()).collect();
            let den = qs.iter().fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
            let c = qs.iter().map(|q| to_i128(&(q.numer() * (&den / q.denom())))).collect::<Result<Vec<_>>>()?;
            return Ok(ExactRow::Int(c));
        }
        let n = common_conductor(row.iter());
        let per: Vec<Vec<(u32, Rational)>> = row.iter().map(|v| v.basis_coords_at(n)).collect();
        let mut exponents: Vec<u32> = per.iter().flatten().map(|(e, _)| *e).collect();
        exponents.sort_unstable();
        exponents.dedup();
        let den = per.iter().flatten().fold(BigInt::from(1), |l, (_, q)| l.lcm(q.denom()));
        let mut coords = vec![vec![0i128; row.len()]; exponents.len()];
        for (i, terms) in per.iter().enumerate() {
            for (e, q) in terms {
                let k = exponents.binary_search(e).map_err(|_| Error::Internal("basis exponent lost".into()))?;
                coords[k][i] = to_i128(&(q.numer() * (&den / q.denom())))?;
            }
        }
        let cos = cos_pairs(&exponents, n, LEAF_PREC);
        Ok(ExactRow::Irr { coords, cos, original: row.to_vec() })
    }

    /// Whether the row's value vanishes at `x`.
    pub fn is_zero_at(&self, x: &[i64]) -> bool {
        let dot = |row: &[i128]| row[1..].iter().zip(x).fold(row[0], |acc, (c, &xi)| acc + c * i128::from(xi));
        match self {
            ExactRow::Int(c) => dot(c) == 0,
            ExactRow::Irr { coords, .. } => coords.iter().all(|row| dot(row) == 0),
        }
    }

    /// Exact test of the row at an integer point.
    pub fn holds(&self, x: &[i64]) -> Result<bool> {
        match self {
            ExactRow::Int(c) => {
                let mut acc = c[0];
                for (ci, &xi) in c[1..].iter().zip(x) {
                    acc += ci * i128::from(xi);
                }
                Ok(acc >= 0)
            }
            ExactRow::Irr { coords, cos, original } => {
                let values: Vec<i128> = coords
                    .iter()
                    .map(|row| row[1..].iter().zip(x).fold(row[0], |acc, (c, &xi)| acc + c * i128::from(xi)))
                    .collect();
                if values.iter().all(|&v| v == 0) {
                    return Ok(true);
                }
                let mut mid = BigInt::zero();
                let mut rad = BigInt::zero();
                for (v, (m, r)) in values.iter().zip(cos) {
                    if *v != 0 {
                        let v = BigInt::from(*v);
                        mid += &v * m;
                        rad += v.abs() * r;
                    }
                }
                if mid.abs() > rad {
                    return Ok(mid.is_positive());
                }
                let mut value = original[0].clone();
                for (c, &xi) in original[1..].iter().zip(x) {
                    if xi != 0 {
                        value = &value + &c.scale(&Rational::from_integer(BigInt::from(xi)));
                    }
                }
                Ok(value.real_sign()? != Sign::Negative)
            }
        }
    }

    /// Integer outer relaxation valid on the box with per-coordinate magnitudes `mags`.
    pub fn relax(&self, mags: &[i128]) -> Result<Vec<i128>> {
        match self {
            ExactRow::Int(c) => Ok(c.clone()),
            ExactRow::Irr { original, .. } => {
                let biggest = original.iter().map(|v| v.approx_real().abs()).fold(0.0f64, f64::max);
                let bits = if biggest >= 1.0 { log2_ceil(biggest) } else { 0 };
                let prec = 38u32.saturating_sub(bits).max(8);
                let mut c = Vec::with_capacity(original.len());
                let mut slack = BigInt::zero();
                for (i, v) in original.iter().enumerate() {
                    let b = v.real_ball(prec);
                    c.push(to_i128(b.mid())?);
                    if i == 0 {
                        slack += b.rad();
                    } else {
                        slack += b.rad() * BigInt::from(mags[i - 1]);
                    }
                }
                c[0] += to_i128(&slack)?;
                Ok(c)
            }
        }
    }
}

fn log2_ceil(v: f64) -> u32 {
    let mut bits = 0;
    let mut p = 1.0f64;
    while p < v {
        p *= 2.0;
        bits += 1;
    }
    bits
}

/// `(mid, rad)` of `cos(2 pi e / n)` scaled by `2^prec`.
fn cos_pairs(exponents: &[u32], n: u32, prec: u32) -> Vec<(BigInt, BigInt)> {
    ball::cos_table(exponents, n, prec).into_iter().map(|b| (b.mid().clone(), b.rad().clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn irrational_row_matches_exact_sign() {
        // 1 + (zeta5 + zeta5^4) x: golden-ratio conjugate slope.
        let s = Cyclotomic::canonicalize([(1, r(1)), (4, r(1))], 5).unwrap();
        let row = ExactRow::new(&[Cyclotomic::one(), s.clone()]).unwrap();
        let mags = [10i128];
        let relaxed = row.relax(&mags).unwrap();
        for x in -10..=10i64 {
            let exact = (&Cyclotomic::one() + &s.scale(&r(x))).real_sign().unwrap() != Sign::Negative;
            assert_eq!(row.holds(&[x]).unwrap(), exact, "x = {x}");
            if exact {
                assert!(relaxed[0] + relaxed[1] * i128::from(x) >= 0);
            }
        }
    }

    #[test]
    fn zero_value_is_decided_exactly() {
        // (zeta5 + zeta5^4) - (zeta5 + zeta5^4) at x = 1 through two columns.
        let s = Cyclotomic::canonicalize([(1, r(1)), (4, r(1))], 5).unwrap();
        let row = ExactRow::new(&[Cyclotomic::zero(), s.clone(), -&s]).unwrap();
        assert!(row.holds(&[1, 1]).unwrap());
        assert!(row.holds(&[3, 3]).unwrap());
        assert!(row.holds(&[1, 0]).unwrap());
        assert!(!row.holds(&[0, 1]).unwrap());
    }

    #[test]
    fn tidy_rounds_constant_down_and_shrinks() {
        let boxes = [(-5, 5), (-5, 5)];
        let mags = magnitudes(&boxes);
        // 2y0 + 4y1 - 3 >= 0  ->  y0 + 2y1 - 2 >= 0
        match (IntRow { c: vec![-3, 2, 4], support: 1 }).tidy(&boxes, &mags) {
            Tidy::Keep(row) => assert_eq!(row.c, vec![-2, 1, 2]),
            _ => panic!("row should be kept"),
        }
        let huge = COEF_LIMIT * 1000 + 7;
        let row = IntRow { c: vec![-huge, huge, 3], support: 1 };
        let Tidy::Keep(small) = row.clone().tidy(&boxes, &mags) else { panic!() };
        assert!(small.c[1].abs() <= COEF_LIMIT);
        for y0 in -5..=5i64 {
            for y1 in -5..=5i64 {
                if row.partial(&[y0, y1], 2) >= 0 {
                    assert!(small.partial(&[y0, y1], 2) >= 0);
                }
            }
        }
        assert!(matches!((IntRow { c: vec![100, 1, 1], support: 1 }).tidy(&boxes, &mags), Tidy::Redundant));
        assert!(matches!((IntRow { c: vec![-100, 1, 1], support: 1 }).tidy(&boxes, &mags), Tidy::Infeasible));
    }
}
