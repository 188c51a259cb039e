//! Fixed-point ball arithmetic for certified enclosures of real numbers.
//!
//! A [`Ball`] at precision `p` stands for the closed interval
//! `[(mid - rad) / 2^p, (mid + rad) / 2^p]`. Every operation returns a ball
//! that contains the exact result of applying the operation to any points of
//! the input balls, so a ball that excludes zero certifies a sign.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclo::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Ball { mid: v << prec, rad: BigInt::zero(), prec }
    }

    /// Encloses `q` with one unit of error in the last place.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let scaled: BigInt = q.numer() << prec;
        let mid = scaled.div_floor(q.denom());
        Ball { mid, rad: BigInt::one(), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    /// Sign certified by the enclosure, or `None` if it straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.mid.clone() - &self.rad > BigInt::zero() {
            Some(Ordering::Greater)
        } else if self.mid.clone() + &self.rad < BigInt::zero() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.prec, other.prec);
        Ball { mid: &self.mid + &other.mid, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.prec, other.prec);
        Ball { mid: &self.mid - &other.mid, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.prec, other.prec);
        let p = self.prec;
        let mid = (&self.mid * &other.mid) >> p;
        let err = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        // The shift floors both quantities; two ulps cover the truncations.
        let rad = (err >> p) + BigInt::from(2u8);
        Ball { mid, rad, prec: p }
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball { mid: &self.mid * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Ball {
        debug_assert!(k.sign() == BigSign::Plus);
        let mid = self.mid.div_floor(k);
        let rad = self.rad.div_ceil(k) + BigInt::one();
        Ball { mid, rad, prec: self.prec }
    }

    pub fn mul_rational(&self, q: &Rational) -> Ball {
        if q.is_integer() {
            self.mul_int(q.numer())
        } else {
            self.mul_int(q.numer()).div_int(q.denom())
        }
    }

    /// Drops `bits` bits of precision, widening the radius to stay sound.
    pub fn truncate(&self, bits: u32) -> Ball {
        if bits == 0 {
            return self.clone();
        }
        let mid = &self.mid >> bits;
        let rad = (&self.rad >> bits) + BigInt::from(2u8);
        Ball { mid, rad, prec: self.prec - bits }
    }

    /// Lower and upper rational bounds of the enclosure.
    pub fn bounds(&self) -> (Rational, Rational) {
        let den = BigInt::one() << self.prec;
        (
            Rational::new(&self.mid - &self.rad, den.clone()),
            Rational::new(&self.mid + &self.rad, den),
        )
    }
}

/// Enclosure of `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: u32, prec: u32) -> Ball {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << prec) / &x;
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut k: u64 = 0;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &x2;
        k += 1;
        terms += 1;
    }
    // Each term carries two truncations; the alternating tail is below one ulp.
    Ball { mid: sum, rad: BigInt::from(2 * terms + 2), prec }
}

/// Enclosure of pi via Machin's formula.
pub fn pi(prec: u32) -> Ball {
    let guard = 16;
    let a = atan_inv(5, prec + guard).mul_int(&BigInt::from(16));
    let b = atan_inv(239, prec + guard).mul_int(&BigInt::from(4));
    a.sub(&b).truncate(guard)
}

/// Enclosure of `cos(theta)` for `theta` in `[0, pi]`.
fn cos_small(theta: &Ball) -> Ball {
    let prec = theta.prec;
    let theta2 = theta.mul(theta);
    let mut term = Ball::from_int(&BigInt::one(), prec);
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = term.mul(&theta2).div_int(&BigInt::from((2 * k - 1) * (2 * k))).neg();
        sum = sum.add(&term);
        let magnitude = term.mid.abs() + &term.rad;
        if k >= 3 && magnitude <= BigInt::from(16u8) {
            // theta^2 < 10 < (2k+1)(2k+2), so the remaining terms alternate and
            // decrease: the tail is bounded by the last term.
            sum.rad += magnitude + BigInt::one();
            return sum;
        }
        k += 1;
    }
}

/// Enclosure of `cos(2 pi e / n)` at `prec` bits.
pub fn cos_root(e: u64, n: u64, prec: u32) -> Ball {
    let guard = 24;
    let work = prec + guard;
    let mut e = e % n;
    if 2 * e > n {
        e = n - e;
    }
    if e == 0 {
        return Ball::from_int(&BigInt::one(), prec);
    }
    let theta = pi(work).mul_int(&BigInt::from(2 * e)).div_int(&BigInt::from(n));
    cos_small(&theta).truncate(guard)
}

/// Enclosures of `cos(2 pi e / n)` for a list of exponents.
pub fn cos_table(exponents: &[u32], n: u32, prec: u32) -> Vec<Ball> {
    exponents.iter().map(|&e| cos_root(u64::from(e), u64::from(n), prec)).collect()
}
