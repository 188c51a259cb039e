//! Exact arithmetic in abelian number fields.
//!
//! A [`Cyclotomic`] is a rational linear combination of `n`-th roots of unity
//! stored in the Zumbroich basis of `Q(zeta_n)` with `n` minimal. Because the
//! representation is unique, equality and the zero test are syntactic.
//!
//! Basis rule: for every odd prime `p` with `q = p^k || n` the exponent `i`
//! is excluded when `i * (n/q)^-1 mod q` lies in the centred block
//! `[-(q/p - 1)/2, (q/p - 1)/2]`; for `q = 2^k || n` it is excluded when that
//! residue lies in `[q/2, q - 1]`. This is the basis GAP uses, so table data
//! exported from GAP is already canonical.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{self, Ball};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Sign of a real number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// Result of the exact rationality and reality tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTests {
    pub is_zero: bool,
    pub is_rational: bool,
    pub is_real: bool,
    pub as_rational: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    /// Sorted by exponent, all coefficients nonzero.
    terms: Vec<(u32, Rational)>,
}

pub(crate) fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as u64
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// True when `e` is a Zumbroich basis exponent for conductor `n`.
fn in_basis(e: u32, n: u32, primes: &[(u32, u32)]) -> bool {
    let e = u64::from(e);
    for &(p, k) in primes {
        let q = u64::from(p).pow(k);
        let r = u64::from(n) / q;
        let a = (e % q) * mod_inverse(r % q, q) % q;
        if p == 2 {
            if a >= q / 2 {
                return false;
            }
        } else {
            let h = (q / u64::from(p) - 1) / 2;
            if (a + h) % q <= 2 * h {
                return false;
            }
        }
    }
    true
}

/// Exponents of the Zumbroich basis of `Q(zeta_n)`, for `n` not `2 mod 4`.
pub fn zumbroich_basis(n: u32) -> Vec<u32> {
    let primes = factor(n);
    (0..n).filter(|&e| in_basis(e, n, &primes)).collect()
}

/// Rewrites a dense coefficient vector over all `n`-th roots into the basis.
fn to_basis(dense: &mut [Rational], n: u32) {
    let primes = factor(n);
    let nn = u64::from(n);
    for &(p, k) in &primes {
        let p64 = u64::from(p);
        let q = p64.pow(k);
        let r = nn / q;
        let rinv = mod_inverse(r % q, q);
        if p == 2 {
            for i in 0..nn {
                if dense[i as usize].is_zero() {
                    continue;
                }
                let a = (i % q) * rinv % q;
                if a >= q / 2 {
                    let c = core::mem::replace(&mut dense[i as usize], Rational::zero());
                    let j = ((i + nn / 2) % nn) as usize;
                    dense[j] -= c;
                }
            }
        } else {
            let h = (q / p64 - 1) / 2;
            let step = nn / p64;
            for i in 0..nn {
                if dense[i as usize].is_zero() {
                    continue;
                }
                let a = (i % q) * rinv % q;
                if (a + h) % q <= 2 * h {
                    let c = core::mem::replace(&mut dense[i as usize], Rational::zero());
                    for t in 1..p64 {
                        let j = ((i + t * step) % nn) as usize;
                        dense[j] -= &c;
                    }
                }
            }
        }
    }
}

/// If the basis vector lies in a proper cyclotomic subfield, returns its
/// dense (not yet canonical) representation at the smaller conductor.
fn try_shrink(dense: &[Rational], n: u32) -> Option<(Vec<Rational>, u32)> {
    let nn = n as usize;
    for (p, k) in factor(n) {
        let pu = p as usize;
        if k >= 2 {
            if dense.iter().enumerate().all(|(i, c)| c.is_zero() || i % pu == 0) {
                let m = nn / pu;
                let mut out = vec![Rational::zero(); m];
                for (i, c) in dense.iter().enumerate() {
                    if !c.is_zero() {
                        out[i / pu] = c.clone();
                    }
                }
                return Some((out, n / p));
            }
        } else {
            // p || n: subfield elements appear as full blocks
            // {b + t n/p : t = 1..p-1} with b = 0 mod p and equal coefficients.
            let step = nn / pu;
            let inv = mod_inverse((step % pu) as u64, p as u64) as usize;
            let mut ok = true;
            let mut out = vec![Rational::zero(); nn / pu];
            let mut seen = vec![false; nn];
            for (i, c) in dense.iter().enumerate() {
                if c.is_zero() || seen[i] {
                    continue;
                }
                if i % pu == 0 {
                    ok = false;
                    break;
                }
                // b = i + s * step with b = 0 (mod p)
                let s = (pu - (i % pu) * inv % pu) % pu;
                let b = (i + s * step) % nn;
                for t in 1..pu {
                    let j = (b + t * step) % nn;
                    if dense[j] != *c {
                        ok = false;
                        break;
                    }
                    seen[j] = true;
                }
                if !ok {
                    break;
                }
                out[b / pu] = -c.clone();
            }
            if ok {
                return Some((out, n / p));
            }
        }
    }
    None
}

/// `zeta_{2m}^i = (-1)^i zeta_m^{i (m+1)/2}` for odd `m`.
fn halve_conductor(dense: &[Rational], n: u32) -> Vec<Rational> {
    let m = (n / 2) as usize;
    let mut out = vec![Rational::zero(); m];
    let shift = if m == 1 { 0 } else { m.div_ceil(2) };
    for (i, c) in dense.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = (i * shift) % m;
        if i % 2 == 0 {
            out[j] += c;
        } else {
            out[j] -= c;
        }
    }
    out
}

fn from_dense(mut dense: Vec<Rational>, mut n: u32) -> Cyclotomic {
    loop {
        if n % 4 == 2 {
            dense = halve_conductor(&dense, n);
            n /= 2;
            continue;
        }
        to_basis(&mut dense, n);
        match try_shrink(&dense, n) {
            Some((d, m)) => {
                dense = d;
                n = m;
            }
            None => break,
        }
    }
    let terms: Vec<(u32, Rational)> = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c))
        .collect();
    if terms.is_empty() {
        return Cyclotomic::zero();
    }
    Cyclotomic { conductor: n, terms }
}

impl Cyclotomic {
    /// Builds the canonical form of `sum q_e zeta_n^e`; exponents are taken mod `n`.
    pub fn canonicalize<I>(raw: I, n: u64) -> Result<Cyclotomic>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        if n == 0 || n > u64::from(u32::MAX) {
            return Err(Error::InvalidConductor(n));
        }
        let mut dense = vec![Rational::zero(); n as usize];
        for (e, q) in raw {
            dense[e.rem_euclid(n as i64) as usize] += q;
        }
        Ok(from_dense(dense, n as u32))
    }

    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Cyclotomic::zero()
        } else {
            Cyclotomic { conductor: 1, terms: vec![(0, q)] }
        }
    }

    pub fn from_int(v: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// The primitive root `zeta_n^e`.
    pub fn root_of_unity(n: u64, e: i64) -> Result<Self> {
        Cyclotomic::canonicalize([(e, Rational::one())], n)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(Rational::zero()),
            (1, [(0, q)]) => Some(q.clone()),
            _ => None,
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_real(&self) -> bool {
        self.is_rational() || *self == self.conjugate()
    }

    pub fn rational_tests(&self) -> RationalTests {
        let as_rational = self.as_rational();
        RationalTests {
            is_zero: self.is_zero(),
            is_rational: as_rational.is_some(),
            is_real: self.is_real(),
            as_rational,
        }
    }

    /// Dense coefficients over all `big_n`-th roots; `big_n` must be a multiple of the conductor.
    pub fn dense_at(&self, big_n: u32) -> Vec<Rational> {
        debug_assert_eq!(big_n % self.conductor, 0);
        let s = (big_n / self.conductor) as usize;
        let mut dense = vec![Rational::zero(); big_n as usize];
        for (e, c) in &self.terms {
            dense[*e as usize * s] += c;
        }
        dense
    }

    /// Coordinates in the Zumbroich basis of `Q(zeta_big_n)` without reducing the conductor.
    pub fn basis_coords_at(&self, big_n: u32) -> Vec<(u32, Rational)> {
        let mut dense = self.dense_at(big_n);
        if big_n % 4 != 2 {
            to_basis(&mut dense, big_n);
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect()
    }

    /// Applies the Galois automorphism `zeta_n -> zeta_n^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.is_rational() {
            return self.clone();
        }
        let n = i64::from(self.conductor);
        debug_assert_eq!(k.rem_euclid(n).gcd(&n), 1);
        let mut dense = vec![Rational::zero(); n as usize];
        for (e, c) in &self.terms {
            dense[(i64::from(*e) * k).rem_euclid(n) as usize] += c;
        }
        from_dense(dense, self.conductor)
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois(-1)
    }

    fn combine(&self, other: &Cyclotomic, negate_other: bool) -> Cyclotomic {
        if self.is_rational() && other.is_rational() {
            let a = self.as_rational().unwrap();
            let b = other.as_rational().unwrap();
            return Cyclotomic::from_rational(if negate_other { a - b } else { a + b });
        }
        let n = lcm(self.conductor, other.conductor);
        let mut dense = self.dense_at(n);
        let s = (n / other.conductor) as usize;
        for (e, c) in &other.terms {
            if negate_other {
                dense[*e as usize * s] -= c;
            } else {
                dense[*e as usize * s] += c;
            }
        }
        from_dense(dense, n)
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    fn product(&self, other: &Cyclotomic) -> Cyclotomic {
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        let n = lcm(self.conductor, other.conductor);
        let s1 = (n / self.conductor) as usize;
        let s2 = (n / other.conductor) as usize;
        let nn = n as usize;
        let mut dense = vec![Rational::zero(); nn];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                dense[(*e1 as usize * s1 + *e2 as usize * s2) % nn] += c1 * c2;
            }
        }
        from_dense(dense, n)
    }

    /// Distinct Galois conjugates of the value, starting with the value itself.
    pub fn galois_conjugates(&self) -> Vec<Cyclotomic> {
        let n = self.conductor;
        let mut seen: Vec<Cyclotomic> = vec![self.clone()];
        for k in 2..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            let c = self.galois(i64::from(k));
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen
    }

    /// Multiplicative inverse via the product of the other Galois conjugates.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(q.recip()));
        }
        let conjugates = self.galois_conjugates();
        let mut cofactor = Cyclotomic::one();
        for c in &conjugates[1..] {
            cofactor = &cofactor * c;
        }
        let norm = (self * &cofactor)
            .as_rational()
            .ok_or_else(|| Error::Internal("norm of a cyclotomic is not rational".into()))?;
        Ok(cofactor.scale(&norm.recip()))
    }

    /// Enclosure of the real part at `prec` bits.
    pub fn real_ball(&self, prec: u32) -> Ball {
        let mut acc = Ball::zero(prec);
        for (e, c) in &self.terms {
            let cos = ball::cos_root(u64::from(*e), u64::from(self.conductor), prec);
            acc = acc.add(&cos.mul_rational(c));
        }
        acc
    }

    /// Exact sign of a real value: zero is decided syntactically, nonzero
    /// values by refining an enclosure from 64 bits upwards.
    pub fn real_sign(&self) -> Result<Sign> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        let mut prec = 64;
        loop {
            if let Some(o) = self.real_ball(prec).sign() {
                return Ok(Sign::from_ordering(o));
            }
            prec *= 2;
        }
    }

    /// Largest integer not above the real value.
    pub fn real_floor(&self) -> Result<BigInt> {
        if let Some(q) = self.as_rational() {
            return Ok(q.floor().to_integer());
        }
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        // An irrational value is never an integer, so refining the enclosure
        // until both ends share a floor terminates.
        let mut prec = 64;
        loop {
            let (lo, hi) = self.real_ball(prec).bounds();
            let (a, b) = (lo.floor(), hi.floor());
            if a == b {
                return Ok(a.to_integer());
            }
            prec *= 2;
        }
    }

    pub fn real_ceil(&self) -> Result<BigInt> {
        Ok(-(-self).real_floor()?)
    }

    /// Approximate real part, for display only.
    pub fn approx_real(&self) -> f64 {
        let (lo, hi) = self.real_ball(64).bounds();
        let mid = (lo + hi) / Rational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    let scaled = (q * Rational::from_integer(BigInt::one() << 64u32)).round().to_integer();
    scaled.to_f64().unwrap_or(f64::NAN) / 18446744073709551616.0
}

/// Least common multiple of the conductors of a set of values.
pub fn common_conductor<'a, I: IntoIterator<Item = &'a Cyclotomic>>(values: I) -> u32 {
    values.into_iter().fold(1, |acc, v| lcm(acc, v.conductor))
}

/// Exponents that appear in the basis coordinates of any of `values` at conductor `n`.
pub fn support_at<'a, I: IntoIterator<Item = &'a Cyclotomic>>(values: I, n: u32) -> Vec<u32> {
    let mut set = BTreeSet::new();
    for v in values {
        for (e, _) in v.basis_coords_at(n) {
            set.insert(e);
        }
    }
    set.into_iter().collect()
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.product(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    use alloc::format;
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// GAP-style notation, e.g. `E(7)+E(7)^2+E(7)^4`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return f.write_str(&fmt_rational(&q));
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let root = if *e == 1 {
                alloc::format!("E({})", self.conductor)
            } else {
                alloc::format!("E({})^{}", self.conductor, e)
            };
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            if *e == 0 {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), root)?;
            }
        }
        Ok(())
    }
}
