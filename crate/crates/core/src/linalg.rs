//! Dense exact linear algebra over `Q` and over cyclotomic fields.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// The field operations Gaussian elimination needs.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Pivoting preference; smaller is cheaper.
    fn weight(&self) -> usize {
        1
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
    fn weight(&self) -> usize {
        if self.is_rational() {
            1
        } else {
            1 + self.terms().len() * self.conductor() as usize
        }
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

/// Inverse of a square matrix by Gauss-Jordan elimination.
///
/// Returns `None` for singular input.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: m.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
    }
    let mut a: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].weight());
        let Some(p) = pivot else {
            return Ok(None);
        };
        a.swap(col, p);
        let inv = a[col][col].inv()?;
        for j in col..2 * n {
            if !a[col][j].is_zero() {
                a[col][j] = a[col][j].mul(&inv);
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..2 * n {
                if !a[col][j].is_zero() {
                    let t = factor.mul(&a[col][j]);
                    a[r][j] = a[r][j].sub(&t);
                }
            }
        }
    }
    Ok(Some(a.into_iter().map(|row| row[n..].to_vec()).collect()))
}

/// Rank of a matrix over the field.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for j in col..cols {
                let t = factor.mul(&a[rank][j]);
                a[r][j] = a[r][j].sub(&t);
            }
        }
        rank += 1;
    }
    rank
}

/// Product of a row vector with a matrix, `x M`.
pub fn row_times<F: Field>(x: &[F], m: &Matrix<F>) -> Vec<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            x.iter().zip(m).fold(F::zero(), |acc, (xi, row)| if xi.is_zero() { acc } else { acc.add(&xi.mul(&row[j])) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rational_inverse() {
        let m = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = inverse(&m).unwrap().unwrap();
        assert_eq!(inv, vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]);
        assert!(inverse(&vec![vec![r(1), r(2)], vec![r(2), r(4)]]).unwrap().is_none());
    }

    #[test]
    fn cyclotomic_inverse_times_matrix_is_identity() {
        let z = Cyclotomic::canonicalize([(1, r(1)), (4, r(1))], 5).unwrap();
        let m = vec![
            vec![Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::one()],
            vec![z.clone(), Cyclotomic::from_int(2), Cyclotomic::from_int(-1)],
            vec![Cyclotomic::from_int(3), z.conjugate(), &z * &z],
        ];
        let inv = inverse(&m).unwrap().unwrap();
        for i in 0..3 {
            let row = row_times(&inv[i], &m);
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { Cyclotomic::one() } else { Cyclotomic::zero() });
            }
        }
    }

    #[test]
    fn rank_counts_independent_rows() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        assert_eq!(rank(&m), 2);
    }
}
