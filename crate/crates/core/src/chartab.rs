//! Character tables, their integrity checks, and the real table `V`.
//!
//! Rows of a [`CharacterTable`] are the complex irreducible characters with
//! the trivial character first; columns are conjugacy classes with the
//! identity class first. [`CharacterTable::realify`] sums complex conjugate
//! row pairs and merges the duplicate columns this produces, giving the
//! square table of real irreducible characters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::{common_conductor, factor, Cyclotomic, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub name: String,
    /// Number of elements in the class.
    pub size: u64,
    pub element_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub name: String,
    pub group_order: u64,
    pub classes: Vec<ConjugacyClass>,
    /// `irreducibles[i][c]` is the value of the `i`-th irreducible on class `c`.
    pub irreducibles: Vec<Vec<Cyclotomic>>,
}

/// One violated table invariant. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityNotFirst,
    ClassSizeDoesNotDivide { class: usize },
    ElementOrderDoesNotDivide { class: usize },
    ClassSizeSum { sum: u64, order: u64 },
    TrivialRow { class: usize },
    Degree { row: usize },
    DegreeSquares { sum: BigInt, order: u64 },
    RowOrthogonality { i: usize, j: usize, value: Cyclotomic },
    ColumnOrthogonality { c: usize, d: usize, value: Cyclotomic },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityNotFirst => f.write_str("first class is not the identity class"),
            Violation::ClassSizeDoesNotDivide { class } => write!(f, "size of class {} does not divide the group order", class + 1),
            Violation::ElementOrderDoesNotDivide { class } => {
                write!(f, "element order of class {} does not divide the group order", class + 1)
            }
            Violation::ClassSizeSum { sum, order } => write!(f, "class sizes sum to {sum}, group order is {order}"),
            Violation::TrivialRow { class } => write!(f, "first row is not 1 at class {}", class + 1),
            Violation::Degree { row } => write!(f, "degree of row {} is not a positive integer", row + 1),
            Violation::DegreeSquares { sum, order } => write!(f, "squared degrees sum to {sum}, group order is {order}"),
            Violation::RowOrthogonality { i, j, value } => {
                write!(f, "row orthogonality fails at ({}, {}): scalar product {value}", i + 1, j + 1)
            }
            Violation::ColumnOrthogonality { c, d, value } => {
                write!(f, "column orthogonality fails at ({}, {}): sum {value}", c + 1, d + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The square table of real irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCharacterTable {
    /// `values[i][j]`: real row `i` on merged column `j`. Row 0 is all ones.
    pub values: Vec<Vec<Cyclotomic>>,
    /// Number of complex irreducibles summed into each real row (1 or 2).
    pub orbit_sizes: Vec<u32>,
    /// Complex row indices making up each real row.
    pub row_orbits: Vec<Vec<usize>>,
    /// Classes merged into each column (a class and possibly its inverse class).
    pub column_classes: Vec<Vec<usize>>,
    /// Columns whose elements have prime power order; column 0 (the identity) included.
    pub prime_power_columns: Vec<usize>,
    /// For every class of the complex table, its merged column.
    pub class_to_column: Vec<usize>,
    pub class_names: Vec<String>,
}

pub fn is_prime_power(n: u64) -> bool {
    n >= 2 && n <= u64::from(u32::MAX) && factor(n as u32).len() == 1
}

fn rational(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl CharacterTable {
    /// Assembles a table, checking only its shape.
    pub fn new(
        name: impl Into<String>,
        group_order: u64,
        classes: Vec<ConjugacyClass>,
        irreducibles: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let n = classes.len();
        if n == 0 {
            return Err(Error::InvalidTable("no conjugacy classes".into()));
        }
        if irreducibles.len() != n {
            return Err(Error::InvalidTable(format!("{} irreducibles for {} classes", irreducibles.len(), n)));
        }
        if let Some((i, row)) = irreducibles.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidTable(format!("row {} has {} entries, expected {}", i + 1, row.len(), n)));
        }
        Ok(CharacterTable { name: name.into(), group_order, classes, irreducibles })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn degree(&self, row: usize) -> Option<i64> {
        self.irreducibles[row][0].as_integer().and_then(|d| d.to_i64())
    }

    /// Scalar product `(1/|G|) sum_c |c| a(c) conj(b(c))`.
    pub fn scalar_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (c, class) in self.classes.iter().enumerate() {
            if a[c].is_zero() || b[c].is_zero() {
                continue;
            }
            let term = (&a[c] * &b[c].conjugate()).scale(&rational(class.size));
            acc = &acc + &term;
        }
        acc.scale(&rational(self.group_order).recip())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.class_count();
        let order = self.group_order;
        let first = &self.classes[0];
        if first.size != 1 || first.element_order != 1 {
            violations.push(Violation::IdentityNotFirst);
        }
        let mut sum = 0u64;
        for (c, class) in self.classes.iter().enumerate() {
            sum = sum.saturating_add(class.size);
            if class.size == 0 || !order.is_multiple_of(class.size) {
                violations.push(Violation::ClassSizeDoesNotDivide { class: c });
            }
            if class.element_order == 0 || !order.is_multiple_of(class.element_order) {
                violations.push(Violation::ElementOrderDoesNotDivide { class: c });
            }
        }
        if sum != order {
            violations.push(Violation::ClassSizeSum { sum, order });
        }
        for c in 0..n {
            if self.irreducibles[0][c] != Cyclotomic::one() {
                violations.push(Violation::TrivialRow { class: c });
            }
        }
        let mut squares = BigInt::zero();
        for i in 0..n {
            match self.irreducibles[i][0].as_integer() {
                Some(d) if d.is_positive() => squares += &d * &d,
                _ => violations.push(Violation::Degree { row: i }),
            }
        }
        if squares != BigInt::from(order) {
            violations.push(Violation::DegreeSquares { sum: squares, order });
        }
        for i in 0..n {
            for j in i..n {
                let value = self.scalar_product(&self.irreducibles[i], &self.irreducibles[j]);
                let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if value != expected {
                    violations.push(Violation::RowOrthogonality { i, j, value });
                }
            }
        }
        for c in 0..n {
            for d in c..n {
                let mut value = Cyclotomic::zero();
                for row in &self.irreducibles {
                    value = &value + &(&row[c] * &row[d].conjugate());
                }
                let expected = if c == d && self.classes[c].size != 0 {
                    Cyclotomic::from_rational(Rational::new(BigInt::from(order), BigInt::from(self.classes[c].size)))
                } else {
                    Cyclotomic::zero()
                };
                if value != expected {
                    violations.push(Violation::ColumnOrthogonality { c, d, value });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Folds complex conjugate rows together and merges duplicate columns.
    pub fn realify(&self) -> Result<RealCharacterTable> {
        let n = self.class_count();
        let mut assigned = vec![false; n];
        let mut row_orbits = Vec::new();
        let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let conj: Vec<Cyclotomic> = self.irreducibles[i].iter().map(Cyclotomic::conjugate).collect();
            let partner = (i..n)
                .find(|&j| !assigned[j] && self.irreducibles[j] == conj)
                .ok_or_else(|| Error::InvalidTable(format!("row {} has no complex conjugate row", i + 1)))?;
            assigned[i] = true;
            assigned[partner] = true;
            if partner == i {
                row_orbits.push(vec![i]);
                rows.push(self.irreducibles[i].clone());
            } else {
                row_orbits.push(vec![i, partner]);
                rows.push(self.irreducibles[i].iter().zip(&self.irreducibles[partner]).map(|(a, b)| a + b).collect());
            }
        }
        let m = rows.len();
        let mut column_classes: Vec<Vec<usize>> = Vec::new();
        let mut class_to_column = vec![0; n];
        for c in 0..n {
            let existing = column_classes.iter().position(|group| {
                let d = group[0];
                rows.iter().all(|row| row[c] == row[d])
            });
            match existing {
                Some(j) => {
                    column_classes[j].push(c);
                    class_to_column[c] = j;
                }
                None => {
                    class_to_column[c] = column_classes.len();
                    column_classes.push(vec![c]);
                }
            }
        }
        if column_classes.len() != m {
            return Err(Error::Internal(format!(
                "{} real characters but {} merged columns",
                m,
                column_classes.len()
            )));
        }
        for group in &column_classes {
            let c = &self.classes[group[0]];
            if group.len() > 2 || group.iter().any(|&d| self.classes[d].element_order != c.element_order || self.classes[d].size != c.size) {
                return Err(Error::Internal(format!("column group {group:?} is not a class/inverse pair")));
            }
        }
        let values: Vec<Vec<Cyclotomic>> =
            rows.iter().map(|row| column_classes.iter().map(|g| row[g[0]].clone()).collect()).collect();
        if values.iter().flatten().any(|v| !v.is_real()) {
            return Err(Error::Internal("real table has a non-real entry".into()));
        }
        let prime_power_columns = column_classes
            .iter()
            .enumerate()
            .filter(|(_, g)| {
                let o = self.classes[g[0]].element_order;
                o == 1 || is_prime_power(o)
            })
            .map(|(j, _)| j)
            .collect();
        Ok(RealCharacterTable {
            values,
            orbit_sizes: row_orbits.iter().map(|o| o.len() as u32).collect(),
            row_orbits,
            column_classes,
            prime_power_columns,
            class_to_column,
            class_names: self.classes.iter().map(|c| c.name.clone()).collect(),
        })
    }

    /// Number of Galois orbits on the irreducibles, i.e. of rational irreducible characters.
    pub fn galois_orbit_count(&self) -> usize {
        let n = self.class_count();
        let conductor = common_conductor(self.irreducibles.iter().flatten());
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for k in 2..conductor.max(2) {
            if k.gcd(&conductor) != 1 {
                continue;
            }
            for i in 0..n {
                let image: Vec<Cyclotomic> = self.irreducibles[i].iter().map(|v| v.galois(i64::from(k))).collect();
                if let Some(j) = self.irreducibles.iter().position(|r| *r == image) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Coefficients of a class function in the irreducible basis.
    pub fn decompose(&self, values: &[Cyclotomic]) -> Result<Vec<i64>> {
        let n = self.class_count();
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        let mut coeffs = Vec::with_capacity(n);
        for (i, row) in self.irreducibles.iter().enumerate() {
            let a = self.scalar_product(values, row);
            let int = a
                .as_integer()
                .and_then(|v| v.to_i64())
                .ok_or_else(|| Error::Decomposition(format!("coefficient of row {} is {a}", i + 1)))?;
            coeffs.push(int);
        }
        let rebuilt = self.combine(&coeffs);
        if rebuilt.as_slice() != values {
            return Err(Error::Decomposition("values are not in the span of the irreducibles".into()));
        }
        Ok(coeffs)
    }

    /// The class function `sum_i coeffs[i] chi_i`.
    pub fn combine(&self, coeffs: &[i64]) -> Vec<Cyclotomic> {
        (0..self.class_count())
            .map(|c| {
                coeffs.iter().zip(&self.irreducibles).fold(Cyclotomic::zero(), |acc, (&a, row)| {
                    if a == 0 {
                        acc
                    } else {
                        &acc + &row[c].scale(&Rational::from_integer(BigInt::from(a)))
                    }
                })
            })
            .collect()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }
}

impl RealCharacterTable {
    /// Number of real irreducible characters.
    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        self.values.iter().map(|row| row[j].clone()).collect()
    }

    /// `V'`: the table without its all-ones first row.
    pub fn truncated(&self) -> Vec<Vec<Cyclotomic>> {
        self.values[1..].to_vec()
    }

    pub fn column_is_rational(&self, j: usize) -> bool {
        self.values.iter().all(|row| row[j].is_rational())
    }

    pub fn is_rational(&self) -> bool {
        (0..self.m()).all(|j| self.column_is_rational(j))
    }

    /// Prime power order columns, optionally leaving out the identity column.
    pub fn prime_power_columns_with(&self, include_identity: bool) -> Vec<usize> {
        self.prime_power_columns.iter().copied().filter(|&j| include_identity || j != 0).collect()
    }

    /// Columns on which real row `i` takes its degree, i.e. its kernel.
    pub fn kernel_columns(&self, i: usize) -> Vec<usize> {
        let degree = &self.values[i][0];
        (0..self.m()).filter(|&j| self.values[i][j] == *degree).collect()
    }

    /// Expands real-basis coefficients to the complex basis (conjugate pairs share a coefficient).
    pub fn complex_coefficients(&self, real: &[i64], n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for (orbit, &a) in self.row_orbits.iter().zip(real) {
            for &i in orbit {
                out[i] = a;
            }
        }
        out
    }

    /// Folds complex-basis coefficients to the real basis; `None` if a conjugate pair disagrees.
    pub fn real_coefficients(&self, complex: &[i64]) -> Option<Vec<i64>> {
        self.row_orbits
            .iter()
            .map(|orbit| {
                let a = complex[orbit[0]];
                orbit.iter().all(|&i| complex[i] == a).then_some(a)
            })
            .collect()
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (order {}, {} classes)", self.name, self.group_order, self.class_count())?;
        for row in &self.irreducibles {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rational one, used by callers building tables by hand.
pub fn one() -> Rational {
    Rational::one()
}
