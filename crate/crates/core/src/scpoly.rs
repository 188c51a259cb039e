//! The simplex `S(G) = { x : x V >= 0, x_1 = 1 }` and its polarity tests.
//!
//! Points are affine: the leading coordinate `x_1 = 1` is dropped, so a point
//! of `S(G)` has `m - 1` coordinates, one per non-trivial real character.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::chartab::RealCharacterTable;
use crate::cyclo::{Cyclotomic, Rational, Sign};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSimplex {
    pub dim: usize,
    /// Inward facet normals in homogeneous coordinates: a point `x` lies in
    /// the simplex iff `<normal, (1, x)> >= 0` for every normal.
    pub facet_normals: Vec<Vec<Cyclotomic>>,
    /// `vertices[j]` is the vertex opposite facet `j`.
    pub vertices: Vec<Vec<Cyclotomic>>,
    pub orbit_sizes: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Polarity {
    pub is_lattice: bool,
    pub is_reflexive: bool,
    pub is_self_polar: bool,
}

fn is_integral(v: &Cyclotomic) -> bool {
    v.as_rational().is_some_and(|q| q.is_integer())
}

impl SSimplex {
    /// Builds `S(G)` from the real table. Vertices come from the rows of `V^-1`:
    /// row `j` is orthogonal to every column except `j`.
    pub fn from_table(rt: &RealCharacterTable) -> Result<SSimplex> {
        let m = rt.m();
        let inv = linalg::inverse(&rt.values)?.ok_or_else(|| Error::InvalidTable("real character table is singular".into()))?;
        let mut vertices = Vec::with_capacity(m);
        for (j, row) in inv.iter().enumerate() {
            let lead = &row[0];
            if lead.is_zero() {
                return Err(Error::Internal(format!("vertex {} lies at infinity", j + 1)));
            }
            let scale = lead.inverse()?;
            vertices.push(row[1..].iter().map(|v| v * &scale).collect());
        }
        let s = SSimplex {
            dim: m - 1,
            facet_normals: (0..m).map(|j| rt.column(j)).collect(),
            vertices,
            orbit_sizes: rt.orbit_sizes.clone(),
        };
        if s.vertices != closed_form_vertices(rt) {
            return Err(Error::Internal("vertices disagree with the closed form".into()));
        }
        Ok(s)
    }

    /// `<normal_j, (1, x)>`.
    pub fn facet_value(&self, j: usize, x: &[Cyclotomic]) -> Cyclotomic {
        let n = &self.facet_normals[j];
        x.iter().zip(&n[1..]).fold(n[0].clone(), |acc, (xi, ni)| &acc + &(xi * ni))
    }

    pub fn contains(&self, x: &[Cyclotomic]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        for j in 0..self.facet_normals.len() {
            if self.facet_value(j, x).real_sign()? == Sign::Negative {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_integer(&self, x: &[i64]) -> Result<bool> {
        let x: Vec<Cyclotomic> = x.iter().map(|&v| Cyclotomic::from_int(v)).collect();
        self.contains(&x)
    }

    /// `k * S`: vertices scaled by `k`, normals' constant term scaled by `k`.
    pub fn dilate(&self, k: u64) -> Result<SSimplex> {
        if k == 0 {
            return Err(Error::InvalidArgument("dilation factor must be positive".into()));
        }
        let kq = Rational::from_integer(BigInt::from(k));
        let mut s = self.clone();
        for n in &mut s.facet_normals {
            n[0] = n[0].scale(&kq);
        }
        for v in &mut s.vertices {
            for c in v.iter_mut() {
                *c = c.scale(&kq);
            }
        }
        Ok(s)
    }

    /// Dehomogenized facet normals `n' / n_0`.
    pub fn dual_points(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        self.facet_normals
            .iter()
            .map(|n| {
                let lead = n[0].inverse()?;
                Ok(n[1..].iter().map(|v| v * &lead).collect())
            })
            .collect()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(is_integral)
    }

    pub fn polarity(&self) -> Polarity {
        let is_lattice = self.is_lattice();
        let dual = self.dual_points().unwrap_or_default();
        // The polar is the convex hull of the negated dual points.
        let polar_lattice = !dual.is_empty() && dual.iter().flatten().all(is_integral);
        let mut a = dual.clone();
        let mut b = self.vertices.clone();
        a.sort_by(|x, y| cmp_points(x, y));
        b.sort_by(|x, y| cmp_points(x, y));
        Polarity { is_lattice, is_reflexive: is_lattice && polar_lattice, is_self_polar: !dual.is_empty() && a == b }
    }
}

fn cmp_points(a: &[Cyclotomic], b: &[Cyclotomic]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = (x.conductor(), x.terms()).cmp(&(y.conductor(), y.terms()));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Vertex `j` has coordinates `V[i][j] / o_i` for the non-trivial rows `i`.
pub fn closed_form_vertices(rt: &RealCharacterTable) -> Vec<Vec<Cyclotomic>> {
    let m = rt.m();
    (0..m)
        .map(|j| {
            (1..m)
                .map(|i| rt.values[i][j].scale(&Rational::new(BigInt::from(1), BigInt::from(rt.orbit_sizes[i]))))
                .collect()
        })
        .collect()
}

/// The origin: the trivial character.
pub fn origin(dim: usize) -> Vec<Cyclotomic> {
    (0..dim).map(|_| Cyclotomic::zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{CharacterTable, ConjugacyClass};
    use alloc::vec;

    fn class(name: &str, size: u64, order: u64) -> ConjugacyClass {
        ConjugacyClass { name: name.into(), size, element_order: order }
    }

    fn ints(v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::from_int(x)).collect()
    }

    fn s4() -> RealCharacterTable {
        CharacterTable::new(
            "S4",
            24,
            vec![class("1a", 1, 1), class("2a", 3, 2), class("3a", 8, 3), class("2b", 6, 2), class("4a", 6, 4)],
            [[1, 1, 1, 1, 1], [1, 1, 1, -1, -1], [2, 2, -1, 0, 0], [3, -1, 0, 1, -1], [3, -1, 0, -1, 1]]
                .iter()
                .map(|r| ints(r))
                .collect(),
        )
        .unwrap()
        .realify()
        .unwrap()
    }

    fn c2() -> RealCharacterTable {
        CharacterTable::new("C2", 2, vec![class("1a", 1, 1), class("2a", 1, 2)], vec![ints(&[1, 1]), ints(&[1, -1])])
            .unwrap()
            .realify()
            .unwrap()
    }

    #[test]
    fn c2_segment() {
        let s = SSimplex::from_table(&c2()).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(s.vertices, vec![ints(&[1]), ints(&[-1])]);
        let d = s.dilate(3).unwrap();
        assert_eq!(d.vertices, vec![ints(&[3]), ints(&[-3])]);
        let inside: Vec<i64> = (-5..=5).filter(|&x| d.contains_integer(&[x]).unwrap()).collect();
        assert_eq!(inside, vec![-3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn s4_vertices_are_truncated_columns() {
        let rt = s4();
        let s = SSimplex::from_table(&rt).unwrap();
        for j in 0..5 {
            let col: Vec<Cyclotomic> = (1..5).map(|i| rt.values[i][j].clone()).collect();
            assert_eq!(s.vertices[j], col);
        }
        assert_eq!(s.polarity(), Polarity { is_lattice: true, is_reflexive: true, is_self_polar: true });
        assert_eq!(s.dilate(1).unwrap(), s);
        assert!(matches!(s.dilate(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn vertex_facet_duality() {
        let s = SSimplex::from_table(&s4()).unwrap();
        for (k, v) in s.vertices.iter().enumerate() {
            for j in 0..5 {
                let sign = s.facet_value(j, v).real_sign().unwrap();
                assert_eq!(sign, if j == k { Sign::Positive } else { Sign::Zero });
            }
        }
    }

    #[test]
    fn doubled_vertex_leaves_the_simplex() {
        let s = SSimplex::from_table(&s4()).unwrap();
        assert!(s.contains(&s.vertices[0]).unwrap());
        assert!(s.contains(&origin(4)).unwrap());
        let doubled: Vec<Cyclotomic> = s.vertices[0].iter().map(|v| v + v).collect();
        assert!(!s.contains(&doubled).unwrap());
        assert!(matches!(s.contains(&origin(3)), Err(Error::DimensionMismatch { .. })));
    }
}
