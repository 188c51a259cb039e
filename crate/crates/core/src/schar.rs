//! S-characters: decoding lattice points, classification, projection to
//! quotients, and the search for S-characters positive on every element of
//! prime power order.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;

use crate::chartab::{CharacterTable, RealCharacterTable};
use crate::cyclo::{Cyclotomic, Rational, Sign};
use crate::error::{Error, Result};
use crate::lattice::{ConstraintSystem, EnumerateOptions, Enumerator, ExactRow};
use crate::scpoly::SSimplex;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub is_trivial: bool,
    /// All coefficients non-negative: an actual character.
    pub is_ordinary: bool,
    /// The kernels of the constituents meet in the identity only.
    pub is_faithful: bool,
    /// Classes (of the complex table) where the value is zero.
    pub zero_classes: Vec<usize>,
    pub positive_on_prime_power: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCharacter {
    /// Coefficients of the real irreducible characters; `coeffs[0] = 1`.
    pub coeffs: Vec<i64>,
    /// Coefficients of the complex irreducibles; conjugate pairs agree.
    pub complex_coeffs: Vec<i64>,
    /// Value on every class of the complex table.
    pub values: Vec<Cyclotomic>,
    pub flags: Flags,
}

impl SCharacter {
    /// The lattice point of `S(G)`: the coefficients after the leading 1.
    pub fn point(&self) -> &[i64] {
        &self.coeffs[1..]
    }
}

/// Decodes the lattice point `x` (real coefficients 2..m) into an S-character.
///
/// `include_identity` decides whether the identity counts as an element of
/// prime power order when computing `positive_on_prime_power`.
pub fn decode(x: &[i64], rt: &RealCharacterTable, include_identity: bool) -> Result<SCharacter> {
    let m = rt.m();
    if x.len() + 1 != m {
        return Err(Error::DimensionMismatch { expected: m - 1, got: x.len() });
    }
    let mut coeffs = Vec::with_capacity(m);
    coeffs.push(1);
    coeffs.extend_from_slice(x);
    let mut columns = Vec::with_capacity(m);
    for j in 0..m {
        let mut v = Cyclotomic::zero();
        for (i, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                v = &v + &rt.values[i][j].scale(&Rational::from_integer(BigInt::from(a)));
            }
        }
        if v.real_sign()? == Sign::Negative {
            let names: Vec<&str> = rt.column_classes[j].iter().map(|&c| rt.class_names[c].as_str()).collect();
            return Err(Error::NotSCharacter(names.join("/")));
        }
        columns.push(v);
    }
    let values: Vec<Cyclotomic> = rt.class_to_column.iter().map(|&j| columns[j].clone()).collect();
    let zero_classes: Vec<usize> = (0..values.len()).filter(|&c| values[c].is_zero()).collect();
    let mut kernel = vec![true; m];
    for (i, &a) in coeffs.iter().enumerate() {
        if a != 0 {
            for (j, k) in kernel.iter_mut().enumerate() {
                *k &= rt.values[i][j] == rt.values[i][0];
            }
        }
    }
    let positive_on_prime_power = rt.prime_power_columns_with(include_identity).iter().all(|&j| !columns[j].is_zero());
    let flags = Flags {
        is_trivial: x.iter().all(|&a| a == 0),
        is_ordinary: coeffs.iter().all(|&a| a >= 0),
        is_faithful: kernel.iter().skip(1).all(|&k| !k),
        zero_classes,
        positive_on_prime_power,
    };
    let n = rt.class_to_column.len();
    Ok(SCharacter { complex_coeffs: rt.complex_coefficients(&coeffs, n), coeffs, values, flags })
}

/// The induced map from the classes of `G` onto the classes of a quotient `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMap {
    pub source: String,
    pub target: String,
    /// `class_map[c]` is the class of `F` that class `c` of `G` maps to.
    pub class_map: Vec<usize>,
}

impl FusionMap {
    /// Checks the map against both tables: identity to identity, and the
    /// class sizes over each fibre add up to `|G|/|F|` times the target size.
    pub fn validate(&self, g: &CharacterTable, f: &CharacterTable) -> Result<()> {
        if self.source != g.name || self.target != f.name {
            return Err(Error::InvalidFusion(format!(
                "map is {} -> {}, tables are {} -> {}",
                self.source, self.target, g.name, f.name
            )));
        }
        if self.class_map.len() != g.class_count() {
            return Err(Error::InvalidFusion(format!("{} entries for {} classes", self.class_map.len(), g.class_count())));
        }
        if let Some(c) = self.class_map.iter().position(|&d| d >= f.class_count()) {
            return Err(Error::InvalidFusion(format!("class {} maps outside the quotient", g.classes[c].name)));
        }
        if self.class_map[0] != 0 {
            return Err(Error::InvalidFusion("identity does not map to identity".into()));
        }
        if f.group_order == 0 || !g.group_order.is_multiple_of(f.group_order) {
            return Err(Error::InvalidFusion("quotient order does not divide the group order".into()));
        }
        let index = g.group_order / f.group_order;
        let mut fibre = vec![0u64; f.class_count()];
        for (c, &d) in self.class_map.iter().enumerate() {
            fibre[d] += g.classes[c].size;
        }
        for (d, &sum) in fibre.iter().enumerate() {
            if sum != index * f.classes[d].size {
                return Err(Error::InvalidFusion(format!(
                    "fibre over {} has {} elements, expected {}",
                    f.classes[d].name,
                    sum,
                    index * f.classes[d].size
                )));
            }
        }
        Ok(())
    }
}

/// Projection of a class function of `G` to the quotient `F`:
/// `phi^F(f) = |C_F(f)| / |G| * sum_{x -> f} |x^G| phi(x)`.
pub fn project(values: &[Cyclotomic], fm: &FusionMap, g: &CharacterTable, f: &CharacterTable) -> Result<Vec<Cyclotomic>> {
    fm.validate(g, f)?;
    if values.len() != g.class_count() {
        return Err(Error::DimensionMismatch { expected: g.class_count(), got: values.len() });
    }
    let mut sums = vec![Cyclotomic::zero(); f.class_count()];
    for (c, v) in values.iter().enumerate() {
        let d = fm.class_map[c];
        sums[d] = &sums[d] + &v.scale(&Rational::from_integer(BigInt::from(g.classes[c].size)));
    }
    Ok(sums
        .iter()
        .enumerate()
        .map(|(d, s)| {
            let factor = Rational::new(BigInt::from(f.group_order), BigInt::from(f.classes[d].size) * BigInt::from(g.group_order));
            s.scale(&factor)
        })
        .collect())
}

/// `chi_i * conj(chi_i)` as an S-character.
pub fn product_schar(t: &CharacterTable, rt: &RealCharacterTable, i: usize, include_identity: bool) -> Result<SCharacter> {
    if i >= t.class_count() {
        return Err(Error::InvalidArgument(format!("no irreducible {}", i + 1)));
    }
    let values: Vec<Cyclotomic> = t.irreducibles[i].iter().map(|v| v * &v.conjugate()).collect();
    let complex = t.decompose(&values)?;
    let real = rt
        .real_coefficients(&complex)
        .ok_or_else(|| Error::Decomposition("conjugate constituents have different multiplicities".into()))?;
    if real[0] != 1 {
        return Err(Error::Decomposition(format!("trivial multiplicity {}", real[0])));
    }
    decode(&real[1..], rt, include_identity)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Require value >= 1 on rational prime power columns during enumeration.
    pub strengthen: bool,
    /// Count the identity as an element of prime power order.
    pub include_identity: bool,
    pub faithful_only: bool,
    pub ordinary_only: bool,
    /// Enumerate without strengthening and report the total number of points.
    pub count_all_points: bool,
    pub enumerate: EnumerateOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strengthen: true,
            include_identity: true,
            faithful_only: true,
            ordinary_only: false,
            count_all_points: false,
            enumerate: EnumerateOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub group: String,
    pub class_count: usize,
    pub real_count: usize,
    pub rational_count: usize,
    pub lattice_point_total: Option<u64>,
    pub hits: Vec<SCharacter>,
    pub virtual_hit_count: usize,
    /// Milliseconds per phase; filled in by drivers that have a clock.
    pub timings: Vec<(String, u64)>,
}

/// Everything a search needs, prepared once and shareable between workers.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    pub real_table: RealCharacterTable,
    pub simplex: SSimplex,
    pub system: ConstraintSystem,
    pub enumerator: Enumerator,
    pub options: SearchOptions,
    pub strengthened_columns: Vec<usize>,
    /// Prime power columns as rows over the lattice point, for a quick zero test.
    prime_power_rows: Vec<ExactRow>,
}

impl SearchPlan {
    pub fn new(t: &CharacterTable, options: &SearchOptions) -> Result<SearchPlan> {
        let real_table = t.realify()?;
        let simplex = SSimplex::from_table(&real_table)?;
        let base = ConstraintSystem::from_simplex(&simplex)?;
        let strengthened_columns: Vec<usize> = if options.strengthen && !options.count_all_points {
            real_table
                .prime_power_columns_with(options.include_identity)
                .into_iter()
                .filter(|&j| base.row_is_rational(j))
                .collect()
        } else {
            Vec::new()
        };
        let system = base.strengthen(&strengthened_columns)?;
        let enumerator = Enumerator::new(&system, &options.enumerate)?;
        let prime_power_rows = real_table
            .prime_power_columns_with(options.include_identity)
            .into_iter()
            .map(|j| ExactRow::new(&base.normals[j]))
            .collect::<Result<_>>()?;
        Ok(SearchPlan {
            real_table,
            simplex,
            system,
            enumerator,
            options: options.clone(),
            strengthened_columns,
            prime_power_rows,
        })
    }

    /// Decodes a lattice point and applies the search filter.
    pub fn accept(&self, x: &[i64]) -> Result<Option<SCharacter>> {
        if x.iter().all(|&a| a == 0) || self.prime_power_rows.iter().any(|r| r.is_zero_at(x)) {
            return Ok(None);
        }
        let s = decode(x, &self.real_table, self.options.include_identity)?;
        let keep = s.flags.positive_on_prime_power
            && (!self.options.faithful_only || s.flags.is_faithful)
            && (!self.options.ordinary_only || s.flags.is_ordinary);
        Ok(keep.then_some(s))
    }

    pub fn report(&self, t: &CharacterTable, mut hits: Vec<SCharacter>, total: Option<u64>) -> SearchReport {
        hits.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        SearchReport {
            group: t.name.clone(),
            class_count: t.class_count(),
            real_count: self.real_table.m(),
            rational_count: t.galois_orbit_count(),
            lattice_point_total: total.filter(|_| self.strengthened_columns.is_empty() && self.options.count_all_points),
            virtual_hit_count: hits.iter().filter(|h| !h.flags.is_ordinary).count(),
            hits,
            timings: Vec::new(),
        }
    }
}

/// Single-threaded search; see [`SearchPlan`] for the pieces.
pub fn search(t: &CharacterTable, options: &SearchOptions) -> Result<SearchReport> {
    let plan = SearchPlan::new(t, options)?;
    let mut hits = Vec::new();
    let mut failure = None;
    let limit = options.enumerate.limit;
    let mut seen = 0u64;
    let outcome = plan.enumerator.walk(&mut |x: &[i64]| {
        seen += 1;
        if limit.is_some_and(|l| seen > l) {
            return ControlFlow::Break(());
        }
        match plan.accept(x) {
            Ok(Some(s)) => hits.push(s),
            Ok(None) => {}
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if outcome.stopped {
        return Err(Error::LimitExceeded(limit.unwrap_or(0)));
    }
    Ok(plan.report(t, hits, Some(outcome.points)))
}
