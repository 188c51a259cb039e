//! Acceptance criteria 1 to 7: one PASS/FAIL line each, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::{is_prime_power, raw, table, BUNDLED, SMALL, SOLVABLE};
use schar::driver::{self, RunConfig};
use schar_core::lattice::brute_force;
use schar_core::schar::{decode, product_schar, project, search, SearchPlan};
use schar_core::{CharacterTable, ConstraintSystem, Cyclotomic, FusionMap, Rational, SCharacter, SSimplex, SearchOptions, Sign};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<Cyclotomic> {
    v.iter().map(|&a| Cyclotomic::from_int(a)).collect()
}

fn simplex(t: &CharacterTable) -> SSimplex {
    SSimplex::from_table(&t.realify().unwrap()).unwrap()
}

fn unstrengthened() -> SearchOptions {
    SearchOptions { strengthen: false, faithful_only: false, ..SearchOptions::default() }
}

fn s4_geometry() -> Check {
    let t = table("S4");
    let s = simplex(&t);
    for (k, v) in s.vertices.iter().enumerate() {
        let column: Vec<Cyclotomic> = t.irreducibles[1..].iter().map(|r| r[k].clone()).collect();
        ensure(*v == column, || format!("vertex {k} is {v:?}"))?;
    }
    let p = s.polarity();
    ensure(p.is_lattice && p.is_reflexive && p.is_self_polar, || format!("polarity {p:?}"))
}

fn l27_geometry() -> Check {
    let s = simplex(&table("L27"));
    let half = Cyclotomic::from_rational(Rational::new((-1).into(), 2.into()));
    let mut expected = vec![ints(&[3, 6, 7, 8]), ints(&[-1, 2, -1, 0]), ints(&[0, 0, 1, -1]), ints(&[1, 0, -1, 0])];
    expected.push(vec![half, Cyclotomic::from_int(-1), Cyclotomic::zero(), Cyclotomic::one()]);
    let mut got = s.vertices.clone();
    ensure(got.len() == 5, || format!("{} vertices", got.len()))?;
    for v in &expected {
        let k = got.iter().position(|w| w == v).ok_or_else(|| format!("missing vertex {v:?}"))?;
        got.remove(k);
    }
    ensure(!s.is_lattice(), || "S(L2(7)) reported as a lattice polytope".into())?;
    ensure(s.dilate(2).unwrap().is_lattice(), || "2 S(L2(7)) is not a lattice polytope".into())
}

fn a8_headline() -> Check {
    let t = table("A8");
    let degrees: Vec<i64> = (0..14).map(|i| t.degree(i).unwrap()).collect();
    ensure(degrees == [1, 7, 14, 20, 21, 21, 21, 28, 35, 45, 45, 56, 64, 70], || format!("degrees {degrees:?}"))?;
    let start = Instant::now();
    let plan = SearchPlan::new(&t, &unstrengthened()).unwrap();
    let n = driver::count(&plan.enumerator, &RunConfig::default()).unwrap();
    ensure(n == 3636, || format!("{n} lattice points"))?;
    ensure(start.elapsed() < Duration::from_secs(3600), || "unstrengthened enumeration over budget".into())?;
    let start = Instant::now();
    let r = driver::search(&t, &SearchOptions::default(), &RunConfig::default()).unwrap();
    ensure(start.elapsed() < Duration::from_secs(900), || "strengthened search over budget".into())?;
    ensure(r.hits.len() == 1 && r.virtual_hit_count == 0, || format!("{} hits, {} virtual", r.hits.len(), r.virtual_hit_count))?;
    let h = &r.hits[0];
    ensure(h.flags.is_ordinary, || "hit is not ordinary".into())?;
    ensure(h.complex_coeffs == [1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3], || format!("coefficients {:?}", h.complex_coeffs))?;
    let values = ints(&[953, 9, 1, 5, 2, 1, 1, 3, 1, 0, 1, 1, 0, 0]);
    ensure(h.values == values, || format!("values {:?}", h.values))?;
    // The unfiltered search over all 3636 points agrees.
    let all = search(&t, &SearchOptions { strengthen: false, ..SearchOptions::default() }).unwrap();
    ensure(all.hits == r.hits, || "unstrengthened search disagrees".into())
}

fn table_one_rows() -> Check {
    for (name, rows) in [("M12", (15, 14, 14)), ("J1", (15, 15, 10)), ("A8", (14, 12, 12))] {
        let out = schar::cli::run(["schar", "info", name]);
        let line = format!("{} classes, {} real, {} rational\n", rows.0, rows.1, rows.2);
        ensure(out.code == 0 && out.stdout == line, || format!("info {name}: {:?}", out.stdout))?;
    }
    for name in ["M12", "J1"] {
        let start = Instant::now();
        let r = driver::search(&table(name), &SearchOptions::default(), &RunConfig::default()).unwrap();
        ensure(start.elapsed() < Duration::from_secs(3600), || format!("{name} over budget"))?;
        ensure(r.hits.len() == 1 && r.virtual_hit_count == 0, || format!("{name}: {} hits, {} virtual", r.hits.len(), r.virtual_hit_count))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    for name in SMALL {
        let t = table(name);
        let cs = ConstraintSystem::from_simplex(&simplex(&t)).unwrap();
        let plan = SearchPlan::new(&t, &unstrengthened()).unwrap();
        let fast = driver::enumerate(&plan.enumerator, &RunConfig::default()).unwrap();
        let slow = brute_force(&cs).unwrap();
        ensure(fast == slow, || format!("{name}: {} points vs {} by box scan", fast.len(), slow.len()))?;
    }
    ensure(start.elapsed() < Duration::from_secs(60), || "over the one minute budget".into())
}

/// Tables whose every lattice point is decoded by the property suite.
const EXHAUSTIVE: &[&str] = &["C2", "C3", "S3", "D8", "Q8", "SL23", "S4", "A5", "L27", "A8", "M12", "J1"];

fn decoded(t: &CharacterTable) -> (SearchPlan, Vec<Vec<i64>>, Vec<SCharacter>) {
    let plan = SearchPlan::new(t, &unstrengthened()).unwrap();
    let points = driver::enumerate(&plan.enumerator, &RunConfig::default()).unwrap();
    let chars = points.iter().map(|x| decode(x, &plan.real_table, true).unwrap()).collect();
    (plan, points, chars)
}

fn property_suite() -> Check {
    for name in EXHAUSTIVE {
        let t = table(name);
        let (plan, points, chars) = decoded(&t);
        let orders = raw(name).orders;
        let rational = t.irreducibles.iter().flatten().all(Cyclotomic::is_rational);
        let origin = vec![0; plan.simplex.dim];
        for (x, s) in points.iter().zip(&chars) {
            // (a) every non-trivial S-character vanishes somewhere.
            ensure(s.flags.is_trivial || !s.flags.zero_classes.is_empty(), || format!("(a) {name} {x:?}"))?;
            // (b) solvable groups: ordinary ones vanish on an element of prime power order.
            if SOLVABLE.contains(name) && s.flags.is_ordinary && !s.flags.is_trivial {
                ensure(s.flags.zero_classes.iter().any(|&c| is_prime_power(orders[c])), || format!("(b) {name} {x:?}"))?;
            }
            // (c) rational tables: the origin is the only interior lattice point.
            if rational && *x != origin {
                let interior = (0..plan.system.len()).all(|j| plan.system.slack(j, x).real_sign().unwrap() == Sign::Positive);
                ensure(!interior, || format!("(c) {name} {x:?} is interior"))?;
            }
            // (f) decomposing the values gives back the coefficients.
            ensure(t.decompose(&s.values).unwrap() == s.complex_coeffs, || format!("(f) {name} {x:?}"))?;
        }
        ensure(points.contains(&origin), || format!("(c) {name}: origin missing"))?;
    }
    for name in BUNDLED {
        let t = table(name);
        let rt = t.realify().unwrap();
        let s = SSimplex::from_table(&rt).unwrap();
        // (d) chi * conj(chi) lies in S(G).
        for i in 0..t.class_count() {
            let p = product_schar(&t, &rt, i, true).map_err(|e| format!("(d) {name} row {i}: {e}"))?;
            ensure(s.contains_integer(p.point()).unwrap(), || format!("(d) {name} row {i}"))?;
        }
        // (e) strengthening is a pure optimization.
        if *name != "U43" {
            for faithful_only in [true, false] {
                let strong = search(&t, &SearchOptions { faithful_only, ..SearchOptions::default() }).unwrap();
                let weak = search(&t, &SearchOptions { faithful_only, strengthen: false, ..SearchOptions::default() }).unwrap();
                ensure(strong.hits == weak.hits, || format!("(e) {name}"))?;
            }
        }
    }
    Ok(())
}

fn projection() -> Check {
    let g = table("2A8");
    let f = table("A8");
    let fm: FusionMap = schar::corpus::load_fusion(common::path("2A8_A8.fusion").to_str().unwrap()).unwrap();
    fm.validate(&g, &f).map_err(|e| e.to_string())?;
    let mut images = 0;
    for (i, chi) in g.irreducibles.iter().enumerate() {
        let p = project(chi, &fm, &g, &f).unwrap();
        if p.iter().all(Cyclotomic::is_zero) {
            continue;
        }
        let k = f.irreducibles.iter().position(|r| *r == p).ok_or_else(|| format!("irreducible {} projects to {p:?}", i + 1))?;
        ensure(k == images, || format!("irreducible {} projects to irreducible {}", i + 1, k + 1))?;
        images += 1;
    }
    ensure(images == f.class_count(), || format!("{images} irreducibles project non-trivially"))?;

    let start = Instant::now();
    let r = driver::search(&g, &SearchOptions { strengthen: false, ..SearchOptions::default() }, &RunConfig::default()).unwrap();
    ensure(start.elapsed() < Duration::from_secs(4 * 3600), || "2.A8 search over budget".into())?;
    ensure(r.hits.len() == 2 && r.virtual_hit_count == 1, || format!("2.A8: {} hits, {} virtual", r.hits.len(), r.virtual_hit_count))?;
    let a8 = search(&f, &SearchOptions::default()).unwrap();
    for h in &r.hits {
        let p = project(&h.values, &fm, &g, &f).unwrap();
        ensure(p == a8.hits[0].values, || format!("hit {:?} projects to {p:?}", h.complex_coeffs))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("S4 geometry", s4_geometry),
        ("L2(7) geometry", l27_geometry),
        ("A8: 3636 points, one ordinary hit", a8_headline),
        ("M12 and J1 spot rows", table_one_rows),
        ("enumeration equals box scan on small tables", oracle_equivalence),
        ("property suite (a)-(f)", property_suite),
        ("projection from 2.A8 to A8", projection),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS {}: {name} ({ms} ms)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
