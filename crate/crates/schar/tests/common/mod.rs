//! Shared helpers: corpus access and a floating-point reading of the table
//! files that does not go through the library's parser.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use schar_core::CharacterTable;
use serde_json::Value;

/// Every bundled table, smallest first.
pub const BUNDLED: &[&str] = &["C2", "C3", "S3", "D8", "Q8", "SL23", "S4", "A5", "L27", "A8", "M12", "J1", "U43", "2A8"];
pub const SOLVABLE: &[&str] = &["C2", "C3", "S3", "D8", "Q8", "SL23", "S4"];
pub const SMALL: &[&str] = &["C2", "C3", "S3", "D8", "Q8", "SL23", "S4", "A5", "L27"];

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

pub fn table(name: &str) -> CharacterTable {
    schar::corpus::load_table(path(name).to_str().unwrap()).unwrap()
}

pub struct Raw {
    pub order: f64,
    pub sizes: Vec<f64>,
    pub orders: Vec<u64>,
    pub rows: Vec<Vec<(f64, f64)>>,
}

fn number(v: &Value) -> f64 {
    match v {
        Value::Number(n) => n.as_f64().unwrap(),
        Value::String(s) => match s.split_once('/') {
            Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
            None => s.parse().unwrap(),
        },
        _ => panic!("not a number: {v}"),
    }
}

fn complex(v: &Value) -> (f64, f64) {
    match v {
        Value::Object(o) => {
            let n = o["n"].as_f64().unwrap();
            o["terms"].as_array().unwrap().iter().fold((0.0, 0.0), |(re, im), t| {
                let e = t[0].as_f64().unwrap();
                let c = number(&t[1]);
                let a = 2.0 * PI * e / n;
                (re + c * a.cos(), im + c * a.sin())
            })
        }
        other => (number(other), 0.0),
    }
}

pub fn raw(name: &str) -> Raw {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path(name)).unwrap()).unwrap();
    let classes = doc["classes"].as_array().unwrap();
    Raw {
        order: doc["order"].as_f64().unwrap(),
        sizes: classes.iter().map(|c| c["size"].as_f64().unwrap()).collect(),
        orders: classes.iter().map(|c| c["order"].as_u64().unwrap()).collect(),
        rows: doc["irreducibles"].as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(complex).collect()).collect(),
    }
}

impl Raw {
    /// `<a, b> = 1/|G| sum |C| a(C) conj(b(C))`, real part.
    pub fn inner(&self, a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
        let s: f64 = a.iter().zip(b).zip(&self.sizes).map(|((x, y), k)| k * (x.0 * y.0 + x.1 * y.1)).sum();
        s / self.order
    }

    /// Integer coefficients of a class function in the irreducibles, by rounding.
    pub fn decompose(&self, f: &[(f64, f64)]) -> Vec<i64> {
        self.rows.iter().map(|r| self.inner(f, r).round() as i64).collect()
    }

    pub fn combine(&self, coeffs: &[i64]) -> Vec<(f64, f64)> {
        let n = self.sizes.len();
        (0..n)
            .map(|c| {
                coeffs.iter().zip(&self.rows).fold((0.0, 0.0), |(re, im), (&a, r)| (re + a as f64 * r[c].0, im + a as f64 * r[c].1))
            })
            .collect()
    }
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}
