//! Rendering of reports as JSON or aligned text.
//!
//! JSON keys come out in insertion order, so the same report always renders
//! to the same bytes.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use schar_core::chartab::{CharacterTable, RealCharacterTable, ValidationReport, Violation};
use schar_core::{Cyclotomic, Polarity, SCharacter, SSimplex, SearchReport};

use crate::format::cyclotomic_to_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Right-aligned columns; the first column is left-aligned.
pub fn grid(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut w = vec![0; width];
    for row in rows {
        for (k, cell) in row.iter().enumerate() {
            w[k] = w[k].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (k, cell) in row.iter().enumerate() {
            if k == 0 {
                let _ = write!(line, "{cell:<width$}", width = w[0]);
            } else {
                let _ = write!(line, "  {cell:>width$}", width = w[k]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn cells<T: ToString>(label: &str, items: impl IntoIterator<Item = T>) -> Vec<String> {
    std::iter::once(label.to_string()).chain(items.into_iter().map(|v| v.to_string())).collect()
}

fn values_json(values: &[Cyclotomic]) -> Value {
    Value::Array(values.iter().map(cyclotomic_to_json).collect())
}

fn violation_kind(v: &Violation) -> &'static str {
    match v {
        Violation::IdentityNotFirst => "identity_not_first",
        Violation::ClassSizeDoesNotDivide { .. } => "class_size_does_not_divide",
        Violation::ElementOrderDoesNotDivide { .. } => "element_order_does_not_divide",
        Violation::ClassSizeSum { .. } => "class_size_sum",
        Violation::TrivialRow { .. } => "trivial_row",
        Violation::Degree { .. } => "degree",
        Violation::DegreeSquares { .. } => "degree_squares",
        Violation::RowOrthogonality { .. } => "row_orthogonality",
        Violation::ColumnOrthogonality { .. } => "column_orthogonality",
    }
}

pub fn validation(t: &CharacterTable, r: &ValidationReport, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let v: Vec<Value> =
                r.violations.iter().map(|v| json!({"kind": violation_kind(v), "message": v.to_string()})).collect();
            json_string(&json!({"group": t.name, "valid": r.is_valid(), "violations": v}))
        }
        Format::Text => {
            if r.is_valid() {
                return format!("{}: valid\n", t.name);
            }
            let mut out = format!("{}: {} violation(s)\n", t.name, r.violations.len());
            for v in &r.violations {
                let _ = writeln!(out, "  {v}");
            }
            out
        }
    }
}

/// Class counts of a table, before and after merging conjugates.
pub struct Info {
    pub group: String,
    pub order: u64,
    pub classes: usize,
    pub real: usize,
    pub rational: usize,
}

impl Info {
    pub fn new(t: &CharacterTable, rt: &RealCharacterTable) -> Info {
        Info { group: t.name.clone(), order: t.group_order, classes: t.class_count(), real: rt.m(), rational: t.galois_orbit_count() }
    }
}

pub fn info(i: &Info, fmt: Format) -> String {
    match fmt {
        Format::Json => json_string(&json!({
            "group": i.group, "order": i.order, "classes": i.classes, "real": i.real, "rational": i.rational,
        })),
        Format::Text => format!("{} classes, {} real, {} rational\n", i.classes, i.real, i.rational),
    }
}

pub fn simplex(group: &str, s: &SSimplex, p: &Polarity, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let vertices: Vec<Value> = s.vertices.iter().map(|v| values_json(v)).collect();
            json_string(&json!({
                "group": group,
                "dim": s.dim,
                "vertices": vertices,
                "lattice": p.is_lattice,
                "reflexive": p.is_reflexive,
                "self_polar": p.is_self_polar,
            }))
        }
        Format::Text => {
            let mut out = format!("{group}: simplex of dimension {}\n", s.dim);
            let rows: Vec<Vec<String>> =
                s.vertices.iter().enumerate().map(|(k, v)| cells(&format!("v{}", k + 1), v.iter())).collect();
            out.push_str(&grid(&rows));
            let _ = writeln!(out, "lattice: {}, reflexive: {}, self-polar: {}", p.is_lattice, p.is_reflexive, p.is_self_polar);
            out
        }
    }
}

pub fn points(group: &str, dim: usize, pts: &[Vec<i64>], fmt: Format) -> String {
    match fmt {
        Format::Json => json_string(&json!({"group": group, "dim": dim, "count": pts.len(), "points": pts})),
        Format::Text => {
            let mut out = format!("{group}: {} lattice points\n", pts.len());
            let rows: Vec<Vec<String>> = pts.iter().map(|p| cells("", p.iter())).collect();
            out.push_str(&grid(&rows));
            out
        }
    }
}

pub fn count(group: &str, dim: usize, n: u64, fmt: Format) -> String {
    match fmt {
        Format::Json => json_string(&json!({"group": group, "dim": dim, "count": n})),
        Format::Text => format!("{group}: {n} lattice points\n"),
    }
}

fn hit_json(t: &CharacterTable, h: &SCharacter) -> Value {
    let zeros: Vec<&str> = h.flags.zero_classes.iter().map(|&c| t.classes[c].name.as_str()).collect();
    json!({
        "coefficients": h.coeffs,
        "complex_coefficients": h.complex_coeffs,
        "values": values_json(&h.values),
        "ordinary": h.flags.is_ordinary,
        "faithful": h.flags.is_faithful,
        "zero_classes": zeros,
    })
}

fn hit_text(t: &CharacterTable, h: &SCharacter) -> String {
    let n = h.complex_coeffs.len();
    let mut rows = vec![cells("irreducible", 1..=n), cells("coefficient", h.complex_coeffs.iter())];
    let names = t.classes.iter().map(|c| c.name.clone());
    let mut vals = vec![cells("class", names), cells("value", h.values.iter())];
    rows.append(&mut vals);
    // Two separate grids: coefficient rows are indexed by characters, value rows by classes.
    let mut out = grid(&rows[..2]);
    out.push_str(&grid(&rows[2..]));
    out
}

pub fn search(t: &CharacterTable, r: &SearchReport, timings: bool, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut m = Map::new();
            m.insert("group".into(), json!(r.group));
            m.insert("classes".into(), json!(r.class_count));
            m.insert("real".into(), json!(r.real_count));
            m.insert("rational".into(), json!(r.rational_count));
            m.insert("s_characters".into(), json!(r.hits.len()));
            m.insert("virtual_s_characters".into(), json!(r.virtual_hit_count));
            m.insert("lattice_points".into(), json!(r.lattice_point_total));
            m.insert("hits".into(), Value::Array(r.hits.iter().map(|h| hit_json(t, h)).collect()));
            if timings {
                let tm: Map<String, Value> = r.timings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                m.insert("timings_ms".into(), Value::Object(tm));
            }
            json_string(&Value::Object(m))
        }
        Format::Text => {
            let mut out = grid(&[
                cells("group", ["classes", "real", "rational", "S-char.", "virt. S-char."]),
                cells(
                    &r.group,
                    [r.class_count, r.real_count, r.rational_count, r.hits.len(), r.virtual_hit_count],
                ),
            ]);
            if let Some(n) = r.lattice_point_total {
                let _ = writeln!(out, "lattice points: {n}");
            }
            for (k, h) in r.hits.iter().enumerate() {
                let kind = if h.flags.is_ordinary { "ordinary" } else { "virtual" };
                let faithful = if h.flags.is_faithful { ", faithful" } else { "" };
                let _ = writeln!(out, "\nS-character {} ({kind}{faithful})", k + 1);
                out.push_str(&hit_text(t, h));
            }
            if timings {
                out.push('\n');
                for (k, v) in &r.timings {
                    let _ = writeln!(out, "{k}: {v} ms");
                }
            }
            out
        }
    }
}

/// A class function of `G` pushed down to the quotient `F`.
pub struct Projection {
    pub source_coefficients: Vec<i64>,
    pub values: Vec<Cyclotomic>,
    /// Complex-basis decomposition over `F`, if integral.
    pub decomposition: Option<Vec<i64>>,
    pub is_s_character: bool,
}

pub fn projections(g: &CharacterTable, f: &CharacterTable, ps: &[Projection], fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let items: Vec<Value> = ps
                .iter()
                .map(|p| {
                    json!({
                        "source_coefficients": p.source_coefficients,
                        "values": values_json(&p.values),
                        "coefficients": p.decomposition,
                        "s_character": p.is_s_character,
                    })
                })
                .collect();
            json_string(&json!({"from": g.name, "to": f.name, "projections": items}))
        }
        Format::Text => {
            let mut out = format!("{} -> {}: {} projection(s)\n", g.name, f.name, ps.len());
            for (k, p) in ps.iter().enumerate() {
                let _ = writeln!(out, "\nprojection {}{}", k + 1, if p.is_s_character { " (S-character)" } else { "" });
                let mut rows = vec![cells("source", p.source_coefficients.iter())];
                if let Some(d) = &p.decomposition {
                    rows.push(cells("coefficient", d.iter()));
                }
                out.push_str(&grid(&rows));
                out.push_str(&grid(&[cells("class", f.classes.iter().map(|c| c.name.clone())), cells("value", p.values.iter())]));
            }
            out
        }
    }
}

pub fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}
