//! Text, JSON and CSV renderings. All output is deterministic except the
//! timings reported by `verify`.

use std::fmt::Write as _;

use serde_json::{json, Value};

use spec2char_core::chartab::{CharacterTable, ConjClass};
use spec2char_core::formclass::FormClassification;
use spec2char_core::gf2::BitVec;
use spec2char_core::group::GroupElement;
use spec2char_core::reps::{format_gauss, FullRep, GaussMat};
use spec2char_core::verify::{Status, VerifyReport};
use spec2char_core::TransferReport;

use crate::Format;

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn csv(records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

/// Left-aligned columns separated by two spaces.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Right-aligned numeric columns after a left-aligned label column.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if c == 0 {
                    format!("{s:<w$}", w = widths[c])
                } else {
                    format!("{s:>w$}", w = widths[c])
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn bits_list(vs: &[BitVec]) -> String {
    if vs.is_empty() {
        "0".into()
    } else {
        vs.iter()
            .map(BitVec::to_bitstring)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn pow2(n: usize) -> String {
    if n < 128 {
        (1u128 << n).to_string()
    } else {
        format!("2^{n}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub struct CheckReport {
    pub dim_v: usize,
    pub dim_w: usize,
    pub regular: bool,
    pub polar_spans_w: bool,
    pub real: bool,
    pub order_log2: usize,
    /// log₂|Z(G)|, known when the seed is valid (then Z(G) = W).
    pub center_log2: Option<usize>,
}

pub fn check(r: &CheckReport, format: Format) -> String {
    let center = r.center_log2.map(pow2).unwrap_or_else(|| "-".into());
    let fields = [
        ("dim_v", r.dim_v.to_string()),
        ("dim_w", r.dim_w.to_string()),
        ("regular", yes_no(r.regular).to_string()),
        ("polar_spans_w", yes_no(r.polar_spans_w).to_string()),
        ("real", yes_no(r.real).to_string()),
        ("order", pow2(r.order_log2)),
        ("center_order", center),
    ];
    match format {
        Format::Text => aligned(
            &fields
                .iter()
                .map(|(k, v)| vec![k.to_string(), v.clone()])
                .collect::<Vec<_>>(),
        ),
        Format::Json => pretty(&json!({
            "dim_v": r.dim_v,
            "dim_w": r.dim_w,
            "regular": r.regular,
            "polar_spans_w": r.polar_spans_w,
            "valid": r.regular && r.polar_spans_w,
            "real": r.real,
            "order_log2": r.order_log2,
            "center_order_log2": r.center_log2,
        })),
        Format::Csv => csv(
            std::iter::once(vec!["key".to_string(), "value".to_string()])
                .chain(fields.iter().map(|(k, v)| vec![k.to_string(), v.clone()])),
        ),
    }
}

pub struct TransferRow {
    pub report: TransferReport,
    pub class: Option<FormClassification>,
}

impl TransferRow {
    pub fn form(&self) -> String {
        match &self.class {
            Some(c) => c.pair_types.iter().map(ToString::to_string).collect(),
            None => "-".into(),
        }
    }

    pub fn group(&self) -> String {
        match &self.class {
            Some(c) => c.label.group_name(c.l),
            None => "C2".into(),
        }
    }
}

pub fn transfers(rows: &[TransferRow], format: Format) -> String {
    let header = [
        "s",
        "radical",
        "k",
        "l",
        "form",
        "quotient",
        "degree",
        "characters",
    ];
    let record = |r: &TransferRow| {
        let t = &r.report;
        vec![
            t.s.coords().to_bitstring(),
            bits_list(&t.radical_basis),
            t.k.to_string(),
            t.l.to_string(),
            r.form(),
            r.group(),
            t.degree().to_string(),
            t.character_count().to_string(),
        ]
    };
    match format {
        Format::Text => aligned(
            &std::iter::once(header.iter().map(|s| s.to_string()).collect())
                .chain(rows.iter().map(record))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv(
            std::iter::once(header.iter().map(|s| s.to_string()).collect()).chain(rows.iter().map(record)),
        ),
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|r| {
                    let t = &r.report;
                    json!({
                        "s": t.s.coords().to_bitstring(),
                        "radical": t.radical_basis.iter().map(BitVec::to_bitstring).collect::<Vec<_>>(),
                        "section": t.section.iter().map(BitVec::to_bitstring).collect::<Vec<_>>(),
                        "k": t.k,
                        "l": t.l,
                        "form": r.form(),
                        "pair_basis": r.class.as_ref().map(|c| c.pair_basis.iter().map(BitVec::to_bitstring).collect::<Vec<_>>()),
                        "quotient": r.group(),
                        "degree": t.degree(),
                        "characters": t.character_count(),
                    })
                })
                .collect(),
        )),
    }
}

fn class_json(name: &str, c: &ConjClass) -> Value {
    json!({
        "name": name,
        "v": c.rep_v.to_bitstring(),
        "w": c.rep_w.to_bitstring(),
        "size": c.size,
        "w_subspace": c.w_subspace.iter().map(BitVec::to_bitstring).collect::<Vec<_>>(),
    })
}

fn class_name(i: usize) -> String {
    format!("C{}", i + 1)
}

pub fn classes(classes: &[ConjClass], format: Format) -> String {
    let header = ["class", "v", "w", "size", "w_subspace"];
    let record = |(i, c): (usize, &ConjClass)| {
        vec![
            class_name(i),
            c.rep_v.to_bitstring(),
            c.rep_w.to_bitstring(),
            c.size.to_string(),
            bits_list(&c.w_subspace),
        ]
    };
    match format {
        Format::Text => aligned(
            &std::iter::once(header.iter().map(|s| s.to_string()).collect())
                .chain(classes.iter().enumerate().map(record))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv(
            std::iter::once(header.iter().map(|s| s.to_string()).collect())
                .chain(classes.iter().enumerate().map(record)),
        ),
        Format::Json => pretty(&Value::Array(
            classes
                .iter()
                .enumerate()
                .map(|(i, c)| class_json(&class_name(i), c))
                .collect(),
        )),
    }
}

pub fn oracle_classes(classes: &[Vec<GroupElement>], format: Format) -> String {
    let header = ["class", "representative", "size"];
    let record = |(i, c): (usize, &Vec<GroupElement>)| {
        vec![class_name(i), c[0].to_string(), c.len().to_string()]
    };
    match format {
        Format::Text => aligned(
            &std::iter::once(header.iter().map(|s| s.to_string()).collect())
                .chain(classes.iter().enumerate().map(record))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv(
            std::iter::once(header.iter().map(|s| s.to_string()).collect())
                .chain(classes.iter().enumerate().map(record)),
        ),
        Format::Json => pretty(&Value::Array(
            classes
                .iter()
                .enumerate()
                .map(|(i, c)| json!({ "name": class_name(i), "size": c.len(), "elements": c }))
                .collect(),
        )),
    }
}

pub fn chartable(table: &CharacterTable, format: Format) -> String {
    let names: Vec<String> = (0..table.classes.len()).map(class_name).collect();
    match format {
        Format::Text => {
            let mut rows = vec![std::iter::once(String::new())
                .chain(names.iter().cloned())
                .collect::<Vec<_>>()];
            rows.push(
                std::iter::once("size".to_string())
                    .chain(table.classes.iter().map(|c| c.size.to_string()))
                    .collect(),
            );
            for r in &table.rows {
                rows.push(
                    std::iter::once(r.label())
                        .chain(r.values.iter().map(i64::to_string))
                        .collect(),
                );
            }
            let mut out = grid(&rows);
            out.push('\n');
            for (name, c) in names.iter().zip(&table.classes) {
                let _ = writeln!(
                    out,
                    "{name} = ({},{}) + <{}>",
                    c.rep_v.to_bitstring(),
                    c.rep_w.to_bitstring(),
                    bits_list(&c.w_subspace)
                );
            }
            out
        }
        Format::Csv => csv(std::iter::once(
            std::iter::once("character".to_string())
                .chain(names.iter().cloned())
                .collect(),
        )
        .chain(std::iter::once(
            std::iter::once("size".to_string())
                .chain(table.classes.iter().map(|c| c.size.to_string()))
                .collect(),
        ))
        .chain(table.rows.iter().map(|r| {
            std::iter::once(r.label())
                .chain(r.values.iter().map(i64::to_string))
                .collect()
        }))),
        Format::Json => pretty(&json!({
            "order_log2": table.order_log2,
            "order": pow2(table.order_log2),
            "classes": names.iter().zip(&table.classes).map(|(n, c)| class_json(n, c)).collect::<Vec<_>>(),
            "characters": table.rows.iter().map(|r| json!({
                "label": r.label(),
                "kind": r.kind,
                "degree": r.degree,
                "values": r.values,
            })).collect::<Vec<_>>(),
        })),
    }
}

/// Reads back the value matrix from `chartable --format json` output.
pub fn table_values_from_json(text: &str) -> Result<Vec<Vec<i64>>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    v["characters"]
        .as_array()
        .ok_or("missing \"characters\"")?
        .iter()
        .map(|c| {
            c["values"]
                .as_array()
                .ok_or_else(|| "missing \"values\"".to_string())?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| format!("non-integer value {x}")))
                .collect()
        })
        .collect()
}

fn matrix_text(m: &GaussMat) -> String {
    let rows: Vec<String> = (0..m.size())
        .map(|r| {
            (0..m.size())
                .map(|c| format_gauss(m.get(r, c)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn matrix_json(m: &GaussMat) -> Value {
    Value::Array(
        (0..m.size())
            .map(|r| {
                (0..m.size())
                    .map(|c| Value::String(format_gauss(m.get(r, c))))
                    .collect()
            })
            .collect(),
    )
}

pub struct RepBlock {
    pub rep: FullRep,
    pub generators: Vec<(GroupElement, GaussMat)>,
    pub element: Option<(GroupElement, GaussMat)>,
}

impl RepBlock {
    fn label(&self) -> String {
        format!(
            "s[{}],{}",
            self.rep.surjection.s.coords(),
            self.rep.surjection.index
        )
    }

    fn form(&self) -> String {
        let c = &self.rep.quotient.classification;
        c.pair_types.iter().map(ToString::to_string).collect()
    }
}

pub fn reps(blocks: &[RepBlock], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for b in blocks {
                let c = &b.rep.quotient.classification;
                let _ = writeln!(
                    out,
                    "{}  degree {}  form {}  quotient {}",
                    b.label(),
                    b.rep.degree(),
                    b.form(),
                    c.label.group_name(c.l)
                );
                for (g, m) in &b.generators {
                    let _ = writeln!(out, "  {g} -> {}", matrix_text(m));
                }
                if let Some((g, m)) = &b.element {
                    let _ = writeln!(out, "  element {g} -> {}", matrix_text(m));
                }
            }
            out
        }
        Format::Csv => csv(
            std::iter::once(vec!["character".into(), "element".into(), "matrix".into()]).chain(
                blocks.iter().flat_map(|b| {
                    b.generators
                        .iter()
                        .chain(b.element.as_ref())
                        .map(|(g, m)| vec![b.label(), g.to_string(), matrix_text(m)])
                        .collect::<Vec<_>>()
                }),
            ),
        ),
        Format::Json => pretty(&Value::Array(
            blocks
                .iter()
                .map(|b| {
                    let f = &b.rep.surjection;
                    let c = &b.rep.quotient.classification;
                    json!({
                        "s": f.s.coords().to_bitstring(),
                        "index": f.index,
                        "degree": b.rep.degree(),
                        "form": b.form(),
                        "quotient": c.label.group_name(c.l),
                        "generators": b.generators.iter().map(|(g, m)| json!({"element": g, "matrix": matrix_json(m)})).collect::<Vec<_>>(),
                        "element": b.element.as_ref().map(|(g, m)| json!({"element": g, "matrix": matrix_json(m)})),
                    })
                })
                .collect(),
        )),
    }
}

fn status_word(s: &Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail(_) => "FAIL",
        Status::Skip(_) => "SKIP",
    }
}

fn status_detail(s: &Status) -> &str {
    match s {
        Status::Pass => "",
        Status::Fail(m) | Status::Skip(m) => m,
    }
}

pub fn verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let _ = write!(
                    out,
                    "{}  {:<44} {:>10.2} ms",
                    status_word(&c.status),
                    c.name,
                    c.elapsed.as_secs_f64() * 1e3
                );
                match &c.status {
                    Status::Pass => out.push('\n'),
                    s => {
                        let _ = writeln!(out, "  {}", status_detail(s));
                    }
                }
            }
            let count = |w: &str| {
                report
                    .checks
                    .iter()
                    .filter(|c| status_word(&c.status) == w)
                    .count()
            };
            let _ = writeln!(
                out,
                "result: {} ({} passed, {} failed, {} skipped)",
                if report.passed() { "PASS" } else { "FAIL" },
                count("PASS"),
                count("FAIL"),
                count("SKIP")
            );
            out
        }
        Format::Csv => csv(std::iter::once(vec![
            "check".into(),
            "status".into(),
            "detail".into(),
            "millis".into(),
        ])
        .chain(report.checks.iter().map(|c| {
            vec![
                c.name.to_string(),
                status_word(&c.status).to_string(),
                status_detail(&c.status).to_string(),
                format!("{:.3}", c.elapsed.as_secs_f64() * 1e3),
            ]
        }))),
        Format::Json => pretty(&json!({ "passed": report.passed(), "checks": report.checks })),
    }
}
