use std::path::Path;

use anyhow::Context;
use dihom_core::homology::HOMOLOGY_REPORT_SCHEMA;
use dihom_core::EnrichedCategory;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Common header of every report.
pub fn envelope(
    command: &str,
    ring: Option<&str>,
    truncation: Option<usize>,
) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(HOMOLOGY_REPORT_SCHEMA));
    m.insert("tool".into(), json!("dihom"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    if let Some(r) = ring {
        m.insert("ring".into(), json!(r));
    }
    if let Some(d) = truncation {
        m.insert("truncation".into(), json!(d));
    }
    m
}

pub fn describe_category(m: &mut Map<String, Value>, c: &EnrichedCategory) {
    let cat = c.underlying_category();
    m.insert("objects".into(), json!(c.objects()));
    m.insert(
        "morphisms".into(),
        json!(cat.morphisms().iter().map(|f| &f.name).collect::<Vec<_>>()),
    );
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

pub fn write(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn group_text(free_rank: usize, factors: &[String]) -> String {
    let mut parts = Vec::new();
    if free_rank > 0 {
        parts.push(if free_rank == 1 {
            "R".to_string()
        } else {
            format!("R^{free_rank}")
        });
    }
    parts.extend(factors.iter().map(|d| format!("R/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
