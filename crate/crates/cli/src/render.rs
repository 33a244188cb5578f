//! Markdown rendering of command output.

use serde_json::{Map, Value};

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Object(m) => {
            if let (Some(n), Some(d)) = (m.get("num"), m.get("den")) {
                let (n, d) = (scalar(n), scalar(d));
                return if d == "1" { n } else { format!("{n}/{d}") };
            }
            if let (Some(lo), Some(hi)) = (m.get("lo"), m.get("hi")) {
                let (lo, hi) = (scalar(lo), scalar(hi));
                return if lo == hi { lo } else { format!("[{lo}, {hi}]") };
            }
            v.to_string()
        }
        other => other.to_string(),
    }
}

fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), " --- |".repeat(header.len()));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    out
}

fn report(m: &Map<String, Value>) -> String {
    let mut out = format!("**{}**: {}\n\n", scalar(&m["theorem"]), scalar(&m["verdict"]));
    if let Some(t) = m.get("threshold") {
        out.push_str(&format!("threshold: {}\n\n", scalar(t)));
    }
    if let Some(Value::Array(checks)) = m.get("checks") {
        let rows = checks.iter().map(|c| {
            ["p", "label", "lhs", "rhs", "outcome"]
                .iter()
                .map(|k| c.get(*k).map(scalar).unwrap_or_else(|| "-".into()))
                .collect()
        });
        out.push_str(&table(&["p", "condition", "lhs", "rhs", "outcome"], rows));
    }
    if let Some(Value::Array(notes)) = m.get("notes") {
        for n in notes {
            out.push_str(&format!("- {}\n", scalar(n)));
        }
    }
    out
}

fn surface_table(m: &Map<String, Value>) -> String {
    let mut rows = Vec::new();
    for kind in ["spanned", "separation"] {
        if let Some(Value::Array(cols)) = m.get(kind) {
            for c in cols {
                rows.push(vec![kind.to_string(), scalar(&c["l2_gt"]), scalar(&c["lc_gt"])]);
            }
        }
    }
    if let Some(Value::Array(jets)) = m.get("jets") {
        for j in jets {
            rows.push(vec![
                format!("{}-jets", scalar(&j[0])),
                scalar(&j[1]["l2_gt"]),
                scalar(&j[1]["lc_gt"]),
            ]);
        }
    }
    let mut out = table(&["condition", "L^2 >", "L.C >"], rows);
    out.push_str(&format!(
        "\nK + mL spanned for m >= {}; very ample for m >= {}\n",
        scalar(&m["spanned_multiple"]),
        scalar(&m["very_ample_multiple"])
    ));
    out
}

fn records(items: &[Value]) -> Option<String> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&str> = first.keys().map(String::as_str).collect();
    let rows = items.iter().map(|it| {
        keys.iter()
            .map(|k| it.get(*k).map(scalar).unwrap_or_else(|| "-".into()))
            .collect()
    });
    Some(table(&keys, rows))
}

pub fn render(v: &Value) -> String {
    match v {
        Value::Object(m) if m.contains_key("verdict") && m.contains_key("theorem") => report(m),
        Value::Object(m) if m.contains_key("spanned") && m.contains_key("separation") => {
            surface_table(m)
        }
        Value::Object(m) if m.contains_key("rows") => {
            let mut out = match &m["rows"] {
                Value::Array(r) => records(r).unwrap_or_default(),
                _ => String::new(),
            };
            if let Some(Value::Array(best)) = m.get("best") {
                for b in best {
                    out.push_str(&format!(
                        "\nprofile {}: least multiple {} ({})",
                        scalar(&b["profile"]),
                        scalar(&b["multiple"]),
                        scalar(&b["theorem"])
                    ));
                }
                out.push('\n');
            }
            out
        }
        Value::Array(items) => records(items).unwrap_or_else(|| scalar(v) + "\n"),
        Value::Object(m) => table(
            &["key", "value"],
            m.iter().map(|(k, v)| vec![k.clone(), scalar(v)]),
        ),
        other => scalar(other) + "\n",
    }
}
