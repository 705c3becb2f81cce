//! Plain-text rendering of reports.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

/// Rows of flat objects sharing their keys print as an aligned table.
fn table(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for item in items {
        let obj = item.as_object()?;
        if obj.len() != keys.len() {
            return None;
        }
        let row: Option<Vec<String>> = keys.iter().map(|k| obj.get(*k).and_then(scalar)).collect();
        rows.push(row?);
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    Some(
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect(),
    )
}

fn render_into(v: &Value, indent: usize, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if let Some(s) = scalar(item) {
                    out.push(format!("{pad}{k}: {s}"));
                } else {
                    out.push(format!("{pad}{k}:"));
                    render_into(item, indent + 2, out);
                }
            }
        }
        Value::Array(items) => match table(items) {
            Some(lines) => out.extend(lines.into_iter().map(|l| format!("{pad}{l}"))),
            None => {
                for (i, item) in items.iter().enumerate() {
                    match scalar(item) {
                        Some(s) => out.push(format!("{pad}- {s}")),
                        None => {
                            out.push(format!("{pad}[{i}]"));
                            render_into(item, indent + 2, out);
                        }
                    }
                }
            }
        },
        other => out.push(format!("{pad}{}", scalar(other).unwrap_or_default())),
    }
}

pub fn render_table(v: &Value) -> String {
    let mut out = Vec::new();
    render_into(v, 0, &mut out);
    let mut text = out.join("\n");
    text.push('\n');
    text
}
