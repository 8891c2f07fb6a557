use std::fmt::Write;

use serde_json::Value;

/// Plain-text form of a result document: one `key: value` line per scalar,
/// lists one item per line, nested objects indented.
pub fn text(doc: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            field(&mut out, 0, k, v);
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline_row(items: &[Value]) -> Option<String> {
    let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn field(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    match v {
        Value::Array(items) if items.is_empty() => {
            let _ = writeln!(out, "{pad}{key}: (none)");
        }
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) && key_is_short_list(items) => {
            let _ = writeln!(out, "{pad}{key}: {}", inline_row(items).unwrap_or_default());
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key} ({}):", items.len());
            for item in items {
                match item {
                    Value::Array(row) => {
                        let row = inline_row(row).unwrap_or_else(|| item.to_string());
                        let _ = writeln!(out, "{pad}  {row}");
                    }
                    Value::Object(map) => {
                        let parts: Vec<String> = map
                            .iter()
                            .map(|(k, v)| format!("{k}={}", scalar(v).unwrap_or_else(|| v.to_string())))
                            .collect();
                        let _ = writeln!(out, "{pad}  {}", parts.join(" "));
                    }
                    other => {
                        let _ = writeln!(out, "{pad}  {}", scalar(other).unwrap_or_default());
                    }
                }
            }
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                field(out, indent + 2, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

// numbers print inline, strings one per line
fn key_is_short_list(items: &[Value]) -> bool {
    items.iter().all(Value::is_number)
}
