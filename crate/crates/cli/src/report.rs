//! Report emission: pretty JSON or an indented text rendering.
//!
//! Both forms are deterministic: object keys are stored sorted (serde_json's
//! default map is a BTreeMap), so identical reports serialize to identical
//! bytes.

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(report).expect("reports are plain JSON values");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut out = String::new();
            match report {
                Value::Object(map) => render_object(&mut out, map, 0),
                other => {
                    out.push_str(&inline(other));
                    out.push('\n');
                }
            }
            out
        }
    }
}

/// Composite values get their own indented block; everything else stays on
/// one line.
fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

/// Arrays of scalars render inline as `[a, b, c]`.
fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_scalar))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => String::from("~"),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(_) => String::from("{...}"),
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn render_object(out: &mut String, map: &serde_json::Map<String, Value>, indent: usize) {
    for (key, value) in map {
        pad(out, indent);
        out.push_str(key);
        if is_scalar(value) || is_flat_array(value) {
            out.push_str(": ");
            out.push_str(&inline(value));
            out.push('\n');
        } else {
            match value {
                Value::Object(m) if m.is_empty() => out.push_str(": {}\n"),
                Value::Array(items) if items.is_empty() => out.push_str(": []\n"),
                Value::Object(m) => {
                    out.push_str(":\n");
                    render_object(out, m, indent + 1);
                }
                Value::Array(items) => {
                    out.push_str(":\n");
                    render_array(out, items, indent + 1);
                }
                _ => unreachable!("scalars are handled above"),
            }
        }
    }
}

fn render_array(out: &mut String, items: &[Value], indent: usize) {
    for item in items {
        pad(out, indent);
        if is_scalar(item) || is_flat_array(item) {
            out.push_str("- ");
            out.push_str(&inline(item));
            out.push('\n');
        } else {
            out.push_str("-\n");
            match item {
                Value::Object(m) => render_object(out, m, indent + 1),
                Value::Array(inner) => render_array(out, inner, indent + 1),
                _ => unreachable!("scalars are handled above"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_is_stable_and_nested() {
        let report = json!({
            "count": 2,
            "items": [
                {"name": "a", "values": [1, 2]},
                {"name": "b", "values": []}
            ],
            "flag": true
        });
        let text = emit(&report, Format::Text);
        let expected = "\
count: 2
flag: true
items:
  -
    name: a
    values: [1, 2]
  -
    name: b
    values: []
";
        assert_eq!(text, expected);
        assert_eq!(text, emit(&report, Format::Text));
    }

    #[test]
    fn json_rendering_sorts_keys() {
        let report = json!({"b": 1, "a": 2});
        let text = emit(&report, Format::Json);
        let a = text.find("\"a\"").unwrap();
        let b = text.find("\"b\"").unwrap();
        assert!(a < b);
        assert!(text.ends_with('\n'));
    }
}
