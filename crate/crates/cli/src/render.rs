//! Text rendering of a JSON report: one `key: value` line per field, nested
//! objects indented, arrays of plain values kept on one line.

use serde_json::Value;

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !i.is_object()),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn write(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if is_flat(item) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write(out, item, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}- [{i}]\n"));
                write(out, item, indent + 1);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_layout() {
        let v = json!({"d": 4, "type": [2, 3], "before": {"h0": 1}, "nodes": [{"y": "1/2"}]});
        assert_eq!(
            render(&v),
            "before:\n  h0: 1\nd: 4\nnodes:\n  - [0]\n    y: 1/2\ntype: [2, 3]\n"
        );
    }
}
