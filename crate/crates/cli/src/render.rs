//! Plain-text rendering of JSON results for `--format table`.

use serde_json::{Map, Value};

fn is_matrix(o: &Map<String, Value>) -> bool {
    has_keys(o, &["m", "rows", "cols", "entries"])
}

fn has_keys(o: &Map<String, Value>, keys: &[&str]) -> bool {
    o.len() == keys.len() && keys.iter().all(|k| o.contains_key(*k))
}

fn is_module(o: &Map<String, Value>) -> bool {
    has_keys(o, &["orders", "action"])
}

fn is_complex(o: &Map<String, Value>) -> bool {
    has_keys(o, &["lo", "hi", "modules", "differentials"])
}

/// Modules print as their additive orders; complexes as one such entry per degree.
fn summary(o: &Map<String, Value>) -> Option<String> {
    if is_module(o) {
        return Some(format!("module {}", cell(&o["orders"])));
    }
    if is_complex(o) {
        let lo = o["lo"].as_i64().unwrap_or(0);
        let terms: Vec<String> = o["modules"]
            .as_array()
            .into_iter()
            .flatten()
            .enumerate()
            .map(|(i, m)| format!("{}: {}", lo + i as i64, cell(&m["orders"])))
            .collect();
        return Some(format!("complex {{{}}}", terms.join(", ")));
    }
    None
}

/// One-line form used for scalars and table cells.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("[{}]", xs.iter().map(cell).collect::<Vec<_>>().join(", "))
        }
        Value::Object(o) if is_matrix(o) => {
            let rows: Vec<String> = o["entries"]
                .as_array()
                .map(|rs| rs.iter().map(|r| serde_json::to_string(r).unwrap_or_default()).collect())
                .unwrap_or_default();
            format!("{}x{} mod {}: [{}]", o["rows"], o["cols"], o["m"], rows.join(" "))
        }
        Value::Object(o) if summary(o).is_some() => summary(o).unwrap_or_default(),
        other => serde_json::to_string(other).unwrap_or_default(),
    }
}

fn table(rows: &[Value]) -> String {
    let mut keys: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().into_iter().flat_map(|o| o.keys()) {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    let body: Vec<Vec<String>> = rows.iter().map(|r| keys.iter().map(|k| cell(r.get(k).unwrap_or(&Value::Null))).collect()).collect();
    let widths: Vec<usize> =
        keys.iter().enumerate().map(|(i, k)| body.iter().map(|r| r[i].chars().count()).chain([k.chars().count()]).max().unwrap_or(0)).collect();
    let line = |cells: &[String]| -> String {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = vec![format!("  {}", line(&keys))];
    out.extend(body.iter().map(|r| format!("  {}", line(r))));
    out.join("\n")
}

fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(o) if !is_matrix(o) && summary(o).is_none() => {
            for (k, x) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, x, out);
            }
        }
        Value::Array(xs) if !xs.is_empty() && xs.iter().all(|x| x.as_object().is_some_and(|o| !is_matrix(o) && summary(o).is_none())) => {
            out.push(format!("{prefix}:"));
            out.push(table(xs));
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            out.push(format!("{prefix}:"));
            for (i, x) in xs.iter().enumerate() {
                out.push(format!("  [{i}] {}", cell(x)));
            }
        }
        _ => out.push(format!("{prefix}: {}", cell(v))),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = Vec::new();
    walk("", v, &mut out);
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rows_become_columns() {
        let v = json!({"ok": true, "rows": [{"degree": 0, "size": 2}, {"degree": 1, "size": 1}]});
        let t = render(&v);
        assert!(t.contains("ok: true"));
        assert!(t.contains("degree  size"));
        assert!(t.lines().any(|l| l.trim() == "1       1"));
    }

    #[test]
    fn matrices_stay_on_one_line() {
        let v = json!({"d": {"m": 2, "rows": 1, "cols": 2, "entries": [[1, 0]]}});
        assert_eq!(render(&v), "d: 1x2 mod 2: [[1,0]]");
    }

    #[test]
    fn complexes_are_summarized() {
        let m = json!({"orders": [2], "action": []});
        let v = json!({"c": {"lo": -1, "hi": 0, "modules": [m, {"orders": [], "action": []}], "differentials": []}});
        assert_eq!(render(&v), "c: complex {-1: [2], 0: []}");
    }
}
