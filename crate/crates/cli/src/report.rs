//! Plain-text rendering of result records.
//!
//! Objects become `key: value` lines, nested keys joined by dots. An array
//! of flat objects becomes an aligned table.

use serde_json::Value;

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    emit(&mut out, "", v);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(" "),
        Value::Object(o) => o.iter().map(|(k, v)| format!("{k}:{}", scalar(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.values().all(|x| !x.is_array() && !x.is_object() || is_histogram(x)))
}

fn is_histogram(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.values().all(Value::is_number))
}

fn emit(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match x {
                    Value::Object(_) if !is_histogram(x) => emit(out, &key, x),
                    Value::Array(rows) if !rows.is_empty() && rows.iter().all(is_flat) => {
                        out.push_str(&format!("{key}:\n"));
                        table(out, rows);
                    }
                    _ => out.push_str(&format!("{key}: {}\n", scalar(x))),
                }
            }
        }
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
}

fn table(out: &mut String, rows: &[Value]) {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("flat").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| cols.iter().map(|c| r.get(c).map(scalar).unwrap_or_default()).collect()).collect();
    let width: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.chars().count()))
        .collect();
    let line = |row: &[String]| {
        let padded: Vec<String> = row.iter().zip(&width).map(|(s, w)| format!("{s:>w$}")).collect();
        format!("  {}\n", padded.join("  "))
    };
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_keys_and_tables() {
        let v = json!({ "a": 1, "b": { "c": "x" }, "rows": [{ "k": 1, "v": -4 }, { "k": 10, "v": 0 }] });
        assert_eq!(text(&v), "a: 1\nb.c: x\nrows:\n   k   v\n   1  -4\n  10   0\n");
    }
}
