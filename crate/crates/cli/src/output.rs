//! Text and structured renderings. The text form of a report is the
//! structured one flattened to `path: value` lines, so both carry the same
//! fields.

use serde_json::Value;

use shufflecheck::ClaimOutcome;

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn flatten_text(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten_into(v, String::new(), &mut lines);
    lines
        .into_iter()
        .map(|(k, v)| format!("{k}: {v}\n"))
        .collect()
}

fn flatten_into(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten_into(child, p, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push((path, "[]".to_string()));
                return;
            }
            for (i, child) in items.iter().enumerate() {
                flatten_into(child, format!("{path}[{i}]"), out);
            }
        }
        Value::Null => out.push((path, "none".to_string())),
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}

pub fn claims_text(claims: &[ClaimOutcome]) -> String {
    let mut s = String::new();
    for c in claims {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{tag} {}: {} | {}\n", c.id, c.claim, c.detail));
    }
    let passed = claims.iter().filter(|c| c.passed).count();
    s.push_str(&format!("{passed}/{} claims hold\n", claims.len()));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let v = json!({"a": 1, "b": {"c": "x", "d": [1, 2]}, "e": null, "f": []});
        assert_eq!(
            flatten_text(&v),
            "a: 1\nb.c: x\nb.d[0]: 1\nb.d[1]: 2\ne: none\nf: []\n"
        );
    }
}
