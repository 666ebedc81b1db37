//! A small validator for the subset of JSON Schema used by
//! `schemas/reports.schema.json`: `type`, `properties`, `required`,
//! `additionalProperties: false`, `items`, `enum`, `anyOf`, and local
//! `$ref` into `$defs`.

use serde_json::Value;

pub fn validate(schema_doc: &Value, def: &str, value: &Value) -> Result<(), String> {
    let defs = schema_doc
        .get("$defs")
        .ok_or_else(|| "schema has no $defs".to_string())?;
    let node = defs
        .get(def)
        .ok_or_else(|| format!("no definition named {def}"))?;
    check(schema_doc, node, value, def)
}

fn check(doc: &Value, node: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(reference) = node.get("$ref").and_then(Value::as_str) {
        let name = reference
            .strip_prefix("#/$defs/")
            .ok_or_else(|| format!("{path}: unsupported $ref {reference}"))?;
        let target = doc["$defs"]
            .get(name)
            .ok_or_else(|| format!("{path}: dangling $ref {reference}"))?;
        return check(doc, target, value, path);
    }
    if let Some(options) = node.get("anyOf").and_then(Value::as_array) {
        let mut errors = Vec::new();
        for opt in options {
            match check(doc, opt, value, path) {
                Ok(()) => return Ok(()),
                Err(e) => errors.push(e),
            }
        }
        return Err(format!("{path}: no anyOf branch matched ({errors:?})"));
    }
    if let Some(allowed) = node.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in enum"));
        }
        return Ok(());
    }
    if let Some(ty) = node.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed type")),
        };
        if !names.iter().any(|n| type_matches(n, value)) {
            return Err(format!("{path}: expected {names:?}, got {value}"));
        }
    }
    if let Some(props) = node.get("properties").and_then(Value::as_object) {
        let obj = match value.as_object() {
            Some(o) => o,
            None => return Ok(()),
        };
        for (key, sub) in props {
            if let Some(v) = obj.get(key) {
                check(doc, sub, v, &format!("{path}.{key}"))?;
            }
        }
        if node.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if !props.contains_key(key) {
                    return Err(format!("{path}: unexpected property {key}"));
                }
            }
        }
    }
    if let Some(required) = node.get("required").and_then(Value::as_array) {
        if let Some(obj) = value.as_object() {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required property {key}"));
                }
            }
        }
    }
    if let Some(items) = node.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                check(doc, items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}
