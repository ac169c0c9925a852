//! JSON configuration files, merged into the argument list under the
//! explicit flags.

use std::path::Path;

use serde_json::Value;

use crate::error::CliError;

// repeatable flags; their JSON values are lists of entries, complex
// entries written as [re, im]
const MULTI: [&str; 4] = ["z0", "v0", "phi", "perturb"];

fn scalar(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        // [re, im]
        Value::Array(pair) if pair.len() == 2 && pair.iter().all(Value::is_number) => {
            Ok(format!("{},{}", pair[0], pair[1]))
        }
        Value::Array(items) => Ok(items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?.join(",")),
        other => Err(format!("cannot use {other} as a flag value")),
    }
}

fn flag_tokens(key: &str, value: &Value) -> Result<Vec<String>, String> {
    let flag = format!("--{}", key.replace('_', "-"));
    match value {
        Value::Bool(true) => Ok(vec![flag]),
        Value::Bool(false) | Value::Null => Ok(Vec::new()),
        Value::Array(items) if MULTI.contains(&key) => {
            let mut out = Vec::with_capacity(2 * items.len());
            for item in items {
                out.push(flag.clone());
                out.push(scalar(item)?);
            }
            Ok(out)
        }
        v => Ok(vec![flag, scalar(v)?]),
    }
}

fn present(user: &[String], key: &str) -> bool {
    let flag = format!("--{}", key.replace('_', "-"));
    user.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
}

/// Removes `--config FILE` from `argv` and splices the file's entries in
/// right after the subcommand, skipping any flag the user also gave.
pub fn merge(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(
                it.next()
                    .ok_or_else(|| CliError::Usage("--config needs a file".into()))?,
            );
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let injected = read_config(Path::new(&path), &rest)?;
    // argv[0] is the program, argv[1] the subcommand
    let split = rest.len().min(2);
    let mut out: Vec<String> = rest[..split].to_vec();
    out.extend(injected);
    out.extend_from_slice(&rest[split..]);
    Ok(out)
}

fn read_config(path: &Path, user: &[String]) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {} is not valid JSON: {e}", path.display())))?;
    let Value::Object(map) = value else {
        return Err(CliError::Usage("config must be a JSON object".into()));
    };
    let mut out = Vec::new();
    for (key, v) in &map {
        if present(user, key) {
            continue;
        }
        out.extend(flag_tokens(key, v).map_err(|e| CliError::Usage(format!("config key {key:?}: {e}")))?);
    }
    Ok(out)
}
