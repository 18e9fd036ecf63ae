//! `--config FILE`: a JSON object of flag values spliced into the argument list.
//!
//! Keys are flag names without the leading dashes (`steps`, `M`, `max_ks`); an
//! optional `"command"` key names the subcommand. `true` emits a bare flag,
//! `false` and `null` are dropped, arrays repeat the flag. The values go right
//! after the subcommand, so the same flag given on the command line wins.

use std::fs;

use serde_json::Value;

use crate::CliError;

const SUBCOMMANDS: [&str; 6] = ["evolve", "stationary", "uniform-window", "density", "timeavg", "help"];

fn config_path(argv: &[String]) -> Result<Option<(usize, usize, String)>, CliError> {
    for (i, arg) in argv.iter().enumerate().skip(1) {
        if arg == "--" {
            break;
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Ok(Some((i, 1, path.to_string())));
        }
        if arg == "--config" {
            let path = argv.get(i + 1).ok_or_else(|| CliError::invalid("--config needs a path"))?;
            return Ok(Some((i, 2, path.clone())));
        }
    }
    Ok(None)
}

/// Index of the subcommand name, if one was given.
fn subcommand_index(argv: &[String]) -> Option<usize> {
    argv.iter().skip(1).take_while(|a| *a != "--").position(|a| SUBCOMMANDS.contains(&a.as_str())).map(|i| i + 1)
}

fn scalar(key: &str, v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(CliError::invalid(format!("config key '{key}' has an unsupported value {v}"))),
    }
}

fn flags(object: &serde_json::Map<String, Value>) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for (key, value) in object {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.trim_start_matches('-').replace('_', "-"));
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => out.push(flag),
            Value::Array(items) => {
                for item in items {
                    out.push(flag.clone());
                    out.push(scalar(key, item)?);
                }
            }
            other => {
                out.push(flag);
                out.push(scalar(key, other)?);
            }
        }
    }
    Ok(out)
}

/// Returns `argv` with `--config` removed and the file's flags inserted.
pub fn expand(mut argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some((at, width, path)) = config_path(&argv)? else {
        return Ok(argv);
    };
    argv.drain(at..at + width);
    let body = fs::read_to_string(&path).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
    let value: Value = serde_json::from_str(&body).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
    let Value::Object(object) = value else {
        return Err(CliError::invalid(format!("{path}: expected a JSON object")));
    };
    let injected = flags(&object)?;
    let at = match subcommand_index(&argv) {
        Some(i) => i + 1,
        None => {
            let command = object
                .get("command")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::invalid("no subcommand given on the command line or in the config"))?;
            argv.insert(1, command.to_string());
            2
        }
    };
    argv.splice(at..at, injected);
    Ok(argv)
}
