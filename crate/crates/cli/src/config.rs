//! `--config FILE` support: a plain `key = value` file whose entries become
//! flags placed before the command-line flags, so explicit flags win.
//!
//! ```text
//! # converge defaults
//! t-list = 0.5,1
//! K-list = 25,50,100
//! algo = closedform
//! renormalized = true
//! ```
//!
//! Keys are flag names without the leading `--`. `true`/`false` values toggle
//! switches. Blank lines and `#` comments are ignored.

use std::path::Path;

use crate::error::CliError;

pub fn parse_config(text: &str) -> Result<Vec<String>, CliError> {
    let mut args = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
        let key = key.trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::Usage(format!(
                "config line {}: empty key",
                lineno + 1
            )));
        }
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

/// Removes `--config FILE` from `argv` and splices the file's flags in right
/// after the subcommand name.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            let p = it
                .next()
                .ok_or_else(|| CliError::Usage("--config needs a file path".into()))?;
            path = Some(p);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| CliError::io(&path, e))?;
    let from_file = parse_config(&text)?;

    // argv[0] is the program; the first non-flag after it is the subcommand
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|i| i + 2)
        .unwrap_or(rest.len());
    rest.splice(at..at, from_file);
    Ok(rest)
}
