//! `key = value` config files. Each line becomes the flag `--key value`
//! (or `--key` for `true`), placed before the command-line flags so the
//! latter override it.

use std::fs;

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`, got {line:?}", i + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.starts_with('-') {
            return Err(format!("line {}: bad key {k:?}", i + 1));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn as_flags(pairs: &[(String, String)]) -> Vec<String> {
    let mut out = Vec::new();
    for (k, v) in pairs {
        match v.as_str() {
            "true" => out.push(format!("--{k}")),
            "false" => {}
            _ => {
                out.push(format!("--{k}"));
                out.push(v.clone());
            }
        }
    }
    out
}

/// Pulls `--config FILE` out of `args` and splices the file's flags in
/// right after the subcommand name.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut file = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            file = Some(it.next().ok_or_else(|| "--config needs a file".to_string())?);
        } else if let Some(f) = a.strip_prefix("--config=") {
            file = Some(f.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(file) = file else { return Ok(rest) };
    let text = fs::read_to_string(&file).map_err(|e| format!("{file}: {e}"))?;
    let flags = as_flags(&parse_config(&text).map_err(|e| format!("{file}: {e}"))?);
    let mut at = rest.len();
    let mut i = 1;
    while i < rest.len() {
        if rest[i] == "--threads" {
            i += 2;
        } else if rest[i].starts_with('-') {
            i += 1;
        } else {
            at = i + 1;
            break;
        }
    }
    rest.splice(at..at, flags);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_comments() {
        let p = parse_config("# c\nmodel = ising\n\norder=3\n").unwrap();
        assert_eq!(p, vec![("model".into(), "ising".into()), ("order".into(), "3".into())]);
        assert!(parse_config("order 3").is_err());
    }

    #[test]
    fn flags_go_after_subcommand() {
        let dir = std::env::temp_dir().join(format!("blossom-cfg-{}", std::process::id()));
        std::fs::write(&dir, "order = 2\ndump-maps = true\n").unwrap();
        let args: Vec<String> = ["blossom", "--threads", "2", "expand", "--config", dir.to_str().unwrap(), "--order", "3"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out = expand_config(args).unwrap();
        assert_eq!(out, ["blossom", "--threads", "2", "expand", "--order", "2", "--dump-maps", "--order", "3"]);
        std::fs::remove_file(dir).unwrap();
    }
}
