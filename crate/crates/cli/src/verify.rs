//! Suite runs and golden-file comparison.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use blossom_core::maps::enumerate_leg_maps;
use blossom_core::series::parse_series_text;
use blossom_core::suites::{run_suite, series_witness, CheckOutcome, Suite};

use crate::expand::RunConfig;

/// One tab-separated line per check: `PASS|FAIL  suite  check  [witness]`.
pub fn report(out: &mut impl Write, suite: &str, checks: &[CheckOutcome]) -> std::io::Result<bool> {
    let mut ok = true;
    for c in checks {
        match &c.witness {
            None => writeln!(out, "PASS\t{suite}\t{}", c.name)?,
            Some(w) => {
                ok = false;
                writeln!(out, "FAIL\t{suite}\t{}\t{}", c.name, w.replace(['\t', '\n'], " "))?;
            }
        }
    }
    Ok(ok)
}

pub fn suites(names: &[String]) -> Result<Vec<Suite>, String> {
    if names.is_empty() {
        return Ok(Suite::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            Suite::from_name(n).ok_or_else(|| {
                let all: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite {n:?} (expected one of {})", all.join(", "))
            })
        })
        .collect()
}

pub fn run(suite: Suite, max_size: Option<usize>) -> Vec<CheckOutcome> {
    run_suite(suite, max_size.unwrap_or(suite.default_size())).checks
}

fn header_pairs(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.strip_prefix('#'))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

/// Recomputes the series named in a golden file's `# key = value` header
/// and compares it with the file's terms.
pub fn check_golden(path: &Path) -> CheckOutcome {
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let witness = (|| {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let cfg = RunConfig::from_pairs(&header_pairs(&text)).map_err(|e| format!("header: {e}"))?;
        let want = parse_series_text(&text, &cfg.grading()).map_err(|e| format!("parse: {e}"))?;
        Ok::<_, String>(series_witness(cfg.compute(), Ok(want)))
    })()
    .unwrap_or_else(Some);
    CheckOutcome { name, witness }
}

/// `*.txt` files of a directory, sorted by name.
pub fn golden_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    Ok(files)
}

/// Writes the 1-leg maps checked by the closure suite, one dart table per line.
pub fn dump_leg_maps(dir: &Path, max_edges: usize) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = dir.join(format!("leg-maps-{max_edges}.txt"));
    let mut text = String::new();
    for m in enumerate_leg_maps(1, max_edges, |_| true) {
        text += &format!("{m}\n");
    }
    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))
}
