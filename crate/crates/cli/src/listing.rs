//! `trees` and `maps` listings.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;

use blossom_core::maps::{enumerate_leg_maps, DegreeProfile};
use blossom_core::trees::{generate_blossom_trees, DegreeSupport, RootKind};

/// Parses `1,2,4` or `1-4` (or a mix, `1,3-5`).
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad degree {t:?}"));
        match part.split_once('-') {
            Some((a, b)) => out.extend(num(a)?..=num(b)?),
            None => out.push(num(part)?),
        }
    }
    if out.contains(&0) {
        return Err("degrees start at 1".into());
    }
    if out.is_empty() {
        return Err(format!("no degrees in {s:?}"));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub struct TreeQuery {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
    pub grade: u32,
    pub root: RootKind,
    pub charge: Option<i32>,
    pub balanced: bool,
}

/// Items then `count <profile> <n>` lines, or counts only.
fn print_grouped<T: Display>(
    out: &mut impl Write,
    items: &[T],
    profile: impl Fn(&T) -> DegreeProfile,
    list: bool,
) -> std::io::Result<()> {
    let mut counts: BTreeMap<DegreeProfile, usize> = BTreeMap::new();
    for t in items {
        if list {
            writeln!(out, "{t}")?;
        }
        *counts.entry(profile(t)).or_default() += 1;
    }
    for (p, n) in &counts {
        writeln!(out, "count\t{p}\t{n}")?;
    }
    writeln!(out, "total\t{}", items.len())
}

pub fn trees(out: &mut impl Write, q: &TreeQuery, list: bool) -> Result<(), String> {
    if q.balanced && q.root != RootKind::Leaf {
        return Err("--balanced needs leaf-rooted trees".into());
    }
    let support = DegreeSupport::edge_graded(q.white.clone(), q.black.clone());
    let mut ts = generate_blossom_trees(&support, q.grade, q.root, q.charge);
    if q.balanced {
        ts.retain(|t| t.is_balanced().unwrap_or(false));
    }
    print_grouped(out, &ts, |t| t.degree_profile(), list).map_err(|e| e.to_string())
}

pub fn maps(out: &mut impl Write, legs: usize, max_edges: usize, list: bool) -> Result<(), String> {
    if legs == 0 {
        return Err("--legs must be at least 1".into());
    }
    let ms = enumerate_leg_maps(legs, max_edges, |_| true);
    print_grouped(out, &ms, |m| m.degree_profile(), list).map_err(|e| e.to_string())
}
