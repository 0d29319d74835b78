//! Dart-table text form.
//!
//! ```text
//! D <darts> <root> | <nu-cycles> | <alpha-pairs> | <colors>
//! ```
//!
//! `nu-cycles` lists one parenthesized cycle per vertex, `alpha-pairs` the
//! edges as `(a b)`, darts absent from it being half-edges; `colors` has one
//! letter `W` or `B` per listed cycle. Example: `D 3 0 | (0 1)(2) | (1 2) | WB`.

use std::fmt;
use std::str::FromStr;

use super::{Color, CombMap};
use crate::error::{Error, Result};

impl fmt::Display for CombMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D {} {} |", self.num_darts(), self.root())?;
        let mut letters = String::new();
        write!(f, " ")?;
        for v in 0..self.num_vertices() {
            let darts = self.vertex_darts(v);
            let body: Vec<String> = darts.iter().map(|d| d.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
            letters.push(self.color_of_vertex(v).letter());
        }
        write!(f, " |")?;
        for d in 0..self.num_darts() {
            if self.alpha(d) > d {
                write!(f, " ({} {})", d, self.alpha(d))?;
            }
        }
        write!(f, " | {letters}")
    }
}

fn cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
        let items = open[..close]
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad dart {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(items);
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

impl FromStr for CombMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<CombMap> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 4 {
            return Err(Error::Parse("expected four '|'-separated fields".into()));
        }
        let head: Vec<&str> = parts[0].split_whitespace().collect();
        if head.len() != 3 || head[0] != "D" {
            return Err(Error::Parse("header must be 'D <darts> <root>'".into()));
        }
        let num = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {x:?}")));
        let n = num(head[1])?;
        let root = num(head[2])?;
        let verts = cycles(parts[1])?;
        let letters: Vec<char> = parts[3].trim().chars().collect();
        if letters.len() != verts.len() {
            return Err(Error::Parse("one color letter per vertex required".into()));
        }
        let mut nu = vec![usize::MAX; n];
        let mut colors = vec![Color::White; n];
        for (cyc, &c) in verts.iter().zip(&letters) {
            let color = match c {
                'W' => Color::White,
                'B' => Color::Black,
                _ => return Err(Error::Parse(format!("bad color {c:?}"))),
            };
            for (i, &d) in cyc.iter().enumerate() {
                if d >= n || nu[d] != usize::MAX {
                    return Err(Error::Parse(format!("dart {d} repeated or out of range")));
                }
                nu[d] = cyc[(i + 1) % cyc.len()];
                colors[d] = color;
            }
        }
        if nu.contains(&usize::MAX) {
            return Err(Error::Parse("some dart belongs to no vertex".into()));
        }
        let mut alpha: Vec<usize> = (0..n).collect();
        for pair in cycles(parts[2])? {
            match pair[..] {
                [a, b] if a < n && b < n && a != b && alpha[a] == a && alpha[b] == b => {
                    alpha[a] = b;
                    alpha[b] = a;
                }
                _ => return Err(Error::Parse(format!("bad edge {pair:?}"))),
            }
        }
        CombMap::new(nu, alpha, &colors, root)
    }
}
