//! Nested text form of plane trees, and the shape type used to build them.
//!
//! ```text
//! tree   := vertex
//! vertex := ('W' | 'B') '(' [item (',' item)*] ')'
//! item   := 'r' | 'l' | 'u' | vertex
//! ```
//!
//! `r` is the root half-edge, `l` a leaf, `u` a bud and a nested vertex a child
//! across an edge. The root vertex lists its slots counterclockwise from `r`;
//! any other vertex lists the slots following its parent edge. A leaf must sit
//! at a white vertex and a bud at a black one, e.g. `W(r,l,B(u,W(l)))`.

use std::sync::Arc;

use super::PlaneTree;
use crate::error::{Error, Result};
use crate::maps::{Color, CombMap};

#[derive(Clone, Debug)]
pub(crate) enum Slot {
    Root,
    Half,
    Child(Arc<Shape>),
}

#[derive(Clone, Debug)]
pub(crate) struct Shape {
    pub color: Color,
    pub slots: Vec<Slot>,
}

struct Builder {
    nu: Vec<usize>,
    alpha: Vec<usize>,
    colors: Vec<Color>,
    root: Option<usize>,
}

impl Builder {
    /// Adds a vertex whose first dart is `parent` (already allocated) if given.
    fn vertex(&mut self, shape: &Shape, parent: Option<usize>) {
        let mut darts = Vec::with_capacity(shape.slots.len() + 1);
        if let Some(p) = parent {
            darts.push(p);
        }
        for slot in &shape.slots {
            let d = self.nu.len();
            self.nu.push(d);
            self.alpha.push(d);
            self.colors.push(shape.color);
            darts.push(d);
            match slot {
                Slot::Root => self.root = Some(d),
                Slot::Half => {}
                Slot::Child(child) => {
                    let c = self.nu.len();
                    self.nu.push(c);
                    self.alpha.push(d);
                    self.colors.push(child.color);
                    self.alpha[d] = c;
                    self.vertex(child, Some(c));
                }
            }
        }
        for i in 0..darts.len() {
            self.nu[darts[i]] = darts[(i + 1) % darts.len()];
        }
    }
}

impl Shape {
    pub(crate) fn to_tree(&self) -> Result<PlaneTree> {
        let mut b = Builder { nu: Vec::new(), alpha: Vec::new(), colors: Vec::new(), root: None };
        b.vertex(self, None);
        let root = b.root.ok_or_else(|| Error::InvalidTree("no root half-edge".into()))?;
        PlaneTree::from_map(CombMap::new(b.nu, b.alpha, &b.colors, root)?)
    }
}

pub(crate) fn write_tree(t: &PlaneTree) -> String {
    let m = t.map();
    let mut out = String::new();
    fn half(t: &PlaneTree, d: usize, out: &mut String) {
        out.push(if t.is_leaf(d) { 'l' } else { 'u' });
    }
    fn vertex(t: &PlaneTree, first: usize, parent: Option<usize>, out: &mut String) {
        let m = t.map();
        out.push(m.color(first).letter());
        out.push('(');
        let mut d = first;
        let mut items = 0;
        loop {
            if Some(d) != parent {
                if items > 0 {
                    out.push(',');
                }
                items += 1;
                if d == t.root() {
                    out.push('r');
                } else if m.is_half_edge(d) {
                    half(t, d, out);
                } else {
                    let e = m.alpha(d);
                    vertex(t, m.nu(e), Some(e), out);
                }
            }
            d = m.nu(d);
            if d == first {
                break;
            }
        }
        out.push(')');
    }
    vertex(t, m.root(), None, &mut out);
    out
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}' at offset {}", c as char, self.i)))
        }
    }

    fn vertex(&mut self) -> Result<Shape> {
        let color = match self.peek() {
            Some(b'W') => Color::White,
            Some(b'B') => Color::Black,
            _ => return Err(Error::Parse(format!("expected vertex at offset {}", self.i))),
        };
        self.i += 1;
        self.expect(b'(')?;
        let mut slots = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                let slot = match self.peek() {
                    Some(b'r') => {
                        self.i += 1;
                        Slot::Root
                    }
                    Some(b'l') | Some(b'u') => {
                        let is_leaf = self.peek() == Some(b'l');
                        if is_leaf != (color == Color::White) {
                            return Err(Error::Parse(format!(
                                "{} at a {} vertex, offset {}",
                                if is_leaf { "leaf" } else { "bud" },
                                if color == Color::White { "white" } else { "black" },
                                self.i
                            )));
                        }
                        self.i += 1;
                        Slot::Half
                    }
                    _ => {
                        let child = self.vertex()?;
                        if child.color == color {
                            return Err(Error::Parse("adjacent vertices share a color".into()));
                        }
                        Slot::Child(Arc::new(child))
                    }
                };
                slots.push(slot);
                if self.peek() == Some(b',') {
                    self.i += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b')')?;
        Ok(Shape { color, slots })
    }
}

pub(crate) fn parse_tree(s: &str) -> Result<PlaneTree> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: compact.as_bytes(), i: 0 };
    let shape = p.vertex()?;
    if p.i != p.s.len() {
        return Err(Error::Parse(format!("trailing input at offset {}", p.i)));
    }
    if !matches!(shape.slots.first(), Some(Slot::Root)) {
        return Err(Error::Parse("root vertex must list 'r' first".into()));
    }
    fn count_roots(s: &Shape) -> usize {
        s.slots
            .iter()
            .map(|x| match x {
                Slot::Root => 1,
                Slot::Half => 0,
                Slot::Child(c) => count_roots(c),
            })
            .sum()
    }
    if count_roots(&shape) != 1 {
        return Err(Error::Parse("exactly one 'r' required".into()));
    }
    shape.to_tree()
}
