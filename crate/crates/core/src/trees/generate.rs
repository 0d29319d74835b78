//! Exhaustive generation of blossom trees by weighted grade.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::text::{Shape, Slot};
use super::PlaneTree;
use crate::maps::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    Leaf,
    Bud,
}

/// Allowed vertex degrees per color, each with a positive grade weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSupport {
    white: BTreeMap<usize, u32>,
    black: BTreeMap<usize, u32>,
}

impl DegreeSupport {
    pub fn new(white: impl IntoIterator<Item = (usize, u32)>, black: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let s = DegreeSupport { white: white.into_iter().collect(), black: black.into_iter().collect() };
        assert!(s.white.values().chain(s.black.values()).all(|&w| w > 0), "grade weights must be positive");
        assert!(!s.white.contains_key(&0) && !s.black.contains_key(&0), "degrees start at 1");
        s
    }

    /// Weight of a degree-k vertex is k (edge grading: grade = 2 × edges).
    pub fn edge_graded(white: impl IntoIterator<Item = usize>, black: impl IntoIterator<Item = usize>) -> Self {
        DegreeSupport::new(white.into_iter().map(|k| (k, k as u32)), black.into_iter().map(|k| (k, k as u32)))
    }

    pub fn degrees(&self, c: Color) -> &BTreeMap<usize, u32> {
        match c {
            Color::White => &self.white,
            Color::Black => &self.black,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.white.is_empty() && self.black.is_empty()
    }

    pub fn grade(&self, t: &PlaneTree) -> Option<u32> {
        let m = t.map();
        (0..m.num_vertices()).map(|v| self.degrees(m.color_of_vertex(v)).get(&m.degree(v)).copied()).sum()
    }
}

type Planted = Arc<Vec<(i32, Arc<Shape>)>>;
type Fill = Arc<Vec<(i32, Vec<Slot>)>>;

struct Gen<'a> {
    support: &'a DegreeSupport,
    planted: HashMap<(Color, u32), Planted>,
    fill: HashMap<(Color, usize, u32), Fill>,
}

impl Gen<'_> {
    fn half(c: Color) -> i32 {
        match c {
            Color::White => 1,
            Color::Black => -1,
        }
    }

    /// Subtrees hanging from a parent edge, of exact grade `g`, obeying the rule
    /// of their root color.
    fn planted(&mut self, c: Color, g: u32) -> Planted {
        if let Some(p) = self.planted.get(&(c, g)) {
            return p.clone();
        }
        let mut out = Vec::new();
        let degrees: Vec<(usize, u32)> = self.support.degrees(c).iter().map(|(k, w)| (*k, *w)).collect();
        for (d, w) in degrees {
            if w > g {
                continue;
            }
            for (q, slots) in self.fill(c, d - 1, g - w).iter() {
                let ok = match c {
                    Color::White => *q >= 0,
                    Color::Black => *q <= 1,
                };
                if ok {
                    out.push((*q, Arc::new(Shape { color: c, slots: slots.clone() })));
                }
            }
        }
        let out = Arc::new(out);
        self.planted.insert((c, g), out.clone());
        out
    }

    /// Sequences of `n` slots at a vertex of color `c` using exactly grade `g`.
    fn fill(&mut self, c: Color, n: usize, g: u32) -> Fill {
        if let Some(f) = self.fill.get(&(c, n, g)) {
            return f.clone();
        }
        let mut out = Vec::new();
        if n == 0 {
            if g == 0 {
                out.push((0, Vec::new()));
            }
        } else {
            // first slot: a half-edge, or a child subtree of grade g1
            for (q, rest) in self.fill(c, n - 1, g).iter() {
                let mut slots = Vec::with_capacity(n);
                slots.push(Slot::Half);
                slots.extend(rest.iter().cloned());
                out.push((q + Self::half(c), slots));
            }
            for g1 in 1..=g {
                let kids = self.planted(c.other(), g1);
                if kids.is_empty() {
                    continue;
                }
                let rests = self.fill(c, n - 1, g - g1);
                for (qk, kid) in kids.iter() {
                    for (q, rest) in rests.iter() {
                        let mut slots = Vec::with_capacity(n);
                        slots.push(Slot::Child(kid.clone()));
                        slots.extend(rest.iter().cloned());
                        out.push((q + qk, slots));
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.fill.insert((c, n, g), out.clone());
        out
    }
}

/// All blossom trees with degrees in `support`, grade at most `max_grade`,
/// rooted at a leaf (white root) or a bud (black root), optionally of a fixed
/// charge. Output is ordered by grade, then by construction order.
pub fn generate_blossom_trees(
    support: &DegreeSupport,
    max_grade: u32,
    root: RootKind,
    charge: Option<i32>,
) -> Vec<PlaneTree> {
    let mut gen = Gen { support, planted: HashMap::new(), fill: HashMap::new() };
    let c = match root {
        RootKind::Leaf => Color::White,
        RootKind::Bud => Color::Black,
    };
    let degrees: Vec<(usize, u32)> = support.degrees(c).iter().map(|(k, w)| (*k, *w)).collect();
    let mut out = Vec::new();
    for g in 0..=max_grade {
        for &(d, w) in &degrees {
            if w > g {
                continue;
            }
            for (q, slots) in gen.fill(c, d - 1, g - w).iter() {
                if charge.is_some_and(|k| k != *q) {
                    continue;
                }
                let mut all = Vec::with_capacity(d);
                all.push(Slot::Root);
                all.extend(slots.iter().cloned());
                out.push(Shape { color: c, slots: all }.to_tree().expect("generated shapes are valid trees"));
            }
        }
    }
    out
}
