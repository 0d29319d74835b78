//! Blossom trees: bicolored plane trees carrying leaves (half-edges at white
//! vertices) and buds (half-edges at black vertices).
//!
//! A [`PlaneTree`] is stored as a one-face [`CombMap`]; slot lists are the
//! counterclockwise rotations at vertices, and rerooting only moves the root
//! dart.

mod core_decomp;
mod generate;
mod rho;
mod text;

use std::fmt;

use crate::error::{Error, Result};
use crate::maps::{Color, CombMap, DegreeProfile};

pub use core_decomp::CoreDecomposition;
pub use generate::{generate_blossom_trees, DegreeSupport, RootKind};
pub use rho::{b2_depth, rho, rho_inverse, w0_bijection, w0_inverse, RhoImage, SigmaConvention, W0Image};

/// Outcome of cyclic bracket matching (buds open, leaves close).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub single_leaves: Vec<usize>,
    pub unmatched_buds: Vec<usize>,
}

impl Matching {
    /// Partner of each dart under the matching, `None` when unmatched.
    pub fn partner_table(&self, n: usize) -> Vec<Option<usize>> {
        let mut p = vec![None; n];
        for &(b, l) in &self.pairs {
            p[b] = Some(l);
            p[l] = Some(b);
        }
        p
    }
}

/// Cyclic bracket matching of a sequence of `(id, is_bud)` items.
///
/// The first pass matches with a stack; leaves left unmatched are then matched
/// against the buds still open at the end, which precede them cyclically.
pub fn bracket_match(seq: &[(usize, bool)]) -> Matching {
    let mut stack = Vec::new();
    let mut pending = Vec::new();
    let mut pairs = Vec::new();
    for &(id, is_bud) in seq {
        if is_bud {
            stack.push(id);
        } else if let Some(b) = stack.pop() {
            pairs.push((b, id));
        } else {
            pending.push(id);
        }
    }
    let mut singles = Vec::new();
    for l in pending {
        match stack.pop() {
            Some(b) => pairs.push((b, l)),
            None => singles.push(l),
        }
    }
    Matching { pairs, single_leaves: singles, unmatched_buds: stack }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    map: CombMap,
}

impl PlaneTree {
    /// Accepts a one-face bipartite map rooted at a half-edge.
    pub fn from_map(map: CombMap) -> Result<PlaneTree> {
        if !map.is_tree() {
            return Err(Error::InvalidTree("underlying map has a cycle".into()));
        }
        if !map.is_bipartite() {
            return Err(Error::InvalidTree("edge joins two vertices of the same color".into()));
        }
        if !map.is_half_edge(map.root()) {
            return Err(Error::InvalidTree("root is not a half-edge".into()));
        }
        Ok(PlaneTree { map })
    }

    /// The one-vertex tree: a white vertex with its root leaf.
    pub fn t0() -> PlaneTree {
        PlaneTree::from_map(CombMap::new(vec![0], vec![0], &[Color::White], 0).expect("valid")).expect("valid")
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn into_map(self) -> CombMap {
        self.map
    }

    pub fn root(&self) -> usize {
        self.map.root()
    }

    pub fn root_kind(&self) -> RootKind {
        match self.map.color(self.root()) {
            Color::White => RootKind::Leaf,
            Color::Black => RootKind::Bud,
        }
    }

    pub fn num_edges(&self) -> usize {
        self.map.num_edges()
    }

    pub fn is_leaf(&self, d: usize) -> bool {
        self.map.is_half_edge(d) && self.map.color(d) == Color::White
    }

    pub fn is_bud(&self, d: usize) -> bool {
        self.map.is_half_edge(d) && self.map.color(d) == Color::Black
    }

    /// +1 for a leaf, −1 for a bud, 0 for an edge dart.
    pub fn half_charge(&self, d: usize) -> i32 {
        if !self.map.is_half_edge(d) {
            0
        } else if self.map.color(d) == Color::White {
            1
        } else {
            -1
        }
    }

    pub fn total_charge(&self) -> i32 {
        self.map.half_edges().map(|d| self.half_charge(d)).sum()
    }

    pub fn charge(&self) -> i32 {
        self.total_charge() - self.half_charge(self.root())
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        self.map.degree_profile()
    }

    /// All darts in face order from the root; edges appear twice, half-edges once.
    pub fn full_contour(&self) -> Vec<usize> {
        self.map.face_of(self.root())
    }

    /// Half-edges in counterclockwise order around the tree, from the root.
    pub fn contour(&self) -> Vec<usize> {
        self.full_contour().into_iter().filter(|&d| self.map.is_half_edge(d)).collect()
    }

    /// One dart per edge (the smaller one).
    pub fn edges(&self) -> Vec<usize> {
        (0..self.map.num_darts()).filter(|&d| self.map.alpha(d) > d).collect()
    }

    /// Parent dart of each vertex (the dart at the vertex pointing to its
    /// parent) and the sum of half-edge charges over each vertex's subtree.
    fn rooted_sums(&self) -> (Vec<Option<usize>>, Vec<i32>) {
        let m = &self.map;
        let nv = m.num_vertices();
        let mut up = vec![None; nv];
        let mut order = Vec::with_capacity(nv);
        let rv = m.vertex_of(self.root());
        let mut seen = vec![false; nv];
        seen[rv] = true;
        let mut stack = vec![rv];
        while let Some(v) = stack.pop() {
            order.push(v);
            for d in m.vertex_darts(v) {
                let e = m.alpha(d);
                if e != d && !seen[m.vertex_of(e)] {
                    let w = m.vertex_of(e);
                    seen[w] = true;
                    up[w] = Some(e);
                    stack.push(w);
                }
            }
        }
        let mut sums = vec![0; nv];
        for d in m.half_edges() {
            sums[m.vertex_of(d)] += self.half_charge(d);
        }
        for &v in order.iter().rev() {
            if let Some(p) = up[v] {
                let parent = m.vertex_of(m.alpha(p));
                sums[parent] += sums[v];
            }
        }
        (up, sums)
    }

    /// Charge of the component containing `vertex_of(d)` once the edge of `d`
    /// is cut; the cut half-edge is that component's root and is not counted.
    pub fn side_charge(&self, d: usize) -> i32 {
        let (up, sums) = self.rooted_sums();
        self.side_charge_with(&up, &sums, d)
    }

    fn side_charge_with(&self, up: &[Option<usize>], sums: &[i32], d: usize) -> i32 {
        let m = &self.map;
        let e = m.alpha(d);
        let (a, b) = (m.vertex_of(d), m.vertex_of(e));
        if up[b] == Some(e) {
            self.total_charge() - sums[b]
        } else {
            debug_assert_eq!(up[a], Some(d));
            sums[a]
        }
    }

    /// `(c∘, c•)` for the edge of `d`: charges of the white-side and black-side subtrees.
    pub fn subtree_charges(&self, d: usize) -> Result<(i32, i32)> {
        if self.map.is_half_edge(d) {
            return Err(Error::InvalidTree(format!("dart {d} is a half-edge, not an edge")));
        }
        let c = self.side_charge(d);
        let o = self.total_charge() - c;
        Ok(match self.map.color(d) {
            Color::White => (c, o),
            Color::Black => (o, c),
        })
    }

    /// For every edge, the color of the lower subtree's root vertex and its charge.
    pub fn lower_subtrees(&self) -> Vec<(usize, Color, i32)> {
        let (up, sums) = self.rooted_sums();
        let m = &self.map;
        (0..m.num_vertices()).filter_map(|v| up[v].map(|d| (d, m.color_of_vertex(v), sums[v]))).collect()
    }

    /// Every lower subtree obeys its color's rule: white charge ≥ 0, black ≤ 1.
    pub fn is_blossom(&self) -> bool {
        self.lower_subtrees().into_iter().all(|(_, c, q)| match c {
            Color::White => q >= 0,
            Color::Black => q <= 1,
        })
    }

    /// Black rule (`c• ≤ 1`) and white rule (`c∘ ≥ 0`) at the edge of `d`.
    pub fn charge_rules_at(&self, d: usize) -> (bool, bool) {
        let (cw, cb) = self.subtree_charges(d).expect("edge dart");
        (cb <= 1, cw >= 0)
    }

    pub fn match_half_edges(&self) -> Matching {
        let seq: Vec<(usize, bool)> = self.contour().into_iter().map(|d| (d, self.is_bud(d))).collect();
        bracket_match(&seq)
    }

    pub fn is_balanced(&self) -> Result<bool> {
        if self.root_kind() != RootKind::Leaf {
            return Err(Error::InvalidTree("balance is defined for trees rooted at a leaf".into()));
        }
        Ok(self.match_half_edges().single_leaves.contains(&self.root()))
    }

    pub fn reroot(&self, h: usize) -> Result<PlaneTree> {
        if h >= self.map.num_darts() || !self.map.is_half_edge(h) {
            return Err(Error::InvalidTree(format!("dart {h} is not a half-edge")));
        }
        Ok(PlaneTree { map: self.map.with_root(h) })
    }

    pub fn canonical_code(&self) -> Vec<u32> {
        self.map.canonical_code()
    }

    /// Same tree with darts relabeled canonically (root = 0).
    pub fn canonical_form(&self) -> PlaneTree {
        PlaneTree { map: self.map.canonical_form() }
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::write_tree(self))
    }
}

impl std::str::FromStr for PlaneTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<PlaneTree> {
        text::parse_tree(s)
    }
}

#[cfg(test)]
mod tests;
