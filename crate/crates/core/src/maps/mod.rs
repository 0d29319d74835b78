//! Rooted planar maps as dart structures.
//!
//! A map is a rotation `nu` (next dart counterclockwise around its vertex)
//! and an involution `alpha` pairing the two darts of each edge. Fixed points
//! of `alpha` are half-edges: legs of a map, leaves and buds of a tree.
//! Faces are the cycles of `phi = nu ∘ alpha`.

mod closure;
mod oracle;
mod perm;
mod text;

use std::fmt;

use crate::error::{Error, Result};

pub use closure::{closure, opening, opening_with, OpeningResume};
pub use oracle::{
    bipartite_map_sum, bipartition, block_rotation, centralizer_order, enumerate_leg_maps, fold_rooted_maps,
    hard_particle_sum, ising_sum, partitions_with, rooted_map_count, rooted_normalization, IsingRoot, MapClass,
    OracleScheme,
};
pub use perm::{
    all_perms, cycle_type, enumerate_perm_pairs, from_perm_pair, perm_pair_map_series, profile_monomial, to_perm_pair,
    Perm, PermPair,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::White => 'W',
            Color::Black => 'B',
        }
    }
}

/// Pair of partitions giving white and black vertex degrees (half-edges included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegreeProfile {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
}

impl DegreeProfile {
    pub fn new(mut white: Vec<usize>, mut black: Vec<usize>) -> Self {
        white.sort_unstable_by(|a, b| b.cmp(a));
        black.sort_unstable_by(|a, b| b.cmp(a));
        DegreeProfile { white, black }
    }

    /// Union of the two multisets.
    pub fn merge(&self, o: &DegreeProfile) -> DegreeProfile {
        DegreeProfile::new(
            self.white.iter().chain(&o.white).copied().collect(),
            self.black.iter().chain(&o.black).copied().collect(),
        )
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}|{}]", join(&self.white), join(&self.black))
    }
}

/// Rooted map on darts `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombMap {
    nu: Vec<usize>,
    alpha: Vec<usize>,
    vertex: Vec<usize>,
    colors: Vec<Color>,
    root: usize,
}

impl CombMap {
    /// Builds a map from its rotation, involution and per-dart colors.
    /// Vertices are numbered by the smallest dart of each `nu`-cycle.
    pub fn new(nu: Vec<usize>, alpha: Vec<usize>, dart_colors: &[Color], root: usize) -> Result<CombMap> {
        let n = nu.len();
        let bad = |s: &str| Err(Error::InvalidMap(s.to_string()));
        if alpha.len() != n || dart_colors.len() != n {
            return bad("length mismatch");
        }
        if n == 0 || root >= n {
            return bad("root out of range");
        }
        let mut seen = vec![false; n];
        for &d in &nu {
            if d >= n || seen[d] {
                return bad("rotation is not a permutation");
            }
            seen[d] = true;
        }
        for d in 0..n {
            if alpha[d] >= n || alpha[alpha[d]] != d {
                return bad("edge map is not an involution");
            }
        }
        let mut vertex = vec![usize::MAX; n];
        let mut colors = Vec::new();
        for d in 0..n {
            if vertex[d] != usize::MAX {
                continue;
            }
            let v = colors.len();
            colors.push(dart_colors[d]);
            let mut e = d;
            loop {
                if dart_colors[e] != dart_colors[d] {
                    return bad("vertex with two colors");
                }
                vertex[e] = v;
                e = nu[e];
                if e == d {
                    break;
                }
            }
        }
        let m = CombMap { nu, alpha, vertex, colors, root };
        if !m.is_connected() {
            return bad("not connected");
        }
        Ok(m)
    }

    pub fn num_darts(&self) -> usize {
        self.nu.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn num_edges(&self) -> usize {
        (0..self.num_darts()).filter(|&d| self.alpha[d] > d).count()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nu(&self, d: usize) -> usize {
        self.nu[d]
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    /// Next dart along the face to the left of `d`.
    pub fn phi(&self, d: usize) -> usize {
        self.nu[self.alpha[d]]
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex[d]
    }

    pub fn color_of_vertex(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn color(&self, d: usize) -> Color {
        self.colors[self.vertex[d]]
    }

    pub fn is_half_edge(&self, d: usize) -> bool {
        self.alpha[d] == d
    }

    pub fn half_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_darts()).filter(|&d| self.is_half_edge(d))
    }

    /// Darts of vertex `v` in counterclockwise order, starting at its smallest dart.
    pub fn vertex_darts(&self, v: usize) -> Vec<usize> {
        let start = (0..self.num_darts()).find(|&d| self.vertex[d] == v).expect("vertex exists");
        self.cycle(start, |d| self.nu[d])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex.iter().filter(|&&w| w == v).count()
    }

    fn cycle(&self, start: usize, next: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut d = next(start);
        while d != start {
            out.push(d);
            d = next(d);
        }
        out
    }

    /// The face containing dart `d`, as its `phi`-cycle.
    pub fn face_of(&self, d: usize) -> Vec<usize> {
        self.cycle(d, |e| self.phi(e))
    }

    pub fn num_faces(&self) -> usize {
        let mut seen = vec![false; self.num_darts()];
        let mut count = 0;
        for d in 0..self.num_darts() {
            if !seen[d] {
                count += 1;
                for e in self.face_of(d) {
                    seen[e] = true;
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_darts();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.nu[d], self.alpha[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    /// Euler's relation `V − E + F = 2`.
    pub fn is_planar(&self) -> bool {
        self.num_vertices() + self.num_faces() == self.num_edges() + 2
    }

    pub fn is_bipartite(&self) -> bool {
        (0..self.num_darts()).all(|d| self.is_half_edge(d) || self.color(d) != self.color(self.alpha[d]))
    }

    pub fn is_tree(&self) -> bool {
        self.num_edges() + 1 == self.num_vertices()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut deg = vec![0usize; self.num_vertices()];
        for &v in &self.vertex {
            deg[v] += 1;
        }
        let (mut w, mut b) = (Vec::new(), Vec::new());
        for (v, &d) in deg.iter().enumerate() {
            match self.colors[v] {
                Color::White => w.push(d),
                Color::Black => b.push(d),
            }
        }
        DegreeProfile::new(w, b)
    }

    pub fn with_root(&self, root: usize) -> CombMap {
        assert!(root < self.num_darts());
        CombMap { root, ..self.clone() }
    }

    /// Sets `alpha` on the given darts; pairs `(a, b)` fuse, `(a, a)` cut.
    pub(crate) fn with_alpha_changes(&self, changes: &[(usize, usize)]) -> CombMap {
        let mut m = self.clone();
        for &(a, b) in changes {
            m.alpha[a] = b;
            m.alpha[b] = a;
        }
        m
    }

    /// Labels darts in discovery order from the root (following `nu`, then
    /// `alpha`). Rooted maps have no automorphisms, so the relabeled tables
    /// identify the map up to rooted isomorphism.
    pub fn canonical_labels(&self) -> Vec<usize> {
        let n = self.num_darts();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[self.root] = 0;
        order.push(self.root);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            i += 1;
            for e in [self.nu[d], self.alpha[d]] {
                if label[e] == usize::MAX {
                    label[e] = order.len();
                    order.push(e);
                }
            }
        }
        label
    }

    pub fn canonical_code(&self) -> Vec<u32> {
        let label = self.canonical_labels();
        let n = self.num_darts();
        let mut by_label = vec![0; n];
        for d in 0..n {
            by_label[label[d]] = d;
        }
        let mut code = Vec::with_capacity(3 * n);
        for &d in &by_label {
            code.push(label[self.nu[d]] as u32);
            code.push(label[self.alpha[d]] as u32);
            code.push(self.color(d) as u32);
        }
        code
    }

    /// Relabels darts canonically, root becoming dart 0.
    pub fn canonical_form(&self) -> CombMap {
        let label = self.canonical_labels();
        let n = self.num_darts();
        let mut nu = vec![0; n];
        let mut alpha = vec![0; n];
        let mut colors = vec![Color::White; n];
        for d in 0..n {
            nu[label[d]] = label[self.nu[d]];
            alpha[label[d]] = label[self.alpha[d]];
            colors[label[d]] = self.color(d);
        }
        CombMap::new(nu, alpha, &colors, 0).expect("relabeling preserves validity")
    }

    /// Edges whose removal disconnects the map.
    pub fn is_separating(&self, d: usize) -> bool {
        let e = self.alpha[d];
        if e == d {
            return false;
        }
        let mut uf = UnionFind::new(self.num_vertices());
        for x in 0..self.num_darts() {
            let y = self.alpha[x];
            if y > x && !(x == d.min(e) && y == d.max(e)) {
                uf.union(self.vertex[x], self.vertex[y]);
            }
        }
        uf.find(self.vertex[d]) != uf.find(self.vertex[e])
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests;
