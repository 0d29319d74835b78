//! Weak edges and cores.

use super::PlaneTree;
use crate::error::{Error, Result};
use crate::maps::{Color, UnionFind};

/// Core vertices, weak edges, and the weak edges attached to the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecomposition {
    /// Per vertex: does it lie in the core?
    pub in_core: Vec<bool>,
    /// Black-endpoint dart of every weak edge.
    pub weak: Vec<usize>,
    /// For each weak edge incident to the core, its dart at the core endpoint.
    /// The dangling subtree lies across it.
    pub attached: Vec<usize>,
}

impl CoreDecomposition {
    pub fn dart_in_core(&self, t: &PlaneTree, d: usize) -> bool {
        self.in_core[t.map().vertex_of(d)]
    }
}

impl PlaneTree {
    /// Edges whose black side has charge at least 2, as black-endpoint darts.
    /// Requires total charge ≥ 2 and the white rule at every edge.
    pub fn weak_edges(&self) -> Result<Vec<usize>> {
        if self.total_charge() < 2 {
            return Err(Error::InvalidTree("weak edges need total charge at least 2".into()));
        }
        let (up, sums) = self.rooted_sums();
        let m = self.map();
        let mut weak = Vec::new();
        for d in self.edges() {
            let b = if m.color(d) == Color::Black { d } else { m.alpha(d) };
            let cb = self.side_charge_with(&up, &sums, b);
            let cw = self.total_charge() - cb;
            if cw < 0 {
                return Err(Error::InvalidTree(format!("white charge rule fails at edge of dart {d}")));
            }
            if cb >= 2 {
                weak.push(b);
            }
        }
        weak.sort_unstable();
        Ok(weak)
    }

    fn components_without(&self, weak: &[usize]) -> (UnionFind, Vec<usize>) {
        let m = self.map();
        let mut uf = UnionFind::new(m.num_vertices());
        for d in self.edges() {
            let e = m.alpha(d);
            if !weak.contains(&d) && !weak.contains(&e) {
                uf.union(m.vertex_of(d), m.vertex_of(e));
            }
        }
        let ids = (0..m.num_vertices()).map(|v| uf.find(v)).collect();
        (uf, ids)
    }

    fn decomposition(&self, weak: Vec<usize>, core_id: usize, ids: &[usize]) -> CoreDecomposition {
        let m = self.map();
        let in_core: Vec<bool> = ids.iter().map(|&c| c == core_id).collect();
        let mut attached = Vec::new();
        for &b in &weak {
            let w = m.alpha(b);
            if in_core[m.vertex_of(b)] {
                attached.push(b);
            } else if in_core[m.vertex_of(w)] {
                attached.push(w);
            }
        }
        CoreDecomposition { in_core, weak, attached }
    }

    /// Core as the component of the root once weak edges are removed.
    pub fn core(&self) -> Result<CoreDecomposition> {
        let weak = self.weak_edges()?;
        let (_, ids) = self.components_without(&weak);
        let core_id = ids[self.map().vertex_of(self.root())];
        Ok(self.decomposition(weak, core_id, &ids))
    }

    /// Root-independent core of a total-charge-2 tree: the unique component
    /// without weak edges whose half-edges carry total charge 2.
    pub fn core_root_free(&self) -> Result<CoreDecomposition> {
        if self.total_charge() != 2 {
            return Err(Error::InvalidTree("root-free core needs total charge 2".into()));
        }
        let weak = self.weak_edges()?;
        let (_, ids) = self.components_without(&weak);
        let m = self.map();
        let mut sums = std::collections::BTreeMap::<usize, i32>::new();
        for v in 0..m.num_vertices() {
            sums.entry(ids[v]).or_insert(0);
        }
        for d in m.half_edges() {
            *sums.get_mut(&ids[m.vertex_of(d)]).expect("component") += self.half_charge(d);
        }
        let cores: Vec<usize> = sums.iter().filter(|(_, &q)| q == 2).map(|(&c, _)| c).collect();
        match cores[..] {
            [c] => Ok(self.decomposition(weak, c, &ids)),
            _ => Err(Error::InvalidTree(format!("{} components of charge 2", cores.len()))),
        }
    }

    /// Half-edges of the subtree across the edge of `d` (the side of `alpha(d)`),
    /// in counterclockwise order starting just after that edge.
    pub fn half_edges_across(&self, d: usize) -> Vec<usize> {
        let m = self.map();
        let w = m.alpha(d);
        let mut out = Vec::new();
        let mut x = m.phi(d);
        loop {
            if m.is_half_edge(x) {
                out.push(x);
            }
            if x == w {
                break;
            }
            x = m.phi(x);
        }
        out
    }
}
