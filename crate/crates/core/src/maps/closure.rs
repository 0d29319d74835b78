//! Closure of balanced trees into leg maps, and the opening back.

use super::{Color, CombMap};
use crate::error::{Error, Result};
use crate::trees::{PlaneTree, RootKind};

/// Fuses the matched bud/leaf pairs of a balanced blossom tree into edges.
/// Single leaves become the legs; the root leaf stays the root.
pub fn closure(t: &PlaneTree) -> Result<CombMap> {
    if t.root_kind() != RootKind::Leaf || !t.is_balanced()? {
        return Err(Error::InvalidTree("closure needs a balanced tree rooted at a leaf".into()));
    }
    if !t.is_blossom() {
        return Err(Error::InvalidTree("closure needs a blossom tree".into()));
    }
    let m = t.match_half_edges();
    if !m.unmatched_buds.is_empty() {
        return Err(Error::InvalidTree("negative total charge".into()));
    }
    let out = t.map().with_alpha_changes(&m.pairs);
    debug_assert!(out.is_planar());
    Ok(out)
}

/// Where the opening walk resumes after cutting an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OpeningResume {
    /// Continue around the white endpoint, past the new leaf.
    #[default]
    AfterLeaf,
    /// Continue around the black endpoint, past the new bud.
    AfterBud,
    /// Start again from the root leg.
    Restart,
}

pub fn opening(m: &CombMap) -> Result<PlaneTree> {
    opening_with(m, OpeningResume::default())
}

/// Walks the root face counterclockwise from the root leg, cutting each
/// non-separating edge just traversed from its black to its white endpoint,
/// until only separating edges remain.
pub fn opening_with(m: &CombMap, resume: OpeningResume) -> Result<PlaneTree> {
    if !m.is_half_edge(m.root()) || m.color(m.root()) != Color::White {
        return Err(Error::InvalidMap("opening needs a map rooted at a leg of a white vertex".into()));
    }
    if m.half_edges().any(|d| m.color(d) != Color::White) {
        return Err(Error::InvalidMap("legs must hang from white vertices".into()));
    }
    if !m.is_bipartite() || !m.is_planar() {
        return Err(Error::InvalidMap("opening needs a planar bipartite map".into()));
    }
    let mut cur = m.clone();
    let mut d = cur.root();
    let mut budget = 4 * cur.num_darts() * (cur.num_edges() + 1) + 8;
    while !cur.is_tree() {
        if budget == 0 {
            return Err(Error::InvalidMap("opening walk did not terminate".into()));
        }
        budget -= 1;
        let e = cur.alpha(d);
        if e != d && cur.color(d) == Color::Black && !cur.is_separating(d) {
            cur = cur.with_alpha_changes(&[(d, d), (e, e)]);
            d = match resume {
                OpeningResume::AfterLeaf => e,
                OpeningResume::AfterBud => d,
                OpeningResume::Restart => cur.root(),
            };
            if resume == OpeningResume::Restart {
                continue;
            }
        }
        d = cur.phi(d);
    }
    PlaneTree::from_map(cur)
}
