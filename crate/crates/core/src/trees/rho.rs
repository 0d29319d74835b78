//! The bijections W₀ ↔ W₀* ∪ B₂ and W₁ ↔ W₁* ∪ B₃ ∪ B₂².
//!
//! Unbalanced trees of W₁ are sent to B₃ or B₂² by following the chain that
//! starts at the root in the union of two bud/leaf bijections: τ, the closure
//! matching (leaf to bud), and σ, a fixed pairing of buds to leaves inside
//! each charge-0 subtree hanging from the core (bud to leaf).

use super::{bracket_match, CoreDecomposition, PlaneTree, RootKind};
use crate::error::{Error, Result};
use crate::maps::{Color, CombMap};

/// How σ pairs buds and leaves inside a dangling subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SigmaConvention {
    /// Bracket matching along the counterclockwise contour.
    #[default]
    Contour,
    /// Bracket matching along the reversed contour.
    ReverseContour,
}

/// Image of an unbalanced W₁ tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RhoImage {
    /// A tree of B₃.
    Single(PlaneTree),
    /// An ordered pair of B₂ trees.
    Pair(PlaneTree, PlaneTree),
}

/// Image of a W₀ tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum W0Image {
    Balanced(PlaneTree),
    /// Rerooted at the bud matched to the root leaf; lies in B₂.
    Rerooted(PlaneTree),
}

pub fn w0_bijection(t: &PlaneTree) -> Result<W0Image> {
    if t.root_kind() != RootKind::Leaf || t.charge() != 0 {
        return Err(Error::InvalidTree("expected a tree of charge 0 rooted at a leaf".into()));
    }
    let m = t.match_half_edges();
    match m.pairs.iter().find(|&&(_, l)| l == t.root()) {
        None => Ok(W0Image::Balanced(t.clone())),
        Some(&(b, _)) => Ok(W0Image::Rerooted(t.reroot(b)?.canonical_form())),
    }
}

pub fn w0_inverse(img: &W0Image) -> Result<PlaneTree> {
    match img {
        W0Image::Balanced(t) => Ok(t.clone()),
        W0Image::Rerooted(t) => {
            if t.root_kind() != RootKind::Bud || t.charge() != 2 {
                return Err(Error::InvalidTree("expected a tree of B2".into()));
            }
            let m = t.match_half_edges();
            let &(_, l) = m
                .pairs
                .iter()
                .find(|&&(b, _)| b == t.root())
                .ok_or_else(|| Error::InvalidTree("root bud is unmatched".into()))?;
            Ok(t.reroot(l)?.canonical_form())
        }
    }
}

/// σ as a table bud → leaf over the darts outside the core.
fn sigma(t: &PlaneTree, dec: &CoreDecomposition, conv: SigmaConvention) -> Result<Vec<Option<usize>>> {
    let mut s = vec![None; t.map().num_darts()];
    for &a in &dec.attached {
        let mut seq: Vec<(usize, bool)> = t.half_edges_across(a).into_iter().map(|d| (d, t.is_bud(d))).collect();
        if conv == SigmaConvention::ReverseContour {
            seq.reverse();
        }
        let m = bracket_match(&seq);
        if !m.single_leaves.is_empty() || !m.unmatched_buds.is_empty() {
            return Err(Error::InvalidTree("dangling subtree does not have charge 0".into()));
        }
        for (b, l) in m.pairs {
            s[b] = Some(l);
        }
    }
    Ok(s)
}

/// Depth of the root of a B₂ tree: one more than the number of matched pairs
/// enclosing the root bud, reading the contour from its single leaf.
pub fn b2_depth(t: &PlaneTree) -> Result<usize> {
    if t.root_kind() != RootKind::Bud || t.charge() != 2 {
        return Err(Error::InvalidTree("expected a tree of B2".into()));
    }
    let c = t.contour();
    let m = t.match_half_edges();
    let single = match m.single_leaves[..] {
        [s] => s,
        _ => return Err(Error::InvalidTree("a B2 tree has exactly one single leaf".into())),
    };
    let start = c.iter().position(|&d| d == single).expect("single leaf on contour");
    let mut open = 0usize;
    for i in 1..c.len() {
        let d = c[(start + i) % c.len()];
        if d == t.root() {
            return Ok(open + 1);
        }
        if t.is_bud(d) {
            open += 1;
        } else {
            open -= 1;
        }
    }
    unreachable!("root lies on the contour")
}

/// Connected piece containing `root` after cutting the edge `(a, alpha(a))`.
fn piece(m: &CombMap, a: usize, root: usize) -> Result<PlaneTree> {
    let b = m.alpha(a);
    let alpha = |d: usize| if d == a || d == b { d } else { m.alpha(d) };
    let n = m.num_darts();
    let mut label = vec![usize::MAX; n];
    let mut order = vec![root];
    label[root] = 0;
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        i += 1;
        for e in [m.nu(d), alpha(d)] {
            if label[e] == usize::MAX {
                label[e] = order.len();
                order.push(e);
            }
        }
    }
    let nu: Vec<usize> = order.iter().map(|&d| label[m.nu(d)]).collect();
    let al: Vec<usize> = order.iter().map(|&d| label[alpha(d)]).collect();
    let colors: Vec<Color> = order.iter().map(|&d| m.color(d)).collect();
    PlaneTree::from_map(CombMap::new(nu, al, &colors, 0)?)
}

/// Disjoint union of two trees with the half-edges `d1` and `d2` fused.
/// Returns the merged tree rooted at `root2` (a dart of `t2`) and the
/// offset of `t2`'s darts.
fn fuse(t1: &PlaneTree, d1: usize, t2: &PlaneTree, d2: usize, root2: usize) -> Result<(PlaneTree, usize)> {
    let (m1, m2) = (t1.map(), t2.map());
    let off = m1.num_darts();
    let n = off + m2.num_darts();
    let mut nu = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    for d in 0..off {
        nu.push(m1.nu(d));
        alpha.push(m1.alpha(d));
        colors.push(m1.color(d));
    }
    for d in 0..m2.num_darts() {
        nu.push(m2.nu(d) + off);
        alpha.push(m2.alpha(d) + off);
        colors.push(m2.color(d));
    }
    alpha[d1] = d2 + off;
    alpha[d2 + off] = d1;
    Ok((PlaneTree::from_map(CombMap::new(nu, alpha, &colors, root2 + off)?)?, off))
}

pub fn rho(t: &PlaneTree, conv: SigmaConvention) -> Result<RhoImage> {
    if t.root_kind() != RootKind::Leaf || t.charge() != 1 || !t.is_blossom() {
        return Err(Error::InvalidTree("expected a blossom tree of W1".into()));
    }
    let m = t.match_half_edges();
    if m.single_leaves.contains(&t.root()) {
        return Err(Error::InvalidTree("tree is balanced".into()));
    }
    let n = t.map().num_darts();
    let tau = m.partner_table(n);
    let dec = t.core_root_free()?;
    let sig = sigma(t, &dec, conv)?;

    let mut leaf = t.root();
    let ell = loop {
        let b = tau[leaf].expect("non-single leaves are matched");
        if dec.dart_in_core(t, b) {
            return Ok(RhoImage::Single(t.reroot(b)?.canonical_form()));
        }
        let l = sig[b].ok_or_else(|| Error::InvalidTree("bud outside the core missing from sigma".into()))?;
        if m.single_leaves.contains(&l) {
            break l;
        }
        leaf = l;
    };
    let ell2 = *m.single_leaves.iter().find(|&&s| s != ell).expect("two single leaves");

    let (a, across) = dec
        .attached
        .iter()
        .map(|&a| (a, t.half_edges_across(a)))
        .find(|(_, hs)| hs.contains(&ell))
        .ok_or_else(|| Error::InvalidTree("end leaf lies in no dangling subtree".into()))?;
    let mp = t.map();
    if mp.color(a) != Color::Black {
        return Err(Error::InvalidTree("core endpoint of a weak edge is white".into()));
    }
    let w = mp.alpha(a);
    let t1 = piece(mp, a, a)?;
    let te = piece(mp, a, w)?;
    let t2 = match w0_bijection(&te)? {
        W0Image::Rerooted(x) => x,
        W0Image::Balanced(_) => return Err(Error::InvalidTree("dangling subtree is balanced".into())),
    };
    let t1 = t1.canonical_form();
    let pos = |x: usize| across.iter().position(|&d| d == x);
    let swap = match (pos(ell2), pos(ell)) {
        (Some(p2), Some(p)) => p2 < p,
        _ => false,
    };
    Ok(if swap { RhoImage::Pair(t2, t1) } else { RhoImage::Pair(t1, t2) })
}

pub fn rho_inverse(img: &RhoImage, conv: SigmaConvention) -> Result<PlaneTree> {
    match img {
        RhoImage::Single(tp) => {
            if tp.root_kind() != RootKind::Bud || tp.charge() != 3 || !tp.is_blossom() {
                return Err(Error::InvalidTree("expected a blossom tree of B3".into()));
            }
            let dec = tp.core_root_free()?;
            if !dec.dart_in_core(tp, tp.root()) {
                return Err(Error::InvalidTree("root bud outside the core".into()));
            }
            let origin = trace_back(tp, &dec, conv, tp.root(), true)?;
            Ok(tp.reroot(origin)?.canonical_form())
        }
        RhoImage::Pair(ta, tb) => {
            let (ja, jb) = (b2_depth(ta)?, b2_depth(tb)?);
            for x in [ta, tb] {
                if !x.is_blossom() {
                    return Err(Error::InvalidTree("pair member is not a blossom tree".into()));
                }
            }
            let in_order = ja <= jb;
            let (t1, t2) = if in_order { (ta, tb) } else { (tb, ta) };
            let (j1, j2) = if in_order { (ja, jb) } else { (jb, ja) };
            let m2 = t2.match_half_edges();
            let &(_, l2) = m2
                .pairs
                .iter()
                .find(|&&(b, _)| b == t2.root())
                .ok_or_else(|| Error::InvalidTree("root bud of B2 tree unmatched".into()))?;
            let (tp, off) = fuse(t1, t1.root(), t2, l2, t2.root())?;
            let dec = tp.core_root_free()?;
            let singles = tp.match_half_edges().single_leaves;
            let across = tp.half_edges_across(t1.root());
            let mut in_t2: Vec<usize> = singles.iter().copied().filter(|&s| s >= off).collect();
            in_t2.sort_by_key(|s| across.iter().position(|d| d == s));
            let ell = match (j1 == j2, &in_t2[..]) {
                (true, [s]) => *s,
                (false, [first, second]) => {
                    if in_order {
                        *first
                    } else {
                        *second
                    }
                }
                _ => return Err(Error::InvalidTree("single leaves inconsistent with depths".into())),
            };
            let origin = trace_back(&tp, &dec, conv, ell, false)?;
            Ok(tp.reroot(origin)?.canonical_form())
        }
    }
}

/// Follows the chain backwards from `start` (a bud if `from_bud`, else a leaf
/// in the image of σ) to its origin, a leaf of the core.
fn trace_back(t: &PlaneTree, dec: &CoreDecomposition, conv: SigmaConvention, start: usize, from_bud: bool) -> Result<usize> {
    let n = t.map().num_darts();
    let tau = t.match_half_edges().partner_table(n);
    let sig = sigma(t, dec, conv)?;
    let mut sig_inv = vec![None; n];
    for (b, l) in sig.iter().enumerate() {
        if let Some(l) = l {
            sig_inv[*l] = Some(b);
        }
    }
    let mut bud = if from_bud {
        start
    } else {
        sig_inv[start].ok_or_else(|| Error::InvalidTree("leaf not in the image of sigma".into()))?
    };
    for _ in 0..n {
        let l = tau[bud].ok_or_else(|| Error::InvalidTree("chain reaches an unmatched bud".into()))?;
        if dec.dart_in_core(t, l) {
            return Ok(l);
        }
        bud = sig_inv[l].ok_or_else(|| Error::InvalidTree("leaf outside the core missing from sigma".into()))?;
    }
    Err(Error::InvalidTree("chain does not terminate".into()))
}
