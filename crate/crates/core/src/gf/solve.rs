//! The blossom-tree system in `W(z)`, `B(z)` and the map series built on it.

use std::collections::BTreeMap;

use super::charge::ChargeFamily;
use crate::error::{Error, Result};
use crate::series::{Grading, RatFunc, Series, VarId};

/// Vertex weights `x_k` (white) and `y_k` (black) by degree.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    grading: Grading,
    white: BTreeMap<usize, Series>,
    black: BTreeMap<usize, Series>,
}

impl WeightSystem {
    /// Grade-0 parts must be constants, and nonzero only in degree 2.
    pub fn new(g: &Grading, white: BTreeMap<usize, Series>, black: BTreeMap<usize, Series>) -> Result<Self> {
        for (side, map) in [("white", &white), ("black", &black)] {
            for (&k, s) in map {
                if k == 0 {
                    return Err(Error::Model(format!("{side} weight of degree 0")));
                }
                if s.grading() != g {
                    return Err(Error::GradingMismatch);
                }
                let low = s.slice(0);
                if let Some((m, _)) = low.terms().find(|(m, _)| !m.is_one()) {
                    return Err(Error::NonConvergent(format!("{side} degree {k} has grade-0 term {m}")));
                }
                if !low.is_zero() && k != 2 {
                    return Err(Error::NonConvergent(format!("{side} degree {k} has a grade-0 constant")));
                }
            }
        }
        let white = white.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        let black = black.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        Ok(WeightSystem { grading: g.clone(), white, black })
    }

    /// `x_k = x_k`, `y_k = y_k` as variables of the grading.
    pub fn indeterminate(g: &Grading, whites: &[usize], blacks: &[usize]) -> Result<Self> {
        let white = whites.iter().map(|&k| (k, Series::var(g, VarId::x(k)))).collect();
        let black = blacks.iter().map(|&k| (k, Series::var(g, VarId::y(k)))).collect();
        WeightSystem::new(g, white, black)
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn white(&self, k: usize) -> Series {
        self.white.get(&k).cloned().unwrap_or_else(|| Series::zero(&self.grading))
    }

    pub fn black(&self, k: usize) -> Series {
        self.black.get(&k).cloned().unwrap_or_else(|| Series::zero(&self.grading))
    }

    pub fn max_white(&self) -> usize {
        self.white.keys().next_back().copied().unwrap_or(0)
    }

    pub fn max_black(&self) -> usize {
        self.black.keys().next_back().copied().unwrap_or(0)
    }

    fn regraded(&self, g: &Grading) -> WeightSystem {
        let re = |m: &BTreeMap<usize, Series>| m.iter().map(|(&k, s)| (k, s.regrade(g))).collect();
        WeightSystem { grading: g.clone(), white: re(&self.white), black: re(&self.black) }
    }
}

/// `Σ_k weight_{k+1} (shift·z^sign + F)^k`, with `F` given as a family.
fn vertex_sum(weights: &BTreeMap<usize, Series>, f: &ChargeFamily, sign: i32) -> ChargeFamily {
    let g = f.grading();
    let step = ChargeFamily::term(sign, Series::one(g)).add(f);
    let mut pow = ChargeFamily::term(0, Series::one(g));
    let mut out = ChargeFamily::zero(g);
    let top = weights.keys().next_back().copied().unwrap_or(0);
    for k in 1..=top {
        if let Some(x) = weights.get(&k) {
            out = out.add(&pow.scale(x));
        }
        if k < top {
            pow = pow.mul(&step);
        }
    }
    out
}

/// Solution of the tree system: `W` on charges `≥ 0`, `B` on charges `≤ 1`,
/// and every coefficient of the right-hand side of the `B` equation.
#[derive(Clone, Debug)]
pub struct TreeGfs {
    pub w: ChargeFamily,
    pub b: ChargeFamily,
    b_all: ChargeFamily,
}

impl TreeGfs {
    pub fn w(&self, i: i32) -> Series {
        self.w.get(i)
    }

    /// `B_i` for any `i`; charges above 1 come from the extended read.
    pub fn b(&self, i: i32) -> Series {
        if i <= 1 {
            self.b.get(i)
        } else {
            self.b_all.get(i)
        }
    }
}

/// Solves `W = [z^{≥0}] Σ x_{k+1}(z+B)^k`, `B = [z^{≤1}] Σ y_{k+1}(1/z+W)^k`.
///
/// Grade `d` of the unknowns only enters grade `d` of the right-hand sides
/// through the grade-0 constants `v = x₂`, `w = y₂`, which couple `W_i` and
/// `B_i` for `i ∈ {0, 1}`; everything else is read off directly.
pub fn solve_wb(ws: &WeightSystem) -> Result<TreeGfs> {
    let g = ws.grading().clone();
    let v = ws.white(2).slice(0).constant_term();
    let w = ws.black(2).slice(0).constant_term();
    let det = RatFunc::one().sub(&v.mul(&w));
    if det.is_zero() {
        return Err(Error::Singular("1 - x2*y2 vanishes at grade 0".into()));
    }
    let inv = det.inv()?;
    let mut wf = ChargeFamily::zero(&g);
    let mut bf = ChargeFamily::zero(&g);
    for d in 0..=g.order() {
        let gd = g.with_order(d);
        let wsd = ws.regraded(&gd);
        let f = vertex_sum(&wsd.white, &bf.regrade(&gd), 1).select(|i| i >= 0);
        let h = vertex_sum(&wsd.black, &wf.regrade(&gd), -1).select(|i| i <= 1);
        let lo = f.range().map_or(0, |r| r.0).min(h.range().map_or(0, |r| r.0));
        let hi = f.range().map_or(0, |r| r.1).max(h.range().map_or(0, |r| r.1));
        for i in lo..=hi {
            let fi = f.get(i).slice(d).regrade(&g);
            let hi_ = h.get(i).slice(d).regrade(&g);
            let (wi, bi) = if i == 0 || i == 1 {
                let wi = (&fi + hi_.scale(&v)).scale(&inv);
                let bi = wi.scale(&w) + hi_;
                (wi, bi)
            } else {
                (fi, hi_)
            };
            wf.set(i, wf.get(i) + wi);
            bf.set(i, bf.get(i) + bi);
        }
    }
    let b_all = vertex_sum(&ws.black, &wf, -1);
    Ok(TreeGfs { w: wf, b: bf, b_all })
}

/// `(L₁, L₂) = (W₀ − B₂, W₁ − B₃ − B₂²)`.
pub fn leg_gfs(ws: &WeightSystem) -> Result<(Series, Series)> {
    let t = solve_wb(ws)?;
    Ok(legs_of(&t))
}

fn legs_of(t: &TreeGfs) -> (Series, Series) {
    let b2 = t.b(2);
    let l1 = t.w(0) - &b2;
    let l2 = t.w(1) - t.b(3) - &b2 * &b2;
    (l1, l2)
}

/// `L₁² + L₂`: maps rooted at a black vertex of degree 2, without its weight.
pub fn rooted_bracket(ws: &WeightSystem) -> Result<Series> {
    let (l1, l2) = leg_gfs(ws)?;
    Ok(&l1 * &l1 + l2)
}

/// `M = y₂ (L₁² + L₂)`.
pub fn bipartite_map_gf(ws: &WeightSystem) -> Result<Series> {
    if ws.black(2).is_zero() {
        return Err(Error::Model("bipartite map series needs a y2 weight".into()));
    }
    Ok(ws.black(2) * rooted_bracket(ws)?)
}

fn set_weight(out: &mut BTreeMap<usize, Series>, k: usize, s: Series) {
    if !s.is_zero() {
        out.insert(k, s);
    }
}

/// Hard particles rooted at a vacant edge: `x_k = X_k`, `y₂ = 1 + Y₂`,
/// `y_k = Y_k`; a black vertex stands for a particle.
pub fn hard_particle_weights(whites: &[usize], blacks: &[usize], g: &Grading) -> Result<WeightSystem> {
    let mut white = BTreeMap::new();
    let mut black = BTreeMap::new();
    for &k in whites {
        set_weight(&mut white, k, Series::var(g, VarId::big_x(k)));
    }
    for &k in blacks {
        set_weight(&mut black, k, Series::var(g, VarId::big_y(k)));
    }
    let y2 = black.remove(&2).unwrap_or_else(|| Series::zero(g));
    black.insert(2, Series::one(g) + y2);
    WeightSystem::new(g, white, black)
}

pub fn hard_particle_gf(whites: &[usize], blacks: &[usize], g: &Grading) -> Result<Series> {
    rooted_bracket(&hard_particle_weights(whites, blacks, g)?)
}

/// `X_k (u−ū)^{k/2}`; odd `k` carries one factor of `s`, `s² = u−ū`.
fn spin_scaled(g: &Grading, var: VarId, k: usize) -> Series {
    let mut s = Series::var(g, var).scale(&RatFunc::u_minus_ubar().pow((k / 2) as u32));
    if k % 2 == 1 {
        s = s * Series::var(g, VarId::S);
    }
    s
}

/// Ising weights: `x₂ = ū + X₂(u−ū)`, `y₂ = ū + Y₂(u−ū)`, `x_k = X_k(u−ū)^{k/2}`.
/// Degree 2 gets its marker only when listed.
pub fn ising_weights(whites: &[usize], blacks: &[usize], g: &Grading) -> Result<WeightSystem> {
    let mut white = BTreeMap::new();
    let mut black = BTreeMap::new();
    let ubar = Series::constant(g, RatFunc::u_bar());
    white.insert(2, ubar.clone());
    black.insert(2, ubar);
    for (ks, out, var) in [
        (whites, &mut white, VarId::big_x as fn(usize) -> VarId),
        (blacks, &mut black, VarId::big_y as fn(usize) -> VarId),
    ] {
        for &k in ks {
            let s = spin_scaled(g, var(k), k);
            let prev = out.remove(&k).unwrap_or_else(|| Series::zero(g));
            set_weight(out, k, prev + s);
        }
    }
    WeightSystem::new(g, white, black)
}

/// Ising maps rooted at a black vertex of degree 2, marked `Y₂`:
/// `Y₂ (u−ū) (L₁² + L₂)` under [`ising_weights`].
pub fn ising_gf_deg2root(whites: &[usize], blacks: &[usize], g: &Grading) -> Result<Series> {
    let ws = ising_weights(whites, blacks, g)?;
    let bracket = rooted_bracket(&ws)?.scale(&RatFunc::u_minus_ubar());
    let root = Series::var(g, VarId::big_y(2));
    let out = (root * bracket).reduce_s()?;
    check_polynomial(&out)?;
    Ok(out)
}

/// Every coefficient must be a polynomial in `u`.
pub fn check_polynomial(s: &Series) -> Result<()> {
    match s.terms().find(|(_, c)| !c.is_poly_nonneg_powers()) {
        Some((m, c)) => Err(Error::Model(format!("coefficient of {m} is not a polynomial in u: {c}"))),
        None => Ok(()),
    }
}
