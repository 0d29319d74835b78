//! Closed parametrizations of the hard-particle and Ising series.
//!
//! Each takes a grading in which `X_m`, `Y_m` (the degree-`m` markers)
//! carry the weight; results are in those variables.

use super::newton::{Tree23, Tree23Solution, Tree24};
use super::solve::check_polynomial;
use crate::error::Result;
use crate::series::{Grading, RatFunc, Series, VarId};

fn n(g: &Grading, k: i64) -> Series {
    Series::from_int(g, k)
}

fn markers(g: &Grading, m: usize) -> (Series, Series) {
    (Series::var(g, VarId::big_x(m)), Series::var(g, VarId::big_y(m)))
}

/// `(x, y, v) = (X(u−ū)², Y(u−ū)², ū)` and the `P` of the degree-4 system at `v = w`.
fn tetravalent_p(g: &Grading) -> Result<(Series, Series, Series, Series)> {
    let (bx, by) = markers(g, 4);
    let sq = RatFunc::u_minus_ubar().pow(2);
    let (x, y) = (bx.scale(&sq), by.scale(&sq));
    let v = Series::constant(g, RatFunc::u_bar());
    let t = Tree24 { v: v.clone(), w: v.clone(), x: x.clone(), y: y.clone() }.solve()?;
    Ok((x, y, v, t.p().clone()))
}

/// Ising series of quasi-tetravalent maps rooted at a black vertex of
/// degree 2, without the root marker.
pub fn ising_quasi_tetravalent_closed(g: &Grading) -> Result<Series> {
    let (x, y, v, p) = tetravalent_p(g)?;
    let one = Series::one(g);
    let d = &one - n(g, 9) * &x * &y * &p * &p;
    let dinv = d.reciprocal()?;
    let a = &x * p.pow(3);
    let b = &p * (&one + n(g, 3) * &x * &p - n(g, 2) * &x * &p * &p - n(g, 6) * &x * &y * p.pow(3)) * &dinv;
    let c = &y * &v * &v * p.pow(3) * (&one + n(g, 3) * &x * &p).pow(3) * dinv.pow(3);
    let ub = RatFunc::u_bar();
    let out = (a + b - c).scale(&RatFunc::one().sub(&ub.mul(&ub)));
    check_polynomial(&out)?;
    Ok(out)
}

/// Ising series of tetravalent maps rooted at a white vertex.
pub fn ising_tetravalent_closed(g: &Grading) -> Result<Series> {
    let (x, y, v, p) = tetravalent_p(g)?;
    let one = Series::one(g);
    let v2 = &v * &v;
    let poly = n(g, 135) * &x * &x * &y * &y * p.pow(6) + n(g, 72) * &x * &y * &y * p.pow(5)
        - n(g, 3) * &y * (n(g, 15) * &x + n(g, 8) * &y - n(g, 3) * &v2 * &y + n(g, 36) * &x * &y) * p.pow(4)
        - &y * (n(g, 32) + n(g, 3) * &v2 - n(g, 36) * &x - n(g, 36) * &y) * p.pow(3)
        - (n(g, 3) + n(g, 2) * &v2 - n(g, 72) * &y) * p.pow(2)
        + n(g, 12) * (&one - n(g, 3) * &y) * &p
        - n(g, 9);
    let frac = (&one - &p - &y * &p * &p)
        * (&one + n(g, 3) * &y * &p)
        * (n(g, 12) - n(g, 8) * &p + n(g, 3) * &v2 * &p)
        * (&one + n(g, 3) * &x * &p).reciprocal()?;
    let out = (poly + frac).scale(&RatFunc::from_ratio(1, 9));
    check_polynomial(&out)?;
    Ok(out)
}

/// Hard particles on tetravalent maps rooted at a vacant edge.
pub fn hard_tetravalent_closed(g: &Grading) -> Result<Series> {
    let (x, y) = markers(g, 4);
    let t = Tree24 { v: Series::zero(g), w: Series::one(g), x: x.clone(), y: y.clone() }.solve()?;
    let p = t.p();
    let d = (Series::one(g) - n(g, 9) * &x * &y * p * p).reciprocal()?;
    Ok(&x * p.pow(3) + &x * p * p * (n(g, 3) - n(g, 2) * p) * &d - n(g, 27) * x.pow(3) * &y * p.pow(6) * d.pow(3))
}

/// Hard particles on trivalent maps rooted at a vacant edge.
pub fn hard_trivalent_closed(g: &Grading) -> Result<Series> {
    let (x, y) = markers(g, 3);
    let t = Tree23 { v: Series::zero(g), w: Series::one(g), x: x.clone(), y: y.clone() }.solve()?;
    let Tree23Solution { p, q, r, .. } = &t;
    Ok(q * q + n(g, 2) * &x * p * r
        - n(g, 4) * &x * &x * &y * p.pow(3) * r
        - n(g, 2) * &x * p * p * q
        - n(g, 4) * &x * &y * p * p * q * q
        - n(g, 8) * &x * &x * &y * p * p * q * r * r)
}

/// Ising series of quasi-cubic maps rooted at a black vertex of degree 2,
/// without the root marker. `(u−ū)^{3/2}` is `s³`.
pub fn ising_quasi_cubic_closed(g: &Grading) -> Result<Series> {
    let (bx, by) = markers(g, 3);
    let s = Series::var(g, VarId::S);
    let scale = RatFunc::u_minus_ubar();
    let s3 = s.pow(3);
    let (x, y) = (&bx * &s3, &by * &s3);
    let v = Series::constant(g, RatFunc::u_bar());
    let t = Tree23 { v: v.clone(), w: v.clone(), x: x.clone(), y: y.clone() }.solve()?;
    let Tree23Solution { p, q, r, .. } = &t;
    let rb = &v + n(g, 2) * &x * r;
    let out = q * q + p * &rb
        - n(g, 2) * &x * &y * p.pow(3) * &rb
        - n(g, 2) * &x * &v * p * p * q
        - n(g, 4) * &x * &y * p * p * q * q
        - n(g, 2) * &y * p * p * q * &rb * &rb;
    let out = out.scale(&scale).reduce_s()?;
    check_polynomial(&out)?;
    Ok(out)
}
