//! Ising series of `m`-regular maps from the bipartite series, and the
//! hard-particle limit of quasi-regular Ising series.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::newton::{newton, Constellation};
use super::solve::{bipartite_map_gf, WeightSystem};
use crate::error::{Error, Result};
use crate::series::{Family, Grading, Monomial, Poly, RatFunc, Series, VarId};

/// Ising series of `m`-regular maps rooted at a white vertex, through the
/// order of `g` in `X_m`, `Y_m`.
///
/// The bipartite series is built with `x₂ = y₂ = V` graded, so the
/// `V`-expansion of the `X^a Y^b` coefficient is a rational function with
/// denominator `(1 − V²)^E`, `E = m(a+b)/2`. Its numerator `Q` is read off
/// exactly, and `(u−ū)^E Q(ū)/(1−ū²)^E = Σ_j q_j u^{E−j}`. The `V`-terms above
/// degree `E` of `(1 − V²)^E · coefficient` must vanish up to `V^{mT}`.
pub fn ising_regular(m: usize, g: &Grading) -> Result<Series> {
    ising_regular_bounded(m, g, m as u32 * g.order())
}

/// [`ising_regular`] with the `V`-order bound `z` given explicitly.
pub fn ising_regular_bounded(m: usize, g: &Grading, z: u32) -> Result<Series> {
    let t = g.order();
    let (x, y) = (VarId::x(m), VarId::y(m));
    let mtilde = regular_mtilde(m, t, z)?;

    // coefficient of x^a y^b as a polynomial in V
    let mut by_ab: BTreeMap<(i32, i32), Vec<BigRational>> = BTreeMap::new();
    for (mono, c) in mtilde.terms() {
        let (ea, eb, j) = (mono.exponent(x), mono.exponent(y), mono.exponent(VarId::V) as usize);
        if ea + eb > t as i32 {
            continue;
        }
        let c = c.as_constant().ok_or_else(|| Error::Model(format!("coefficient of {mono} depends on u")))?;
        let v = by_ab.entry((ea, eb)).or_default();
        if v.len() <= j {
            v.resize(j + 1, BigRational::zero());
        }
        v[j] = c;
    }
    let mut out = Series::zero(g);
    for ((ea, eb), f) in by_ab {
        let twice_e = m * (ea + eb) as usize;
        if twice_e % 2 == 1 {
            if let Some(j) = f.iter().position(|c| !c.is_zero()) {
                return Err(Error::Model(format!("x^{ea} y^{eb} V^{j} survives at half-integer order")));
            }
            continue;
        }
        let e = twice_e / 2;
        let q = times_one_minus_v2_pow(&f, e, z as usize);
        if let Some(j) = (e + 1..q.len()).find(|&j| !q[j].is_zero()) {
            return Err(Error::Model(format!("x^{ea} y^{eb}: term V^{j} beyond degree {e}; order bound too small")));
        }
        let mut coeffs = vec![BigRational::zero(); e + 1];
        for (j, c) in q.iter().enumerate().take(e + 1) {
            coeffs[e - j] = c.clone();
        }
        let mono = Monomial::from_pairs([(VarId::big_x(m), ea), (VarId::big_y(m), eb)]);
        out.add_term(mono, RatFunc::from_poly(Poly::from_coeffs(coeffs)));
    }
    Ok(out)
}

/// `A − C(m−1,2)A² + (m x/2) ∫₀^V ∂_x(M̄(x,y,z) + M̄(y,x,z)) dz/z` in
/// `x = x_m`, `y = y_m` and `V`, all of weight 1, through order `t + z`.
pub fn regular_mtilde(m: usize, t: u32, z: u32) -> Result<Series> {
    if m < 3 {
        return Err(Error::Model(format!("regular degree {m} below 3")));
    }
    let (x, y) = (VarId::x(m), VarId::y(m));
    let gi = Grading::new(t + z, [(x, 1), (y, 1), (VarId::V, 1)]);
    let vv = Series::var(&gi, VarId::V);
    let white = [(2, vv.clone()), (m, Series::var(&gi, x))].into_iter().collect();
    let black = [(2, vv), (m, Series::var(&gi, y))].into_iter().collect();
    let mbar = bipartite_map_gf(&WeightSystem::new(&gi, white, black)?)?;
    let swapped = mbar.rename(|v| if v == x { y } else if v == y { x } else { v });
    let integrand = (&mbar + swapped).derivative(x);
    let integral = (Series::var(&gi, x) * integrand.integrate_scaled(VarId::V)?)
        .scale(&RatFunc::from_ratio(m as i64, 2));
    let a = newton(&Constellation { m: m as u32, x: Series::var(&gi, x), y: Series::var(&gi, y) })?.values[0].clone();
    let binom = ((m - 1) * (m - 2) / 2) as i64;
    Ok(&a - (&a * &a).scale_int(binom) + integral)
}

/// `(1 − V²)^e · f`, coefficients up to `V^cap`.
fn times_one_minus_v2_pow(f: &[BigRational], e: usize, cap: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = f.iter().take(cap + 1).cloned().collect();
    for _ in 0..e {
        for j in (2..out.len()).rev() {
            let t = out[j - 2].clone();
            out[j] -= t;
        }
    }
    out
}

/// The `X^a Y^b u^f` terms with `f = 2 + 4b` of a quasi-regular Ising series
/// (without root marker), as `X^a Y^b`: the configurations in which no two
/// black vertices are adjacent. `b` counts all `Y` markers.
pub fn hard_from_ising_limit(i: &Series) -> Result<Series> {
    let mut out = Series::zero(i.grading());
    for (mono, c) in i.terms() {
        if !c.is_polynomial() {
            return Err(Error::Model(format!("coefficient of {mono} is not a polynomial in u")));
        }
        let b: i32 = mono.iter().filter(|(v, _)| v.family == Family::BigY).map(|(_, e)| e).sum();
        let f = 2 + 4 * b as usize;
        let keep = c.num().coeff(f);
        if !keep.is_zero() {
            out.add_term(mono.clone(), RatFunc::from_rational(keep));
        }
    }
    Ok(out)
}
