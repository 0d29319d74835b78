//! Truncated multivariate power series with coefficients in ℚ(u).
//!
//! A [`Series`] is a sparse map from [`Monomial`]s to [`RatFunc`]
//! coefficients, truncated at a weighted degree fixed by its [`Grading`].
//! Every generating function in the crate lives here.

mod ratfunc;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use ratfunc::{Poly, RatFunc};
pub use text::{parse_monomial, parse_series_text};

/// Variable families. The declaration order is the tie-break order of monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `x_k`: white vertex of degree k (bipartite weights).
    X,
    /// `y_k`: black vertex of degree k.
    Y,
    /// `X_k`: white (vacant / spin-up) vertex of degree k in a physical model.
    BigX,
    /// `Y_k`: black (occupied / spin-down) vertex of degree k.
    BigY,
    V,
    W,
    T,
    /// Half-frustration marker, `s² = u − 1/u`.
    S,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub family: Family,
    pub index: u8,
}

impl VarId {
    pub const V: VarId = VarId { family: Family::V, index: 0 };
    pub const W: VarId = VarId { family: Family::W, index: 0 };
    pub const T: VarId = VarId { family: Family::T, index: 0 };
    pub const S: VarId = VarId { family: Family::S, index: 0 };
    pub const Z: VarId = VarId { family: Family::Z, index: 0 };

    pub fn x(k: usize) -> VarId {
        VarId { family: Family::X, index: k as u8 }
    }
    pub fn y(k: usize) -> VarId {
        VarId { family: Family::Y, index: k as u8 }
    }
    pub fn big_x(k: usize) -> VarId {
        VarId { family: Family::BigX, index: k as u8 }
    }
    pub fn big_y(k: usize) -> VarId {
        VarId { family: Family::BigY, index: k as u8 }
    }

    /// Only `z` may carry negative exponents.
    pub fn allows_negative(&self) -> bool {
        self.family == Family::Z
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::X => write!(f, "x{}", self.index),
            Family::Y => write!(f, "y{}", self.index),
            Family::BigX => write!(f, "X{}", self.index),
            Family::BigY => write!(f, "Y{}", self.index),
            Family::V => write!(f, "v"),
            Family::W => write!(f, "w"),
            Family::T => write!(f, "t"),
            Family::S => write!(f, "s"),
            Family::Z => write!(f, "z"),
        }
    }
}

/// Product of variable powers, kept sorted by [`VarId`] with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(VarId, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        Self::pow_of(v, 1)
    }

    pub fn pow_of(v: VarId, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::pow_of(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Same monomial with the exponent of `v` replaced.
    pub fn with_exponent(&self, v: VarId, e: i32) -> Monomial {
        let mut out: SmallVec<[(VarId, i32); 4]> = self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        if e != 0 {
            let pos = out.iter().position(|(w, _)| *w > v).unwrap_or(out.len());
            out.insert(pos, (v, e));
        }
        Monomial(out)
    }

    pub fn without(&self, v: VarId) -> Monomial {
        self.with_exponent(v, 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq, Eq)]
struct GradingInner {
    weights: BTreeMap<VarId, u32>,
    order: u32,
}

/// Variable weights plus a truncation order. Unlisted variables weigh 0.
#[derive(Clone, Debug)]
pub struct Grading(Arc<GradingInner>);

impl PartialEq for Grading {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}
impl Eq for Grading {}

impl Grading {
    pub fn new(order: u32, weights: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        Grading(Arc::new(GradingInner { weights: weights.into_iter().collect(), order }))
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn weight(&self, v: VarId) -> u32 {
        self.0.weights.get(&v).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.0.weights.iter().map(|(k, v)| (*k, *v))
    }

    pub fn with_order(&self, order: u32) -> Grading {
        if order == self.order() {
            return self.clone();
        }
        Grading(Arc::new(GradingInner { weights: self.0.weights.clone(), order }))
    }

    /// Weighted degree. Negative exponents (only `z`) contribute nothing,
    /// `z` being ungraded in every grading used here.
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.iter().map(|(v, e)| self.weight(v) as i64 * e as i64).sum::<i64>().max(0) as u32
    }
}

/// Truncated power series; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    grading: Grading,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl Series {
    pub fn zero(g: &Grading) -> Series {
        Series { grading: g.clone(), terms: BTreeMap::new() }
    }

    pub fn one(g: &Grading) -> Series {
        Series::constant(g, RatFunc::one())
    }

    pub fn constant(g: &Grading, c: RatFunc) -> Series {
        Series::term(g, Monomial::one(), c)
    }

    pub fn from_int(g: &Grading, n: i64) -> Series {
        Series::constant(g, RatFunc::from_int(n))
    }

    pub fn var(g: &Grading, v: VarId) -> Series {
        Series::term(g, Monomial::var(v), RatFunc::one())
    }

    /// Single term; dropped if zero or beyond the truncation order.
    pub fn term(g: &Grading, m: Monomial, c: RatFunc) -> Series {
        let mut s = Series::zero(g);
        if !c.is_zero() && g.degree(&m) <= g.order() {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn from_terms(g: &Grading, terms: impl IntoIterator<Item = (Monomial, RatFunc)>) -> Series {
        let mut s = Series::zero(g);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    /// Terms in canonical order: weighted degree, then monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.grading.degree(a.0).cmp(&self.grading.degree(b.0)).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn constant_term(&self) -> RatFunc {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() || self.grading.degree(&m) > self.grading.order() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, o: &Series) -> Result<()> {
        if self.grading != o.grading {
            return Err(Error::GradingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Series) -> Result<Series> {
        self.check(o)?;
        let mut s = self.clone();
        for (m, c) in &o.terms {
            s.add_term(m.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Series) -> Result<Series> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            grading: self.grading.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Series {
        if c.is_zero() {
            return Series::zero(&self.grading);
        }
        Series {
            grading: self.grading.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Series {
        self.scale(&RatFunc::from_int(n))
    }

    pub fn mul(&self, o: &Series) -> Result<Series> {
        self.check(o)?;
        Ok(self.mul_capped(o, self.grading.order()))
    }

    /// Product keeping only terms of weighted degree at most `cap`.
    /// Callers guarantee equal gradings.
    pub fn mul_capped(&self, o: &Series, cap: u32) -> Series {
        let cap = cap.min(self.grading.order());
        if self.is_zero() || o.is_zero() {
            return Series::zero(&self.grading);
        }
        let g = &self.grading;
        let mut buckets: Vec<Vec<(&Monomial, &RatFunc)>> = vec![Vec::new(); cap as usize + 1];
        for (m, c) in &o.terms {
            let d = g.degree(m);
            if d <= cap {
                buckets[d as usize].push((m, c));
            }
        }
        let mut acc: HashMap<Monomial, RatFunc> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = g.degree(ma);
            if da > cap {
                continue;
            }
            for bucket in &buckets[..=(cap - da) as usize] {
                for (mb, cb) in bucket {
                    let m = ma.mul(mb);
                    // negative z-exponents may shift degrees; recheck
                    if g.degree(&m) > cap {
                        continue;
                    }
                    let p = ca.mul(cb);
                    match acc.entry(m) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(p);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let s = e.get().add(&p);
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Series {
            grading: g.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut result = Series::one(&self.grading);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_capped(&base, self.grading.order());
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_capped(&base, self.grading.order());
            }
        }
        result
    }

    /// Fails unless every non-constant term has positive degree, which is what
    /// makes geometric and Newton-type expansions terminate.
    fn check_nilpotent_tail(&self) -> Result<()> {
        for m in self.terms.keys() {
            if !m.is_one() && self.grading.degree(m) == 0 {
                return Err(Error::NonNilpotent(m.to_string()));
            }
        }
        Ok(())
    }

    pub fn reciprocal(&self) -> Result<Series> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        self.check_nilpotent_tail()?;
        let g = &self.grading;
        let mut r = Series::constant(g, c.inv()?);
        let two = Series::from_int(g, 2);
        // Newton: r <- r (2 - a r); the error degree at least doubles each step.
        loop {
            let ar = self.mul_capped(&r, g.order());
            let next = r.mul_capped(&two.sub(&ar)?, g.order());
            if next == r {
                return Ok(r);
            }
            r = next;
        }
    }

    pub fn div(&self, o: &Series) -> Result<Series> {
        self.mul(&o.reciprocal()?)
    }

    /// Homomorphic substitution of variables by series in the `target` grading.
    ///
    /// A variable of positive weight must not be replaced by a series with a
    /// grade-0 part, and images must not lower degree (both would make the
    /// truncated result inexact).
    pub fn substitute(&self, map: &BTreeMap<VarId, Series>, target: &Grading) -> Result<Series> {
        for (v, img) in map {
            if img.grading != *target {
                return Err(Error::GradingMismatch);
            }
            let w = self.grading.weight(*v);
            if w > 0 {
                if let Some(bad) = img.terms.keys().find(|m| target.degree(m) < w) {
                    return Err(Error::NonTerminatingSubstitution(format!("{v} -> term {bad}")));
                }
            }
        }
        let mut cache: HashMap<(VarId, i32), Series> = HashMap::new();
        let mut out = Series::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Series::constant(target, c.clone());
            let mut rest = Monomial::one();
            for (v, e) in m.iter() {
                match map.get(&v) {
                    None => rest = rest.mul(&Monomial::pow_of(v, e)),
                    Some(img) => {
                        let p = match cache.get(&(v, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = if e >= 0 { img.pow(e as u32) } else { img.reciprocal()?.pow((-e) as u32) };
                                cache.insert((v, e), p.clone());
                                p
                            }
                        };
                        acc = acc.mul_capped(&p, target.order());
                    }
                }
            }
            if !rest.is_one() {
                acc = acc.mul_capped(&Series::term(target, rest, RatFunc::one()), target.order());
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Re-expresses the series under another grading (same terms, new truncation).
    pub fn regrade(&self, g: &Grading) -> Series {
        Series::from_terms(g, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Replaces `s^{2j}` by `(u − 1/u)^j`.
    pub fn reduce_s(&self) -> Result<Series> {
        let scale = RatFunc::u_minus_ubar();
        let mut out = Series::zero(&self.grading);
        for (m, c) in &self.terms {
            let e = m.exponent(VarId::S);
            if e % 2 != 0 {
                return Err(Error::OddHalfPower(m.to_string()));
            }
            let f = if e >= 0 { scale.pow((e / 2) as u32) } else { scale.pow((-e / 2) as u32).inv()? };
            out.add_term(m.without(VarId::S), c.mul(&f));
        }
        Ok(out)
    }

    /// Termwise `var^k ↦ var^k / k`, i.e. `∫₀ f(z) dz/z`.
    pub fn integrate_scaled(&self, var: VarId) -> Result<Series> {
        let mut out = Series::zero(&self.grading);
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            if k < 1 {
                return Err(Error::DivergentIntegral(m.to_string()));
            }
            out.add_term(m.clone(), c.scale(&BigRational::new(1.into(), k.into())));
        }
        Ok(out)
    }

    pub fn derivative(&self, var: VarId) -> Series {
        let mut out = Series::zero(&self.grading);
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            if k != 0 {
                out.add_term(m.with_exponent(var, k - 1), c.scale(&BigRational::from_integer(k.into())));
            }
        }
        out
    }

    /// `var · ∂/∂var`: multiplies each term by its exponent of `var`.
    pub fn euler_derivative(&self, var: VarId) -> Series {
        let mut out = Series::zero(&self.grading);
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            if k != 0 {
                out.add_term(m.clone(), c.scale(&BigRational::from_integer(k.into())));
            }
        }
        out
    }

    pub fn coeff(&self, m: &Monomial) -> Result<RatFunc> {
        let d = self.grading.degree(m);
        if d > self.grading.order() {
            return Err(Error::BeyondTruncation { monomial: m.to_string(), degree: d, order: self.grading.order() });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero))
    }

    /// Terms of exact weighted degree `d`.
    pub fn slice(&self, d: u32) -> Series {
        Series {
            grading: self.grading.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.grading.degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms above degree `d` (grading unchanged).
    pub fn truncate(&self, d: u32) -> Series {
        Series {
            grading: self.grading.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.grading.degree(m) <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Series {
        Series {
            grading: self.grading.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> Result<RatFunc>) -> Result<Series> {
        let mut out = Series::zero(&self.grading);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Renames variables monomial by monomial (e.g. swapping `x` and `y`).
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Series {
        Series::from_terms(
            &self.grading,
            self.terms.iter().map(|(m, c)| (Monomial::from_pairs(m.iter().map(|(v, e)| (f(v), e))), c.clone())),
        )
    }

    /// Lowest-degree term where `self` and `o` differ.
    pub fn first_difference(&self, o: &Series) -> Option<(Monomial, RatFunc, RatFunc)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort_by(|a, b| self.grading.degree(a).cmp(&self.grading.degree(b)).then_with(|| a.cmp(b)));
        keys.dedup();
        for m in keys {
            let a = self.terms.get(m).cloned().unwrap_or_default();
            let b = o.terms.get(m).cloned().unwrap_or_default();
            if a != b {
                return Some((m.clone(), a, b));
            }
        }
        None
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in self.sorted_terms() {
            writeln!(f, "{m}\t{c}")?;
        }
        Ok(())
    }
}

// Operator forms for formula-heavy code. They panic on mismatched gradings,
// which only a programming error can produce; the `Result` methods above
// are the checked versions.
macro_rules! series_op {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr<&Series> for &Series {
            type Output = Series;
            fn $f(self, o: &Series) -> Series {
                Series::$f(self, o).expect("series operands share a grading")
            }
        }
        impl std::ops::$tr<Series> for Series {
            type Output = Series;
            fn $f(self, o: Series) -> Series {
                Series::$f(&self, &o).expect("series operands share a grading")
            }
        }
        impl std::ops::$tr<&Series> for Series {
            type Output = Series;
            fn $f(self, o: &Series) -> Series {
                Series::$f(&self, o).expect("series operands share a grading")
            }
        }
        impl std::ops::$tr<Series> for &Series {
            type Output = Series;
            fn $f(self, o: Series) -> Series {
                Series::$f(self, &o).expect("series operands share a grading")
            }
        }
    };
}

series_op!(Add, add);
series_op!(Sub, sub);
series_op!(Mul, mul);

impl std::ops::Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(&self)
    }
}

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

#[cfg(test)]
mod tests;
