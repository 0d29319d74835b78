//! The coefficient field ℚ(u): reduced quotients of univariate polynomials
//! with rational coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `u`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    /// `u^k`.
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        Poly(v)
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => v.push(a + b),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.0.len() == 1 {
            return self.scale(&o.0[0]);
        }
        if self.0.len() == 1 {
            return o.scale(&self.0[0]);
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.0[dd].recip();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    let t = &c * dc;
                    rem[k - dd + j] -= t;
                }
                quot[k - dd] = c;
            }
            rem.pop();
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// `self / (u − a)` when `a` is a root.
    pub fn divide_root(&self, a: &BigRational) -> Option<Poly> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let mut q = vec![BigRational::zero(); n];
        let mut acc = self.0[n].clone();
        for k in (0..n).rev() {
            q[k] = acc.clone();
            acc = &self.0[k] + a * &acc;
        }
        acc.is_zero().then(|| Poly::from_coeffs(q))
    }

    /// Divides out `(u − r)` as often as possible; returns the multiplicity.
    fn strip_root(&mut self, r: &BigRational) -> usize {
        let mut k = 0;
        while let Some(q) = self.divide_root(r) {
            *self = q;
            k += 1;
        }
        k
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn numerator_gcd(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// Integer coefficients after multiplying by `k` (which must clear all denominators).
    fn int_coeffs(&self, k: &BigInt) -> Vec<BigInt> {
        self.0
            .iter()
            .map(|c| {
                let x = c * BigRational::from_integer(k.clone());
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    }
}

/// Writes integer coefficients in `u`, highest degree first: `6u^4+12u^2-1`.
fn fmt_int_poly(coeffs: &[BigInt], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        match k {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if k == 1 {
                    write!(f, "u")?;
                } else {
                    write!(f, "u^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Roots split off denominators: `u`, `u − 1`, `u + 1`.
const ROOTS: [i64; 3] = [0, 1, -1];

fn root(i: usize) -> BigRational {
    BigRational::from_integer(ROOTS[i].into())
}

fn linear(i: usize) -> Poly {
    Poly::from_coeffs(vec![-root(i), BigRational::one()])
}

/// Element of ℚ(u), stored reduced as `num / (u^a (u−1)^b (u+1)^c · rest)`
/// with `rest` monic and free of the roots `0, ±1`. Those three factors are
/// the ones the models produce, so they are tracked by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    exps: [u32; 3],
    rest: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, exps: [0; 3], rest: Poly::one() }
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::from_poly(Poly::monomial(1))
    }

    /// `ū = 1/u`.
    pub fn u_bar() -> Self {
        RatFunc { num: Poly::one(), exps: [1, 0, 0], rest: Poly::one() }
    }

    /// `u - 1/u`, the frustration scale.
    pub fn u_minus_ubar() -> Self {
        Self::u().sub(&Self::u_bar())
    }

    /// Builds `num/den`, reducing it; fails on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut rest = den;
        let mut exps = [0; 3];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = rest.strip_root(&root(i)) as u32;
        }
        Self::normalized(num, exps, rest)
    }

    /// Cancels common factors and makes `rest` monic. `rest` must already be
    /// free of the tracked roots.
    fn normalized(mut num: Poly, mut exps: [u32; 3], mut rest: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        for (i, e) in exps.iter_mut().enumerate() {
            let r = root(i);
            while *e > 0 {
                let Some(q) = num.divide_root(&r) else { break };
                num = q;
                *e -= 1;
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            let g = num.gcd(&rest);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_rem(&g).0;
                rest = rest.div_rem(&g).0;
            }
        }
        let lead = rest.lead().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            rest = rest.scale(&inv);
        }
        RatFunc { num, exps, rest }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// The monic denominator.
    pub fn den(&self) -> Poly {
        let mut d = self.rest.clone();
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                d = d.mul(&linear(i));
            }
        }
        d
    }

    fn den_is_one(&self) -> bool {
        self.exps == [0; 3] && self.rest.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den_is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den_is_one()
    }

    /// Polynomial in `u` using only nonnegative powers. Negative powers are
    /// carried by the denominator, so this coincides with [`Self::is_polynomial`].
    pub fn is_poly_nonneg_powers(&self) -> bool {
        self.is_polynomial()
    }

    /// The value as a rational constant, when it is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den_is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.rest != o.rest {
            return Self::reduced(self.num.mul(&o.den()).add(&o.num.mul(&self.den())), self.den().mul(&o.den()));
        }
        let mut exps = [0; 3];
        let (mut a, mut b) = (self.num.clone(), o.num.clone());
        for i in 0..3 {
            exps[i] = self.exps[i].max(o.exps[i]);
            for _ in self.exps[i]..exps[i] {
                a = a.mul(&linear(i));
            }
            for _ in o.exps[i]..exps[i] {
                b = b.mul(&linear(i));
            }
        }
        Self::normalized(a.add(&b), exps, self.rest.clone())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), exps: self.exps, rest: self.rest.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.num.degree() == Some(0) && o.den_is_one() {
            return self.scale(&o.num.0[0]);
        }
        if self.num.degree() == Some(0) && self.den_is_one() {
            return o.scale(&self.num.0[0]);
        }
        let exps = [0, 1, 2].map(|i| self.exps[i] + o.exps[i]);
        if self.rest.is_one() && o.rest.is_one() {
            return Self::normalized(self.num.mul(&o.num), exps, Poly::one());
        }
        let (a, d) = cancel(&self.num, &o.rest);
        let (c, b) = cancel(&o.num, &self.rest);
        Self::normalized(a.mul(&c), exps, b.mul(&d))
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), exps: self.exps, rest: self.rest.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    /// Powers of a reduced quotient stay reduced.
    pub fn pow(&self, n: u32) -> RatFunc {
        let mut num = Poly::one();
        let mut rest = Poly::one();
        for _ in 0..n {
            num = num.mul(&self.num);
            rest = rest.mul(&self.rest);
        }
        RatFunc { num, exps: self.exps.map(|e| e * n), rest }
    }

    /// Value at a rational point; fails when the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den().eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Integer-coefficient numerator and denominator with coprime content and
    /// positive leading denominator coefficient. This is the printed form.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let den = self.den();
        let k = self.num.denominator_lcm().lcm(&den.denominator_lcm());
        let mut n = self.num.int_coeffs(&k);
        let mut d = den.int_coeffs(&k);
        let g = Poly::from_coeffs(
            n.iter().chain(d.iter()).map(|c| BigRational::from_integer(c.clone())).collect(),
        )
        .numerator_gcd();
        if !g.is_zero() && !g.is_one() {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c = &*c / &g;
            }
        }
        (n, d)
    }

    /// Parses the printed form `numpoly/denpoly` (or a bare polynomial).
    pub fn parse(s: &str) -> Result<RatFunc> {
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        RatFunc::new(parse_poly(a.trim())?, parse_poly(b.trim())?)
    }
}

fn parse_poly(s: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("bad polynomial in u: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let c: BigInt = if start == i { BigInt::one() } else { s[start..i].parse().map_err(|_| bad())? };
        let mut k = 0usize;
        if i < bytes.len() && bytes[i] == b'u' {
            i += 1;
            k = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let st = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                k = s[st..i].parse().map_err(|_| bad())?;
            }
        } else if start == i {
            return Err(bad());
        }
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(bad());
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += BigRational::from_integer(sign * c);
    }
    Ok(Poly::from_coeffs(coeffs))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_parts();
        fmt_int_poly(&n, f)?;
        write!(f, "/")?;
        fmt_int_poly(&d, f)
    }
}

/// `(p/g, q/g)` for `g = gcd(p, q)`.
fn cancel(p: &Poly, q: &Poly) -> (Poly, Poly) {
    if q.is_one() || p.degree() == Some(0) {
        return (p.clone(), q.clone());
    }
    let g = p.gcd(q);
    if g.degree().unwrap_or(0) == 0 {
        (p.clone(), q.clone())
    } else {
        (p.div_rem(&g).0, q.div_rem(&g).0)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_canonical() {
        // (u^2 - 1)/(2u - 2) = (u + 1)/2
        let r = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-2, 2])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, RatFunc::from_poly(Poly::from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ])));
        assert_eq!(r.to_string(), "u+1/2");
    }

    #[test]
    fn u_bar_geometric() {
        // 1/(1 - ū²) = u²/(u² - 1)
        let ub = RatFunc::u_bar();
        let r = RatFunc::one().sub(&ub.mul(&ub)).inv().unwrap();
        assert_eq!(r.to_string(), "u^2/u^2-1");
        assert!(!r.is_polynomial());
    }

    #[test]
    fn u_minus_ubar_squared() {
        let s = RatFunc::u_minus_ubar();
        assert_eq!(s.mul(&s).to_string(), "u^4-2u^2+1/u^2");
    }

    #[test]
    fn zero_inverse_fails() {
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["6u^4+12u^2/1", "u^2/u^2-1", "-3u+1/2", "0/1", "1/u"] {
            let r = RatFunc::parse(s).unwrap();
            assert_eq!(RatFunc::parse(&r.to_string()).unwrap(), r, "{s}");
        }
        assert!(RatFunc::parse("u^").is_err());
        assert!(RatFunc::parse("3x").is_err());
    }

    #[test]
    fn eval_at_one() {
        let r = RatFunc::parse("u^4+2u^2/u").unwrap();
        assert_eq!(r.eval(&BigRational::one()).unwrap(), BigRational::from_integer(3.into()));
    }
}
