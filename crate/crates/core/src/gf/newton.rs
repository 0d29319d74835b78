//! Newton iteration for the small algebraic systems parametrizing the tree
//! series (`P`; `P, Q, R`; `A`).

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::series::{Grading, Monomial, RatFunc, Series};

/// Arithmetic needed to evaluate a system, on plain series or on duals.
pub trait Alg: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    /// A series embedded as a constant of the same shape as `self`.
    fn lift(&self, s: &Series) -> Self;
    fn recip(&self) -> Result<Self>;

    fn int(&self, n: i64) -> Self {
        self.lift(&Series::from_int(self.grading(), n))
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.recip()?)
    }

    fn pow(&self, n: u32) -> Self {
        let mut out = self.int(1);
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    fn grading(&self) -> &Grading;
}

impl Alg for Series {
    fn lift(&self, s: &Series) -> Self {
        s.clone()
    }

    fn recip(&self) -> Result<Self> {
        self.reciprocal()
    }

    fn grading(&self) -> &Grading {
        Series::grading(self)
    }
}

/// A value with its gradient with respect to the unknowns.
#[derive(Clone, Debug)]
pub struct Dual {
    pub val: Series,
    pub grad: Vec<Series>,
}

impl Dual {
    pub fn var(val: Series, i: usize, n: usize) -> Dual {
        let g = val.grading().clone();
        let grad = (0..n).map(|j| if i == j { Series::one(&g) } else { Series::zero(&g) }).collect();
        Dual { val, grad }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { val: self.val + o.val, grad: self.grad.into_iter().zip(o.grad).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { val: self.val - o.val, grad: self.grad.into_iter().zip(o.grad).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        let grad = self.grad.iter().zip(&o.grad).map(|(a, b)| a * &o.val + &self.val * b).collect();
        Dual { val: &self.val * &o.val, grad }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { val: -self.val, grad: self.grad.into_iter().map(|a| -a).collect() }
    }
}

impl Alg for Dual {
    fn lift(&self, s: &Series) -> Self {
        Dual { val: s.clone(), grad: vec![Series::zero(s.grading()); self.grad.len()] }
    }

    fn recip(&self) -> Result<Self> {
        let r = self.val.reciprocal()?;
        let r2 = -(&r * &r);
        Ok(Dual { grad: self.grad.iter().map(|a| a * &r2).collect(), val: r })
    }

    fn grading(&self) -> &Grading {
        self.val.grading()
    }
}

/// A square polynomial system `F(X) = 0` in named unknowns.
pub trait System {
    fn grading(&self) -> &Grading;
    fn names(&self) -> Vec<&'static str>;
    /// Value of the unknowns at grade 0 is found by Newton as well; this is
    /// only the starting point.
    fn start(&self) -> Vec<Series>;
    fn residuals<T: Alg>(&self, x: &[T]) -> Result<Vec<T>>;
}

/// Unknowns solved by Newton, with the residuals left at the solution.
#[derive(Clone, Debug)]
pub struct ParamSolution {
    pub names: Vec<String>,
    pub values: Vec<Series>,
    pub residuals: Vec<Series>,
}

impl ParamSolution {
    pub fn get(&self, name: &str) -> Option<&Series> {
        self.names.iter().position(|n| n == name).map(|i| &self.values[i])
    }
}

/// A series is a unit when its constant term is a nonzero constant and its
/// other terms have positive degree.
fn is_unit(s: &Series) -> bool {
    !s.constant_term().is_zero() && s.terms().all(|(m, _)| m.is_one() || s.grading().degree(m) > 0)
}

/// Solves `J δ = f` by elimination with unit pivots.
pub fn solve_linear(mut j: Vec<Vec<Series>>, mut f: Vec<Series>) -> Result<Vec<Series>> {
    let n = f.len();
    for c in 0..n {
        let p = (c..n).find(|&r| is_unit(&j[r][c])).ok_or_else(|| Error::Singular(format!("no unit pivot in column {c}")))?;
        j.swap(c, p);
        f.swap(c, p);
        let inv = j[c][c].reciprocal()?;
        for k in c..n {
            j[c][k] = &j[c][k] * &inv;
        }
        f[c] = &f[c] * &inv;
        for r in 0..n {
            if r == c || j[r][c].is_zero() {
                continue;
            }
            let factor = j[r][c].clone();
            for k in c..n {
                let t = &factor * &j[c][k];
                j[r][k] = &j[r][k] - t;
            }
            f[r] = &f[r] - &factor * &f[c];
        }
    }
    Ok(f)
}

pub fn newton<S: System>(sys: &S) -> Result<ParamSolution> {
    let mut x = sys.start();
    let n = x.len();
    // error grades double each step; the grade-0 sector costs a step or two
    let limit = 8 + 2 * (32 - sys.grading().order().leading_zeros());
    for _ in 0..limit {
        let duals: Vec<Dual> = x.iter().enumerate().map(|(i, v)| Dual::var(v.clone(), i, n)).collect();
        let res = sys.residuals(&duals)?;
        if res.iter().all(|r| r.val.is_zero()) {
            return Ok(ParamSolution {
                names: sys.names().into_iter().map(String::from).collect(),
                values: x,
                residuals: res.into_iter().map(|r| r.val).collect(),
            });
        }
        let jac = res.iter().map(|r| r.grad.clone()).collect();
        let delta = solve_linear(jac, res.into_iter().map(|r| r.val).collect())?;
        for (v, d) in x.iter_mut().zip(delta) {
            *v = &*v - d;
        }
    }
    Err(Error::NonConvergent("Newton iteration did not settle".into()))
}

/// Outcome of substituting series into a system's equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    /// Equation index, lowest-degree offending monomial and its coefficient.
    pub witness: Option<(usize, Monomial, RatFunc)>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn residual_check<S: System>(sys: &S, values: &[Series]) -> Result<ResidualReport> {
    let res = sys.residuals(values)?;
    let g = sys.grading();
    let mut witness: Option<(u32, usize, Monomial, RatFunc)> = None;
    for (i, r) in res.iter().enumerate() {
        for (m, c) in r.sorted_terms() {
            let d = g.degree(m);
            if witness.as_ref().is_none_or(|w| d < w.0) {
                witness = Some((d, i, m.clone(), c.clone()));
            }
        }
    }
    Ok(ResidualReport { witness: witness.map(|(_, i, m, c)| (i, m, c)) })
}

/// `P = 1 + 3xyP³ + P(v+3xwP)(w+3yvP)/(1−9xyP²)²`: degrees 2 and 4.
#[derive(Clone, Debug)]
pub struct Tree24 {
    pub v: Series,
    pub w: Series,
    pub x: Series,
    pub y: Series,
}

impl System for Tree24 {
    fn grading(&self) -> &Grading {
        self.x.grading()
    }

    fn names(&self) -> Vec<&'static str> {
        vec!["P"]
    }

    fn start(&self) -> Vec<Series> {
        vec![Series::one(self.grading())]
    }

    fn residuals<T: Alg>(&self, x: &[T]) -> Result<Vec<T>> {
        let p = &x[0];
        let [v, w, xx, y] = [&self.v, &self.w, &self.x, &self.y].map(|s| p.lift(s));
        let xy = xx.clone() * y.clone();
        let den = p.int(1) - p.int(9) * xy.clone() * p.pow(2);
        let num = p.clone() * (v.clone() + p.int(3) * xx * w.clone() * p.clone()) * (w + p.int(3) * y * v * p.clone());
        let rhs = p.int(1) + p.int(3) * xy * p.pow(3) + num.div(&den.pow(2))?;
        Ok(vec![p.clone() - rhs])
    }
}

impl Tree24 {
    pub fn solve(&self) -> Result<Tree24Solution> {
        let sol = newton(self)?;
        let p = sol.values[0].clone();
        let g = p.grading().clone();
        let xy = &self.x * &self.y;
        let den = Series::one(&g) - Series::from_int(&g, 9) * &xy * &p * &p;
        let w1 = (&p * (&self.v + Series::from_int(&g, 3) * &self.x * &self.w * &p)).div(&den)?;
        let w3 = &self.x * p.pow(3);
        let b3 = &self.w * &w3 + &self.y * &w1 * (Series::from_int(&g, 6) * &w3 + &w1 * &w1);
        Ok(Tree24Solution { sol, w1, w3, b3 })
    }
}

#[derive(Clone, Debug)]
pub struct Tree24Solution {
    pub sol: ParamSolution,
    pub w1: Series,
    pub w3: Series,
    pub b3: Series,
}

impl Tree24Solution {
    pub fn p(&self) -> &Series {
        &self.sol.values[0]
    }
}

/// `P = 1+B₁`, `Q = W₀`, `R = B₀` for degrees 2 and 3:
/// `P = 1 + 2xyP² + P(w+2yQ)(v+2xR)`,
/// `(1−4xyP)Q = 2xwP + R(v+xR)`, `(1−4xyP)R = 2yvP + Q(w+yQ)`.
#[derive(Clone, Debug)]
pub struct Tree23 {
    pub v: Series,
    pub w: Series,
    pub x: Series,
    pub y: Series,
}

impl System for Tree23 {
    fn grading(&self) -> &Grading {
        self.x.grading()
    }

    fn names(&self) -> Vec<&'static str> {
        vec!["P", "Q", "R"]
    }

    fn start(&self) -> Vec<Series> {
        let g = self.grading();
        vec![Series::one(g), Series::zero(g), Series::zero(g)]
    }

    fn residuals<T: Alg>(&self, u: &[T]) -> Result<Vec<T>> {
        let (p, q, r) = (u[0].clone(), u[1].clone(), u[2].clone());
        let [v, w, x, y] = [&self.v, &self.w, &self.x, &self.y].map(|s| p.lift(s));
        let two = p.int(2);
        let lin = p.int(1) - p.int(4) * x.clone() * y.clone() * p.clone();
        let e1 = p.clone()
            - p.int(1)
            - two.clone() * x.clone() * y.clone() * p.pow(2)
            - p.clone() * (w.clone() + two.clone() * y.clone() * q.clone()) * (v.clone() + two.clone() * x.clone() * r.clone());
        let e2 = lin.clone() * q.clone() - two.clone() * x.clone() * w.clone() * p.clone() - r.clone() * (v.clone() + x * r.clone());
        let e3 = lin * r - two * y.clone() * v * p - q.clone() * (w + y * q);
        Ok(vec![e1, e2, e3])
    }
}

impl Tree23 {
    pub fn solve(&self) -> Result<Tree23Solution> {
        let sol = newton(self)?;
        let g = self.grading().clone();
        let two = Series::from_int(&g, 2);
        let (p, q, r) = (sol.values[0].clone(), sol.values[1].clone(), sol.values[2].clone());
        let w0 = q.clone();
        let w1 = &p * (&self.v + &two * &self.x * &r);
        let w2 = &self.x * &p * &p;
        let b2 = &self.w * &w2 + &self.y * (&two * &w0 * &w2 + &w1 * &w1);
        let b3 = &two * &self.y * &w1 * &w2;
        Ok(Tree23Solution { sol, p, q, r, w0, w1, w2, b2, b3 })
    }
}

#[derive(Clone, Debug)]
pub struct Tree23Solution {
    pub sol: ParamSolution,
    pub p: Series,
    pub q: Series,
    pub r: Series,
    pub w0: Series,
    pub w1: Series,
    pub w2: Series,
    pub b2: Series,
    pub b3: Series,
}

/// `A = xy(1+(m−1)A)^{m−1}`.
#[derive(Clone, Debug)]
pub struct Constellation {
    pub m: u32,
    pub x: Series,
    pub y: Series,
}

impl System for Constellation {
    fn grading(&self) -> &Grading {
        self.x.grading()
    }

    fn names(&self) -> Vec<&'static str> {
        vec!["A"]
    }

    fn start(&self) -> Vec<Series> {
        vec![Series::zero(self.grading())]
    }

    fn residuals<T: Alg>(&self, u: &[T]) -> Result<Vec<T>> {
        let a = &u[0];
        let xy = a.lift(&(&self.x * &self.y));
        let base = a.int(1) + a.int(self.m as i64 - 1) * a.clone();
        Ok(vec![a.clone() - xy * base.pow(self.m - 1)])
    }
}
