use std::collections::BTreeMap;

use crate::series::{Grading, Series};

/// A Laurent polynomial in the charge marker `z` with series coefficients.
/// Exact in `z`; only the coefficients are truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeFamily {
    grading: Grading,
    coeffs: BTreeMap<i32, Series>,
}

impl ChargeFamily {
    pub fn zero(g: &Grading) -> Self {
        ChargeFamily { grading: g.clone(), coeffs: BTreeMap::new() }
    }

    /// `s · z^i`.
    pub fn term(i: i32, s: Series) -> Self {
        let mut f = ChargeFamily::zero(s.grading());
        f.set(i, s);
        f
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn get(&self, i: i32) -> Series {
        self.coeffs.get(&i).cloned().unwrap_or_else(|| Series::zero(&self.grading))
    }

    pub fn set(&mut self, i: i32, s: Series) {
        if s.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, s);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Series)> {
        self.coeffs.iter().map(|(&i, s)| (i, s))
    }

    /// Smallest and largest charge carrying a nonzero coefficient.
    pub fn range(&self) -> Option<(i32, i32)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    pub fn add(&self, o: &ChargeFamily) -> ChargeFamily {
        let mut out = self.clone();
        for (&i, s) in &o.coeffs {
            let v = out.get(i) + s;
            out.set(i, v);
        }
        out
    }

    pub fn mul(&self, o: &ChargeFamily) -> ChargeFamily {
        let mut out = ChargeFamily::zero(&self.grading);
        for (&i, a) in &self.coeffs {
            for (&j, b) in &o.coeffs {
                let v = out.get(i + j) + a * b;
                out.set(i + j, v);
            }
        }
        out
    }

    pub fn scale(&self, s: &Series) -> ChargeFamily {
        let mut out = ChargeFamily::zero(&self.grading);
        for (&i, a) in &self.coeffs {
            out.set(i, a * s);
        }
        out
    }

    pub fn pow(&self, n: u32) -> ChargeFamily {
        let mut out = ChargeFamily::term(0, Series::one(&self.grading));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Keeps the charges satisfying `keep` (`[z^{≥0}]`, `[z^{≤1}]`, …).
    pub fn select(&self, keep: impl Fn(i32) -> bool) -> ChargeFamily {
        ChargeFamily {
            grading: self.grading.clone(),
            coeffs: self.coeffs.iter().filter(|(&i, _)| keep(i)).map(|(&i, s)| (i, s.clone())).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Series) -> Series) -> ChargeFamily {
        let mut out = ChargeFamily::zero(&self.grading);
        for (&i, s) in &self.coeffs {
            out.set(i, f(s));
        }
        out
    }

    /// Same coefficients under another grading.
    pub fn regrade(&self, g: &Grading) -> ChargeFamily {
        let mut out = ChargeFamily::zero(g);
        for (&i, s) in &self.coeffs {
            out.set(i, s.regrade(g));
        }
        out
    }
}
