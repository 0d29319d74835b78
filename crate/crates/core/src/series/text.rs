use super::{Family, Grading, Monomial, RatFunc, Series, VarId};
use crate::error::{Error, Result};

fn parse_var(s: &str) -> Result<VarId> {
    let bad = || Error::Parse(format!("unknown variable {s:?}"));
    let mut chars = s.chars();
    let head = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    let family = match head {
        'x' => Family::X,
        'y' => Family::Y,
        'X' => Family::BigX,
        'Y' => Family::BigY,
        'v' => Family::V,
        'w' => Family::W,
        't' => Family::T,
        's' => Family::S,
        'z' => Family::Z,
        _ => return Err(bad()),
    };
    let index = match family {
        Family::X | Family::Y | Family::BigX | Family::BigY => rest.parse::<u8>().map_err(|_| bad())?,
        _ if rest.is_empty() => 0,
        _ => return Err(bad()),
    };
    Ok(VarId { family, index })
}

/// Parses `1`, `x2`, `X4^2*Y4`, `z^-1`.
pub fn parse_monomial(s: &str) -> Result<Monomial> {
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::one());
    }
    let mut m = Monomial::one();
    for factor in s.split('*') {
        let (v, e) = match factor.split_once('^') {
            Some((v, e)) => (v, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
            None => (factor, 1),
        };
        let v = parse_var(v)?;
        if e < 0 && !v.allows_negative() {
            return Err(Error::Parse(format!("negative exponent on {v}")));
        }
        m = m.mul(&Monomial::pow_of(v, e));
    }
    Ok(m)
}

/// Reads the canonical `monomial<TAB>num/den` lines written by `Display`.
pub fn parse_series_text(text: &str, g: &Grading) -> Result<Series> {
    let mut s = Series::zero(g);
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (m, c) = line
            .split_once('\t')
            .or_else(|| line.split_once(char::is_whitespace))
            .ok_or_else(|| Error::Parse(format!("expected monomial and coefficient: {line:?}")))?;
        let m = parse_monomial(m)?;
        let d = g.degree(&m);
        if d > g.order() {
            return Err(Error::BeyondTruncation { monomial: m.to_string(), degree: d, order: g.order() });
        }
        s.add_term(m, RatFunc::parse(c.trim())?);
    }
    Ok(s)
}
