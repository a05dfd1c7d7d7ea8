//! Canonical text form for exact values.
//!
//! The format is line-based and bit-exact under round-trip: a variable
//! list header followed by term lines in ascending graded-lex order. JSON
//! reports embed these blocks as strings, so exact values survive
//! serialization unchanged.
//!
//! ```text
//! vars: u v
//! term: -2
//! term: 1/2+1/2*i u^2 v^1
//! ```

use std::fmt;

use super::mpoly::{is_valid_var, Term};
use super::{GaussRat, MPoly, RatFunc, SymError, TSeries};

pub(crate) fn fmt_mpoly(p: &MPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "vars:")?;
    for v in p.vars() {
        write!(f, " {v}")?;
    }
    for (t, c) in p.terms() {
        write!(f, "\nterm: {c}")?;
        for &(vi, e) in &t.0 {
            write!(f, " {}^{}", p.vars()[vi as usize], e)?;
        }
    }
    Ok(())
}

/// Parse the canonical polynomial block.
pub fn parse_mpoly(s: &str) -> Result<MPoly, SymError> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| SymError::Parse("empty polynomial block".into()))?;
    let vars = parse_header(header)?;
    let mut terms: Vec<(Term, GaussRat)> = Vec::new();
    for line in lines {
        let body = line
            .strip_prefix("term:")
            .ok_or_else(|| SymError::Parse(format!("expected `term:` line, got `{line}`")))?
            .trim();
        let mut tokens = body.split_whitespace();
        let coeff: GaussRat = tokens
            .next()
            .ok_or_else(|| SymError::Parse("empty term line".into()))?
            .parse()?;
        let mut expo: Vec<(u32, u32)> = Vec::new();
        for tok in tokens {
            let (name, e) = tok
                .split_once('^')
                .ok_or_else(|| SymError::Parse(format!("bad factor `{tok}`")))?;
            let idx = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| SymError::Parse(format!("unknown variable `{name}`")))?;
            let e: u32 = e
                .parse()
                .map_err(|_| SymError::Parse(format!("bad exponent in `{tok}`")))?;
            if e > 0 {
                expo.push((idx as u32, e));
            }
        }
        expo.sort_unstable();
        terms.push((Term(expo), coeff));
    }
    Ok(MPoly::from_terms(&vars, terms))
}

fn parse_header(line: &str) -> Result<Vec<String>, SymError> {
    let body = line
        .strip_prefix("vars:")
        .ok_or_else(|| SymError::Parse(format!("expected `vars:` header, got `{line}`")))?;
    let vars: Vec<String> = body.split_whitespace().map(str::to_string).collect();
    for v in &vars {
        if !is_valid_var(v) {
            return Err(SymError::Parse(format!("invalid variable name `{v}`")));
        }
    }
    Ok(vars)
}

/// Canonical rational-function block: numerator and denominator blocks.
pub fn fmt_ratfunc(r: &RatFunc) -> String {
    format!("num:\n{}\nden:\n{}", r.num(), r.den())
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, SymError> {
    let rest = s
        .trim()
        .strip_prefix("num:")
        .ok_or_else(|| SymError::Parse("expected `num:`".into()))?;
    let (num_block, den_block) = rest
        .split_once("den:")
        .ok_or_else(|| SymError::Parse("expected `den:`".into()))?;
    RatFunc::new(parse_mpoly(num_block)?, parse_mpoly(den_block)?)
}

pub(crate) fn fmt_series(s: &TSeries, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "series: {} order: {}", s.var(), s.order())?;
    for (k, c) in s.terms() {
        write!(f, "\nexp {k}:\n{c}")?;
    }
    Ok(())
}

pub fn parse_series(s: &str) -> Result<TSeries, SymError> {
    let mut lines = s.lines();
    let header = lines
        .next()
        .ok_or_else(|| SymError::Parse("empty series block".into()))?
        .trim();
    let body = header
        .strip_prefix("series:")
        .ok_or_else(|| SymError::Parse(format!("expected `series:` header, got `{header}`")))?;
    let (var, order) = body
        .split_once("order:")
        .ok_or_else(|| SymError::Parse("expected `order:` in series header".into()))?;
    let var = var.trim();
    let order: i64 = order
        .trim()
        .parse()
        .map_err(|_| SymError::Parse("bad series order".into()))?;
    if !is_valid_var(var) {
        return Err(SymError::Parse(format!("invalid series variable `{var}`")));
    }
    let mut out = TSeries::zero(var, order);
    let mut exp: Option<i64> = None;
    let mut block = String::new();
    let flush = |exp: Option<i64>, block: &str, out: &mut TSeries| -> Result<(), SymError> {
        if let Some(k) = exp {
            let c = parse_mpoly(block)?;
            *out = &*out + &TSeries::monomial(var, k, c, order);
        }
        Ok(())
    };
    for line in lines {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("exp ") {
            flush(exp, &block, &mut out)?;
            block.clear();
            let k = rest
                .trim_end_matches(':')
                .parse()
                .map_err(|_| SymError::Parse(format!("bad exponent line `{t}`")))?;
            exp = Some(k);
        } else if !t.is_empty() {
            block.push_str(t);
            block.push('\n');
        }
    }
    flush(exp, &block, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mpoly_round_trip_is_bit_exact() {
        let p = MPoly::monomial(GaussRat::new(super::super::gauss::rat(1, 2), super::super::gauss::rat(1, 2)), &[("u", 2), ("v", 1)]);
        let p = &p - &MPoly::from_int(2);
        let text = p.to_string();
        let q = parse_mpoly(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_string(), text);
    }

    #[test]
    fn zero_poly_round_trip() {
        let z = MPoly::zero();
        assert_eq!(parse_mpoly(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn ratfunc_round_trip() {
        let f = RatFunc::var("x")
            / (RatFunc::one() - RatFunc::var("x") * RatFunc::var("y"));
        let text = fmt_ratfunc(&f);
        let g = parse_ratfunc(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(fmt_ratfunc(&g), text);
    }

    #[test]
    fn series_round_trip() {
        let s = &TSeries::monomial("x", -2, MPoly::var("u"), 3)
            + &TSeries::monomial("x", 1, MPoly::from_int(-7), 3);
        let text = s.to_string();
        let t = parse_series(&text).unwrap();
        assert_eq!(s, t);
        assert_eq!(t.to_string(), text);
    }
}
