//! Multivariate polynomials over Q(i) in canonical graded-lex form.
//!
//! Canonical form: the variable list is the sorted set of names that
//! actually occur, exponent vectors are sparse `(var index, exponent)`
//! pairs, no zero coefficients are stored, and terms are kept in a
//! `BTreeMap` under the graded-lex order. Two polynomials are equal iff
//! their structures are equal, which keeps hashing and test output stable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{GaussRat, SymError};

/// Sparse exponent vector: sorted `(variable index, exponent > 0)` pairs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Term(pub Vec<(u32, u32)>);

impl Term {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: u32) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v == var)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of monomials: exponents add.
    pub fn mul(&self, other: &Term) -> Term {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Term(out)
    }

    /// Monomial quotient if `other` divides `self`.
    pub fn try_div(&self, other: &Term) -> Option<Term> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(vb, eb) in &other.0 {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                let (va, ea) = self.0[i];
                if va < vb {
                    out.push((va, ea));
                    i += 1;
                } else if va == vb {
                    if ea < eb {
                        return None;
                    }
                    if ea > eb {
                        out.push((va, ea - eb));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Term(out))
    }

    /// Componentwise min (gcd of monomials).
    pub fn gcd(&self, other: &Term) -> Term {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push((va, ea.min(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Term(out)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: total degree first, then lex with the lowest
/// variable index most significant.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return std::cmp::Ordering::Equal,
                // Remaining exponents sit on later variables: the side that
                // still has weight on the earlier variable is lex-greater.
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return std::cmp::Ordering::Greater;
                    }
                    if va > vb {
                        return std::cmp::Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        std::cmp::Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

/// Multivariate polynomial over Q(i).
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Term, GaussRat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            vars: Arc::from(Vec::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Term::default(), c);
        }
        MPoly {
            vars: Arc::from(Vec::new()),
            terms,
        }
    }

    pub fn from_int(n: i64) -> Self {
        MPoly::constant(GaussRat::from_int(n))
    }

    /// The polynomial `name` (a single variable).
    pub fn var(name: &str) -> Self {
        debug_assert!(is_valid_var(name), "invalid variable name `{name}`");
        let mut terms = BTreeMap::new();
        terms.insert(Term(vec![(0, 1)]), GaussRat::one());
        MPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms,
        }
    }

    /// `c · v1^e1 ⋯ vk^ek`; variables may repeat and appear in any order.
    pub fn monomial(c: GaussRat, factors: &[(&str, u32)]) -> Self {
        let mut acc = MPoly::constant(c);
        for &(v, e) in factors {
            if e > 0 {
                acc = &acc * &MPoly::var(v).pow(e);
            }
        }
        acc
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|t| t.0.is_empty())
    }

    /// The coefficient of the degree-0 monomial.
    pub fn constant_term(&self) -> GaussRat {
        self.terms
            .get(&Term::default())
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    /// As a constant, if it is one.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.total_degree()).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(idx) => self
                .terms
                .keys()
                .map(|t| t.exponent(idx))
                .max()
                .unwrap_or(0),
        }
    }

    fn var_index(&self, var: &str) -> Option<u32> {
        self.vars
            .binary_search_by(|v| v.as_str().cmp(var))
            .ok()
            .map(|i| i as u32)
    }

    /// Leading (graded-lex greatest) term and coefficient.
    pub fn leading(&self) -> Option<(&Term, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussRat {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussRat::zero)
    }

    /// Iterate terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Term, &GaussRat)> {
        self.terms.iter()
    }

    /// Build from raw parts, re-normalizing to canonical form.
    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Term, GaussRat)>) -> Self {
        let mut map: BTreeMap<Term, GaussRat> = BTreeMap::new();
        for (t, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(t) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        let p = MPoly {
            vars: Arc::from(vars.to_vec()),
            terms: map,
        };
        p.renormalize()
    }

    /// Restore canonical form: sorted minimal variable support.
    fn renormalize(self) -> Self {
        // Which variables are actually used?
        let mut used = vec![false; self.vars.len()];
        for t in self.terms.keys() {
            for &(v, _) in &t.0 {
                used[v as usize] = true;
            }
        }
        let sorted = self.vars.windows(2).all(|w| w[0] < w[1]);
        if sorted && used.iter().all(|&u| u) {
            return self;
        }
        let mut kept: Vec<(String, u32)> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| used[i])
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        kept.sort();
        let mut remap = vec![u32::MAX; self.vars.len()];
        for (new_idx, &(_, old_idx)) in kept.iter().enumerate() {
            remap[old_idx as usize] = new_idx as u32;
        }
        let vars: Vec<String> = kept.into_iter().map(|(v, _)| v).collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(t, c)| {
                let mut e: Vec<(u32, u32)> =
                    t.0.into_iter().map(|(v, x)| (remap[v as usize], x)).collect();
                e.sort_unstable();
                (Term(e), c)
            })
            .collect();
        MPoly {
            vars: Arc::from(vars),
            terms,
        }
    }

    /// Rewrite both polynomials over the union variable list.
    pub fn align(a: &MPoly, b: &MPoly) -> (Arc<[String]>, MPoly, MPoly) {
        if Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars {
            return (a.vars.clone(), a.clone(), b.clone());
        }
        let union: BTreeSet<&String> = a.vars.iter().chain(b.vars.iter()).collect();
        let vars: Vec<String> = union.into_iter().cloned().collect();
        let vars: Arc<[String]> = Arc::from(vars);
        let remap = |p: &MPoly| -> MPoly {
            let map: Vec<u32> = p
                .vars
                .iter()
                .map(|v| vars.binary_search(v).unwrap() as u32)
                .collect();
            let terms = p
                .terms
                .iter()
                .map(|(t, c)| {
                    let mut e: Vec<(u32, u32)> =
                        t.0.iter().map(|&(v, x)| (map[v as usize], x)).collect();
                    e.sort_unstable();
                    (Term(e), c.clone())
                })
                .collect();
            MPoly {
                vars: vars.clone(),
                terms,
            }
        };
        (vars.clone(), remap(a), remap(b))
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, c)| {
                let c = f(c);
                (!c.is_zero()).then(|| (t.clone(), c))
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &GaussRat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    /// Conjugate every coefficient.
    pub fn conj_coeffs(&self) -> MPoly {
        self.map_coeffs(GaussRat::conj)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            if e > 1 {
                base = &base * &base;
            }
            e >>= 1;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn derive(&self, var: &str) -> MPoly {
        let Some(idx) = self.var_index(var) else {
            return MPoly::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, c)| {
                let e = t.exponent(idx);
                if e == 0 {
                    return None;
                }
                let mut mono: Vec<(u32, u32)> = t
                    .0
                    .iter()
                    .filter_map(|&(v, x)| {
                        if v == idx {
                            (x > 1).then_some((v, x - 1))
                        } else {
                            Some((v, x))
                        }
                    })
                    .collect();
                mono.sort_unstable();
                Some((Term(mono), c * &GaussRat::from_int(e as i64)))
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
        .renormalize()
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn eval(&self, point: &BTreeMap<String, GaussRat>) -> Result<GaussRat, SymError> {
        let vals: Vec<&GaussRat> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .ok_or_else(|| SymError::MissingVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut acc = GaussRat::zero();
        for (t, c) in &self.terms {
            let mut m = c.clone();
            for &(v, e) in &t.0 {
                m = &m * &vals[v as usize].pow(e);
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }

    /// Substitute polynomials for a subset of variables.
    pub fn substitute(&self, map: &BTreeMap<String, MPoly>) -> MPoly {
        if self.vars.iter().all(|v| !map.contains_key(v)) {
            return self.clone();
        }
        let mut acc = MPoly::zero();
        for (t, c) in &self.terms {
            let mut m = MPoly::constant(c.clone());
            for &(v, e) in &t.0 {
                let name = &self.vars[v as usize];
                match map.get(name) {
                    Some(p) => m = &m * &p.pow(e),
                    None => m = &m * &MPoly::var(name).pow(e),
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Rename variables (the map must be injective on this support).
    pub fn rename(&self, map: &BTreeMap<String, String>) -> MPoly {
        if self.vars.iter().all(|v| !map.contains_key(v)) {
            return self.clone();
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        MPoly {
            vars: Arc::from(vars),
            terms: self.terms.clone(),
        }
        .renormalize()
    }

    /// Coefficients of powers of `var`: the polynomial as a univariate in
    /// `var` over the remaining variables.
    pub fn coeffs_in(&self, var: &str) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, Vec<(Term, GaussRat)>> = BTreeMap::new();
        match self.var_index(var) {
            None => {
                if !self.is_zero() {
                    out.insert(0, self.terms.iter().map(|(t, c)| (t.clone(), c.clone())).collect());
                }
            }
            Some(idx) => {
                for (t, c) in &self.terms {
                    let e = t.exponent(idx);
                    let rest: Vec<(u32, u32)> =
                        t.0.iter().copied().filter(|&(v, _)| v != idx).collect();
                    out.entry(e).or_default().push((Term(rest), c.clone()));
                }
            }
        }
        let vars: Vec<String> = self.vars.to_vec();
        out.into_iter()
            .map(|(e, terms)| (e, MPoly::from_terms(&vars, terms)))
            .collect()
    }

    /// Drop terms whose total degree in `counted` variables exceeds `cap`.
    /// Returns the truncated polynomial and whether anything nonzero fell.
    pub fn truncate_degree(&self, counted: &[String], cap: u32) -> (MPoly, bool) {
        let idxs: Vec<u32> = counted.iter().filter_map(|v| self.var_index(v)).collect();
        if idxs.is_empty() {
            return (self.clone(), false);
        }
        let mut dropped = false;
        let terms: BTreeMap<Term, GaussRat> = self
            .terms
            .iter()
            .filter(|(t, _)| {
                let d: u32 = t
                    .0
                    .iter()
                    .filter(|&&(v, _)| idxs.contains(&v))
                    .map(|&(_, e)| e)
                    .sum();
                if d > cap {
                    dropped = true;
                    false
                } else {
                    true
                }
            })
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        (
            MPoly {
                vars: self.vars.clone(),
                terms,
            }
            .renormalize(),
            dropped,
        )
    }

    /// Lowest total degree among the terms (order of vanishing at 0).
    pub fn vanishing_order(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.total_degree()).min()
    }
}

pub(crate) fn is_valid_var(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (vars, a, b) = MPoly::align(self, rhs);
        let mut terms = a.terms;
        for (t, c) in b.terms {
            match terms.entry(t) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        MPoly { vars, terms }.renormalize()
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let (vars, a, b) = MPoly::align(self, rhs);
        let mut terms: BTreeMap<Term, GaussRat> = BTreeMap::new();
        for (ta, ca) in &a.terms {
            for (tb, cb) in &b.terms {
                let t = ta.mul(tb);
                let c = ca * cb;
                match terms.entry(t) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &c;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        MPoly { vars, terms }.renormalize()
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned_poly {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned_poly!(Add::add, Sub::sub, Mul::mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::fmt_mpoly(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::gauss::rat;
    use super::*;

    fn v(name: &str) -> MPoly {
        MPoly::var(name)
    }

    #[test]
    fn difference_of_squares() {
        let u = v("u");
        let prod = &(&u + &MPoly::one()) * &(&u - &MPoly::one());
        assert_eq!(prod, &(&u * &u) - &MPoly::one());
    }

    #[test]
    fn additive_identity() {
        let p = &(&v("u") * &v("w")) + &MPoly::from_int(3);
        assert_eq!(&p + &MPoly::zero(), p);
    }

    #[test]
    fn gaussian_conjugate_product() {
        // (sigma + i u)(sigma - i u) = sigma^2 + u^2
        let s = v("sigma");
        let u = v("u");
        let i = MPoly::constant(GaussRat::i());
        let left = &(&s + &(&i * &u)) * &(&s - &(&i * &u));
        let right = &(&s * &s) + &(&u * &u);
        assert_eq!(left, right);
    }

    #[test]
    fn support_is_minimal_and_sorted() {
        let p = &(&v("w") * &v("a")) - &(&v("a") * &v("w"));
        assert!(p.is_zero());
        assert!(p.vars().is_empty());
        let q = &(&v("w") + &v("a")) - &v("w");
        assert_eq!(q.vars(), ["a".to_string()]);
    }

    #[test]
    fn derivative_examples() {
        // d/du (u^2 w) = 2 u w
        let p = &(&v("u") * &v("u")) * &v("w");
        assert_eq!(p.derive("u"), (&MPoly::from_int(2) * &v("u")) * v("w"));
        assert!(v("u").derive("sigma").is_zero());
    }

    #[test]
    fn eval_exact() {
        let p = &(&v("u") * &v("u")) * &v("w");
        let mut pt = BTreeMap::new();
        pt.insert("u".to_string(), GaussRat::from_int(2));
        pt.insert("w".to_string(), GaussRat::from_int(3));
        assert_eq!(p.eval(&pt).unwrap(), GaussRat::from_int(12));
    }

    #[test]
    fn graded_lex_order() {
        // u^2 > u w > w^2 > u > w > 1 under graded lex with u < w... the
        // variable list is sorted, so index 0 = "u" is most significant.
        let p = &(&v("u") + &v("w")).pow(2) + &(&v("u") + &MPoly::one());
        let lead = p.leading().unwrap();
        assert_eq!(lead.0, &Term(vec![(0, 2)]));
    }

    #[test]
    fn truncate_degree_counts_selected_vars() {
        let p = &(&v("u").pow(3) * &v("t")) + &v("u");
        let (q, dropped) = p.truncate_degree(&["u".to_string()], 2);
        assert!(dropped);
        assert_eq!(q, v("u"));
        let (q2, dropped2) = p.truncate_degree(&["t".to_string()], 2);
        assert_eq!(q2, p);
        assert!(!dropped2);
    }

    #[test]
    fn coeffs_in_var() {
        let p = &(&(&v("x").pow(2) * &v("u")) + &(&v("x") * &MPoly::from_int(3))) + &v("w");
        let c = p.coeffs_in("x");
        assert_eq!(c[&2], v("u"));
        assert_eq!(c[&1], MPoly::from_int(3));
        assert_eq!(c[&0], v("w"));
    }

    #[test]
    fn scale_by_rational() {
        let p = v("u").scale(&GaussRat::from_rat(rat(1, 2)));
        assert_eq!(&p + &p, v("u"));
    }
}
