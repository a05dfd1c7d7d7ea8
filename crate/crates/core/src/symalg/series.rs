//! Truncated Laurent series in one distinguished variable.
//!
//! A `TSeries` stores finitely many exponents (a bounded principal part is
//! allowed, so `x^-2`-weighted objects fit) with `MPoly` coefficients in
//! the remaining variables. The `order` field is the accuracy contract:
//! coefficients at exponents `<= order` are exact, everything above is
//! unknown (`O(x^{order+1})`). Every operation propagates that contract.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{GaussRat, MPoly, RatFunc, SymError};

#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    var: String,
    order: i64,
    terms: BTreeMap<i64, MPoly>,
}

impl TSeries {
    /// The zero series known through `order`.
    pub fn zero(var: &str, order: i64) -> Self {
        TSeries {
            var: var.to_string(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var: &str, c: MPoly, order: i64) -> Self {
        Self::monomial(var, 0, c, order)
    }

    /// `c · var^k + O(var^{order+1})`.
    pub fn monomial(var: &str, k: i64, c: MPoly, order: i64) -> Self {
        assert!(
            !c.vars().contains(&var.to_string()),
            "coefficient must not involve the series variable"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() && k <= order {
            terms.insert(k, c);
        }
        TSeries {
            var: var.to_string(),
            order,
            terms,
        }
    }

    /// Expand a polynomial exactly; `order` may exceed its degree, making
    /// the series exact to that order.
    pub fn from_mpoly(p: &MPoly, var: &str, order: i64) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in p.coeffs_in(var) {
            if i64::from(e) <= order && !c.is_zero() {
                terms.insert(i64::from(e), c);
            }
        }
        TSeries {
            var: var.to_string(),
            order,
            terms,
        }
    }

    /// Expand `num/den` at `var = 0`. The denominator's lowest coefficient
    /// in `var` must be a nonzero constant (so coefficients stay polynomial).
    pub fn from_ratfunc(f: &RatFunc, var: &str, order: i64) -> Result<Self, SymError> {
        // Headroom covers a denominator vanishing to positive order, whose
        // inversion costs twice its lowest exponent in accuracy.
        let pad = order + 2 * f.den().degree_in(var) as i64 + 1;
        let num = Self::from_mpoly(f.num(), var, pad);
        let den = Self::from_mpoly(f.den(), var, pad);
        let inv = den.try_invert()?;
        Ok((&num * &inv).truncate(order))
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Accuracy bound: coefficients at exponents `<= order` are exact.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest stored exponent.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, k: i64) -> MPoly {
        self.terms.get(&k).cloned().unwrap_or_else(MPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &MPoly)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn truncate(&self, order: i64) -> TSeries {
        let order = order.min(self.order);
        TSeries {
            var: self.var.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|&(&k, _)| k <= order)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> TSeries {
        TSeries {
            var: self.var.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter_map(|(&k, c)| {
                    let c = f(c);
                    (!c.is_zero()).then_some((k, c))
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> TSeries {
        if c.is_zero() {
            return TSeries::zero(&self.var, self.order);
        }
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiply by `var^k` (shifts exponents and the accuracy bound).
    pub fn shift(&self, k: i64) -> TSeries {
        TSeries {
            var: self.var.clone(),
            order: self.order + k,
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `var -> c·var`.
    pub fn scale_var(&self, c: &GaussRat) -> TSeries {
        assert!(!c.is_zero());
        TSeries {
            var: self.var.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(&k, p)| {
                    let f = if k >= 0 {
                        c.pow(k as u32)
                    } else {
                        c.try_recip().unwrap().pow((-k) as u32)
                    };
                    (k, p.scale(&f))
                })
                .collect(),
        }
    }

    /// Substitute `var -> var^m` for `m >= 1` (e.g. passing to a square-root
    /// weight variable). Accuracy: `O(x^{N+1})` becomes `O(t^{m(N+1)})`.
    pub fn stretch(&self, m: i64) -> TSeries {
        assert!(m >= 1);
        TSeries {
            var: self.var.clone(),
            order: m * (self.order + 1) - 1,
            terms: self.terms.iter().map(|(&k, c)| (m * k, c.clone())).collect(),
        }
    }

    /// Derivative in the distinguished variable.
    pub fn derive_var(&self) -> TSeries {
        TSeries {
            var: self.var.clone(),
            order: self.order - 1,
            terms: self
                .terms
                .iter()
                .filter_map(|(&k, c)| {
                    if k == 0 {
                        None
                    } else {
                        Some((k - 1, c.scale(&GaussRat::from_int(k))))
                    }
                })
                .collect(),
        }
    }

    /// Coefficient-wise derivative in one of the remaining variables.
    pub fn derive_coeff(&self, var: &str) -> TSeries {
        self.map_coeffs(|c| c.derive(var))
    }

    /// Multiplicative inverse. The lowest-order coefficient must be a
    /// nonzero constant (a unit times a pure power of the variable).
    pub fn try_invert(&self) -> Result<TSeries, SymError> {
        let Some((&m, lead)) = self.terms.iter().next() else {
            return Err(SymError::NotAUnit("series is zero".into()));
        };
        let Some(c0) = lead.as_constant() else {
            return Err(SymError::NotAUnit(format!(
                "leading coefficient `{lead}` is not an invertible constant"
            )));
        };
        let c0_inv = c0.try_recip().map_err(|_| SymError::NotAUnit("zero lead".into()))?;
        // s = c0 x^m (1 + w), 1/s = c0^{-1} x^{-m} Σ (−w)^k.
        let unit_order = self.order - m;
        if unit_order < 0 {
            return Err(SymError::NotAUnit(
                "series accuracy too low to invert".into(),
            ));
        }
        let mut w = self.shift(-m).scale(&c0_inv);
        w = &w - &TSeries::constant(&self.var, MPoly::one(), unit_order);
        let mut acc = TSeries::constant(&self.var, MPoly::one(), unit_order);
        let mut pw = TSeries::constant(&self.var, MPoly::one(), unit_order);
        let neg_w = -&w;
        for _ in 0..unit_order.max(0) {
            pw = &pw * &neg_w;
            if pw.is_zero() {
                break;
            }
            acc = &acc + &pw;
        }
        Ok(acc.scale(&c0_inv).shift(-m))
    }

    /// Square root. Needs an even leading exponent and a leading constant
    /// with an exact root in Q(i); the tail uses the binomial series.
    pub fn try_sqrt(&self) -> Result<TSeries, SymError> {
        let Some((&m, lead)) = self.terms.iter().next() else {
            return Err(SymError::NotASquare);
        };
        if m % 2 != 0 {
            return Err(SymError::NotASquare);
        }
        let c0 = lead.as_constant().ok_or(SymError::NotASquare)?;
        let r0 = super::gauss::gauss_sqrt(&c0).ok_or(SymError::NotASquare)?;
        let unit_order = self.order - m;
        if unit_order < 0 {
            return Err(SymError::NotASquare);
        }
        let unit = self
            .shift(-m)
            .scale(&c0.try_recip().expect("nonzero lead"));
        // Newton iteration s_{n+1} = (s_n + u/s_n)/2 on the unit part;
        // accuracy doubles each round.
        let mut s = TSeries::constant(&self.var, MPoly::one(), unit_order);
        let half = GaussRat::from_rat(super::gauss::rat(1, 2));
        let mut known = 0i64;
        while known < unit_order {
            let s_inv = s.try_invert()?;
            s = (&s + &(&unit * &s_inv)).scale(&half);
            known = (2 * known + 1).min(unit_order);
            s = s.truncate(unit_order);
        }
        Ok(s.scale(&r0).shift(m / 2))
    }

    /// Compose `self ∘ inner` where `inner` has strictly positive lowest
    /// exponent and `self` has no principal part.
    pub fn compose(&self, inner: &TSeries) -> TSeries {
        assert_eq!(self.var, inner.var);
        assert!(self.min_exp().map_or(true, |m| m >= 0), "no principal part");
        assert!(inner.min_exp().map_or(true, |m| m >= 1), "inner must vanish");
        let order = self.order.min(inner.order);
        let mut acc = TSeries::zero(&self.var, order);
        // Horner from the top stored exponent down to 0.
        let mut exps: Vec<i64> = self.terms.keys().copied().collect();
        exps.sort_unstable();
        let top = *exps.last().unwrap_or(&0);
        for k in (0..=top).rev() {
            acc = &acc * inner;
            let c = self.coeff(k);
            if !c.is_zero() {
                acc = &acc + &TSeries::constant(&self.var, c, order);
            }
        }
        acc.truncate(order)
    }

    /// Compositional inverse of a series `s = c1·x + ...` with constant
    /// coefficients and invertible `c1`: returns `t` with `s(t(y)) = y`.
    pub fn revert(&self) -> Result<TSeries, SymError> {
        if self.min_exp() != Some(1) {
            return Err(SymError::NotAUnit(
                "reversion needs a simple zero at the origin".into(),
            ));
        }
        let c1 = self
            .coeff(1)
            .as_constant()
            .ok_or_else(|| SymError::NotAUnit("nonconstant linear coefficient".into()))?;
        let c1_inv = c1.try_recip().map_err(|_| SymError::NotAUnit("zero linear term".into()))?;
        let order = self.order;
        let x = TSeries::monomial(&self.var, 1, MPoly::one(), order);
        let mut t = x.scale(&c1_inv);
        // Fixed-point refinement: t <- t − c1^{-1} (s∘t − x); each pass
        // fixes one further order.
        for _ in 0..order.max(0) {
            let err = &self.compose(&t) - &x;
            if err.is_zero() {
                break;
            }
            t = &t - &err.scale(&c1_inv);
        }
        Ok(t.truncate(order))
    }
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        assert_eq!(self.var, rhs.var, "series variable mismatch");
        let order = self.order.min(rhs.order);
        let mut terms: BTreeMap<i64, MPoly> = self
            .terms
            .iter()
            .filter(|&(&k, _)| k <= order)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        for (&k, c) in &rhs.terms {
            if k > order {
                continue;
            }
            match terms.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = &*e.get() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        TSeries {
            var: self.var.clone(),
            order,
            terms,
        }
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        self + &(-rhs)
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        assert_eq!(self.var, rhs.var, "series variable mismatch");
        // Accuracy: unknown tail of one factor meets the lowest exponent of
        // the other. A zero factor constrains nothing beyond its own order.
        let big = i64::MAX / 4;
        let ma = self.min_exp().unwrap_or(big);
        let mb = rhs.min_exp().unwrap_or(big);
        let order = (self.order + mb).min(rhs.order + ma).min(big);
        let mut terms: BTreeMap<i64, MPoly> = BTreeMap::new();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &rhs.terms {
                let k = ka + kb;
                if k > order {
                    continue;
                }
                let prod = ca * cb;
                if prod.is_zero() {
                    continue;
                }
                match terms.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = &*e.get() + &prod;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        TSeries {
            var: self.var.clone(),
            order,
            terms,
        }
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned_ts {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for TSeries {
            type Output = TSeries;
            fn $f(self, rhs: TSeries) -> TSeries { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned_ts!(Add::add, Sub::sub, Mul::mul);

impl Neg for TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        -&self
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::fmt_series(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::one()
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1+x) to order 3 = 1 - x + x^2 - x^3.
        let s = &TSeries::constant("x", x(), 3) + &TSeries::monomial("x", 1, x(), 3);
        let inv = s.try_invert().unwrap();
        let mut expect = TSeries::zero("x", 3);
        for (k, sign) in [(0, 1), (1, -1), (2, 1), (3, -1)] {
            expect = &expect + &TSeries::monomial("x", k, MPoly::from_int(sign), 3);
        }
        assert_eq!(inv, expect);
        let check = &s * &inv;
        assert_eq!(check.coeff(0), MPoly::one());
        assert!(check.terms().all(|(k, _)| k == 0));
    }

    #[test]
    fn smoothing_shape_inverse() {
        // -e + e^2 known through e^2: the inverse starts -e^{-1} - 1 and the
        // product returns exactly 1 through the guaranteed order e^1. The
        // next inverse coefficient needs the unknown e^3 term, so it is
        // honestly absent; raising the input accuracy recovers it.
        let s = &TSeries::monomial("eps", 1, MPoly::from_int(-1), 2)
            + &TSeries::monomial("eps", 2, MPoly::one(), 2);
        let inv = s.try_invert().unwrap();
        assert_eq!(inv.coeff(-1), MPoly::from_int(-1));
        assert_eq!(inv.coeff(0), MPoly::from_int(-1));
        assert_eq!(inv.order(), 0);
        let prod = &s * &inv;
        assert_eq!(prod.order(), 1);
        assert_eq!(prod.coeff(0), MPoly::one());
        assert!(prod.terms().all(|(k, _)| k == 0));

        let s3 = &TSeries::monomial("eps", 1, MPoly::from_int(-1), 3)
            + &TSeries::monomial("eps", 2, MPoly::one(), 3);
        let inv3 = s3.try_invert().unwrap();
        assert_eq!(inv3.coeff(1), MPoly::from_int(-1));
    }

    #[test]
    fn monomial_inverse() {
        let s = TSeries::monomial("x", -2, x(), 2);
        let inv = s.try_invert().unwrap();
        assert_eq!(inv.coeff(2), MPoly::one());
        assert_eq!(inv.min_exp(), Some(2));
    }

    #[test]
    fn non_unit_leading_coefficient_errors() {
        let s = TSeries::monomial("x", 0, MPoly::var("u"), 2);
        assert!(matches!(s.try_invert(), Err(SymError::NotAUnit(_))));
    }

    #[test]
    fn sqrt_of_unit_series() {
        // sqrt(1 + x) to order 4, squared, gives back 1 + x.
        let s = &TSeries::constant("x", x(), 4) + &TSeries::monomial("x", 1, x(), 4);
        let r = s.try_sqrt().unwrap();
        assert_eq!(&r * &r, s);
        // sqrt(-x^{-6}) = i x^{-3} branch.
        let m = TSeries::monomial("x", -6, MPoly::from_int(-1), -2);
        let r2 = m.try_sqrt().unwrap();
        assert_eq!(r2.coeff(-3), MPoly::constant(GaussRat::i()));
    }

    #[test]
    fn reversion_inverts_composition() {
        // s = -e + 3e^2 - e^3; check s(t(y)) = y through order 4.
        let s = &(&TSeries::monomial("e", 1, MPoly::from_int(-1), 4)
            + &TSeries::monomial("e", 2, MPoly::from_int(3), 4))
            + &TSeries::monomial("e", 3, MPoly::from_int(-1), 4);
        let t = s.revert().unwrap();
        let comp = s.compose(&t);
        assert_eq!(comp, TSeries::monomial("e", 1, MPoly::one(), 4));
    }

    #[test]
    fn derivative_drops_accuracy() {
        let s = TSeries::monomial("x", 3, x(), 5);
        let d = s.derive_var();
        assert_eq!(d.order(), 4);
        assert_eq!(d.coeff(2), MPoly::from_int(3));
    }
}
