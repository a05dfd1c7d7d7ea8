//! Rational functions: reduced fractions of multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::{mpoly_exact_div, mpoly_gcd, mpoly_sqrt};
use super::{GaussRat, MPoly, SymError};

/// A quotient of polynomials in canonical form: `gcd(num, den) = 1` and the
/// denominator is monic (leading graded-lex coefficient 1). Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from(MPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from(MPoly::from_int(n))
    }

    pub fn constant(c: GaussRat) -> Self {
        RatFunc::from(MPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from(MPoly::var(name))
    }

    /// Build `num/den`, reducing to canonical form.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = mpoly_gcd(&num, &den);
        let (mut num, mut den) = if g.as_constant().is_some() {
            (num, den)
        } else {
            (
                mpoly_exact_div(&num, &g).expect("gcd divides numerator"),
                mpoly_exact_div(&den, &g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.try_recip().expect("nonzero denominator");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(&n / &d),
            _ => None,
        }
    }

    pub fn try_recip(&self) -> Result<Self, SymError> {
        if self.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<Self, SymError> {
        let base = if e < 0 { self.try_recip()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &GaussRat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn conj_coeffs(&self) -> RatFunc {
        Self::reduced(self.num.conj_coeffs(), self.den.conj_coeffs())
    }

    /// Exact quotient-rule derivative, normalized.
    pub fn derive(&self, var: &str) -> RatFunc {
        let dn = self.num.derive(var);
        let dd = self.den.derive(var);
        if dd.is_zero() {
            return Self::reduced(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Self::reduced(num, den)
    }

    /// Exact evaluation; errors if the point is a pole.
    pub fn eval(&self, point: &BTreeMap<String, GaussRat>) -> Result<GaussRat, SymError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(SymError::Pole);
        }
        let n = self.num.eval(point)?;
        Ok(&n / &d)
    }

    pub fn substitute(&self, map: &BTreeMap<String, MPoly>) -> Result<RatFunc, SymError> {
        RatFunc::new(self.num.substitute(map), self.den.substitute(map))
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> RatFunc {
        RatFunc {
            num: self.num.rename(map),
            den: self.den.rename(map),
        }
    }

    /// Exact square root in the rational function field extended by i,
    /// if numerator and denominator are perfect squares up to scalars.
    pub fn try_sqrt(&self) -> Result<RatFunc, SymError> {
        if self.is_zero() {
            return Ok(RatFunc::zero());
        }
        let n = mpoly_sqrt(&self.num).ok_or(SymError::NotASquare)?;
        let d = mpoly_sqrt(&self.den).ok_or(SymError::NotASquare)?;
        Ok(Self::reduced(n, d))
    }

    /// Variables appearing in numerator or denominator.
    pub fn vars(&self) -> Vec<String> {
        let mut vs: Vec<String> = self.num.vars().to_vec();
        for v in self.den.vars() {
            if !vs.contains(v) {
                vs.push(v.clone());
            }
        }
        vs.sort();
        vs
    }
}

impl From<MPoly> for RatFunc {
    fn from(num: MPoly) -> Self {
        RatFunc {
            num,
            den: MPoly::one(),
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = mpoly_gcd(&self.den, &rhs.den);
        let (da, db) = if g.as_constant().is_some() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                mpoly_exact_div(&self.den, &g).expect("gcd divides"),
                mpoly_exact_div(&rhs.den, &g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        let den = &self.den * &db;
        RatFunc::reduced(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-reduce first to keep intermediate products small.
        let g1 = mpoly_gcd(&self.num, &rhs.den);
        let g2 = mpoly_gcd(&rhs.num, &self.den);
        let (na, db) = if g1.as_constant().is_some() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                mpoly_exact_div(&self.num, &g1).expect("gcd divides"),
                mpoly_exact_div(&rhs.den, &g1).expect("gcd divides"),
            )
        };
        let (nb, da) = if g2.as_constant().is_some() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                mpoly_exact_div(&rhs.num, &g2).expect("gcd divides"),
                mpoly_exact_div(&self.den, &g2).expect("gcd divides"),
            )
        };
        RatFunc::reduced(&na * &nb, &da * &db)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.try_recip().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_rf {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned_rf!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> RatFunc {
        RatFunc::var(name)
    }

    fn x() -> RatFunc {
        v("x")
    }

    #[test]
    fn normalization_reduces_and_makes_den_monic() {
        // 2u^2 / 4u reduces all the way to (1/2)u over a unit denominator.
        let num = MPoly::var("u").pow(2).scale(&GaussRat::from_int(2));
        let den = MPoly::var("u").scale(&GaussRat::from_int(4));
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f.den(), &MPoly::one());
        assert_eq!(
            f.num(),
            &MPoly::var("u").scale(&GaussRat::from_rat(super::super::gauss::rat(1, 2)))
        );
        // A genuinely shared irreducible factor cancels, leaving a monic den.
        let g = RatFunc::new(
            &(&MPoly::var("u") + &MPoly::var("w")) * &MPoly::var("u"),
            (&(&MPoly::var("u") + &MPoly::var("w")) * &MPoly::var("w")).scale(&GaussRat::from_int(3)),
        )
        .unwrap();
        assert_eq!(g.den(), &MPoly::var("w"));
    }

    #[test]
    fn geometric_derivative() {
        // d/dx 1/(1-x) = 1/(1-x)^2
        let f = RatFunc::one() / (RatFunc::one() - x());
        let expect = (RatFunc::one() - x()).pow(-2).unwrap();
        assert_eq!(f.derive("x"), expect);
    }

    #[test]
    fn derivative_of_independent_var_is_zero() {
        assert!(v("u").derive("sigma").is_zero());
    }

    #[test]
    fn eval_and_pole() {
        let f = RatFunc::one() / (RatFunc::one() - x());
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), GaussRat::from_int(1));
        assert_eq!(f.eval(&pt), Err(SymError::Pole));
        pt.insert("x".to_string(), GaussRat::from_rat(super::super::gauss::rat(1, 2)));
        assert_eq!(f.eval(&pt).unwrap(), GaussRat::from_int(2));
    }

    #[test]
    fn bergmann_first_coefficient_sample() {
        // 1/(1-r^2) at r^2 = 1/4 equals 4/3.
        let r2: RatFunc = ["x1", "x2", "x3", "x4"]
            .iter()
            .fold(RatFunc::zero(), |acc, n| acc + (v(n) * v(n)));
        let f = RatFunc::one() / (RatFunc::one() - r2);
        let mut pt = BTreeMap::new();
        pt.insert("x1".into(), GaussRat::from_rat(super::super::gauss::rat(1, 2)));
        for n in ["x2", "x3", "x4"] {
            pt.insert(n.into(), GaussRat::zero());
        }
        assert_eq!(
            f.eval(&pt).unwrap(),
            GaussRat::from_rat(super::super::gauss::rat(4, 3))
        );
    }

    #[test]
    fn field_ops_consistent() {
        let f = (v("u") + v("w")) / (RatFunc::one() + v("w"));
        let g = v("u") / (RatFunc::one() - v("w"));
        let sum = &f + &g;
        assert_eq!(&sum - &g, f);
        let prod = &f * &g;
        assert_eq!(&prod / &g, f);
    }
}
