//! Gaussian rationals: the coefficient field Q(i).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SymError;

/// Arbitrary-precision rational. `num_rational` keeps the fraction reduced
/// with a positive denominator, which is exactly the canonical form we need.
pub type Rat = num_rational::BigRational;

/// Make a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// An element a + b·i of Q(i).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(rat(n, 1), Rat::zero())
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat::new(re, Rat::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate a − b·i.
    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus a² + b², a nonnegative rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; errors on zero.
    pub fn try_recip(&self) -> Result<Self, SymError> {
        if self.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Exact square root in Q(i), if one exists there.
///
/// Solves (a + bi)² = c by the half-angle identities; every step stays
/// rational, so existence reduces to two rational perfect-square tests.
pub fn gauss_sqrt(c: &GaussRat) -> Option<GaussRat> {
    if c.is_zero() {
        return Some(GaussRat::zero());
    }
    if c.im.is_zero() {
        if !c.re.is_negative() {
            return rat_sqrt(&c.re).map(GaussRat::from_rat);
        }
        return rat_sqrt(&(-c.re.clone())).map(|b| GaussRat::new(Rat::zero(), b));
    }
    let n = rat_sqrt(&c.norm_sq())?;
    let a2 = (&c.re + &n) / rat(2, 1);
    let a = rat_sqrt(&a2)?;
    if a.is_zero() {
        return None;
    }
    let b = &c.im / (rat(2, 1) * &a);
    Some(GaussRat::new(a, b))
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.try_recip().expect("division by zero in Q(i)")
    }
}

macro_rules! forward_owned {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for GaussRat {
            type Output = GaussRat;
            fn $f(self, rhs: GaussRat) -> GaussRat { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form: `re`, `im*i`, or `re±im*i`, each part a reduced
/// fraction with a leading sign only. No spaces, so a scalar is one token.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl FromStr for GaussRat {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, SymError> {
        let bad = |m: &str| SymError::Parse(format!("scalar `{s}`: {m}"));
        let parse_rat = |t: &str| Rat::from_str(t).map_err(|e| bad(&e.to_string()));
        if let Some(body) = s.strip_suffix("*i") {
            // Either a pure imaginary part or re±im*i; a sign at index >= 1
            // separates the parts, since fractions hold no inner signs.
            if let Some(pos) = body[1..].find(['+', '-']).map(|p| p + 1) {
                let re = parse_rat(&body[..pos])?;
                let im = parse_rat(&body[pos..].replace('+', ""))?;
                Ok(GaussRat::new(re, im))
            } else {
                Ok(GaussRat::new(Rat::zero(), parse_rat(body)?))
            }
        } else {
            Ok(GaussRat::from_rat(parse_rat(s)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let z = GaussRat::new(rat(1, 2), rat(-3, 4));
        let w = GaussRat::new(rat(2, 1), rat(5, 7));
        let prod = &z * &w;
        assert_eq!(&prod / &w, z);
        assert_eq!(&z * &z.try_recip().unwrap(), GaussRat::one());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn conjugation_is_ring_automorphism() {
        let z = GaussRat::new(rat(3, 5), rat(1, 3));
        let w = GaussRat::new(rat(-2, 7), rat(4, 1));
        assert_eq!((&z * &w).conj(), &z.conj() * &w.conj());
        assert_eq!((&z + &w).conj(), &z.conj() + &w.conj());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(gauss_sqrt(&GaussRat::from_int(-1)), Some(GaussRat::i()));
        assert_eq!(
            gauss_sqrt(&GaussRat::from_rat(rat(9, 4))),
            Some(GaussRat::from_rat(rat(3, 2)))
        );
        // (1+i)^2 = 2i
        let r = gauss_sqrt(&GaussRat::new(Rat::zero(), rat(2, 1))).unwrap();
        assert_eq!(&r * &r, GaussRat::new(Rat::zero(), rat(2, 1)));
        assert_eq!(gauss_sqrt(&GaussRat::from_int(2)), None);
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-3/4", "1*i", "-1/2*i", "1/2+3*i", "2-7/3*i"] {
            let v: GaussRat = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }
}
