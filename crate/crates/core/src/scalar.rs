//! Exact arithmetic in the field Q(√2, i).
//!
//! Every amplitude the sculpting calculus produces is of the form
//! `(p + q√2) + i(r + s√2)` with rational `p, q, r, s`, so the whole
//! simulator runs without floating point.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element `rat + irr·√2` of the real quadratic field Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    pub rat: BigRational,
    pub irr: BigRational,
}

impl Surd {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        Surd { rat, irr }
    }

    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    /// Field norm `rat² − 2·irr²`; nonzero for every nonzero element since √2 is irrational.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(2.into()) * &self.irr * &self.irr
    }

    /// Galois conjugate `rat − irr·√2`.
    pub fn galois(&self) -> Self {
        Surd::new(self.rat.clone(), -self.irr.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let g = self.galois();
        Some(Surd::new(g.rat / &n, g.irr / n))
    }

    fn add(&self, o: &Self) -> Self {
        Surd::new(add_rat(&self.rat, &o.rat), add_rat(&self.irr, &o.irr))
    }

    fn add_assign(&mut self, o: &Self) {
        if !o.rat.is_zero() {
            self.rat += &o.rat;
        }
        if !o.irr.is_zero() {
            self.irr += &o.irr;
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Surd::new(&self.rat - &o.rat, &self.irr - &o.irr)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Surd::zero();
        }
        let ii = mul_rat(&self.irr, &o.irr);
        Surd::new(
            add_rat(&mul_rat(&self.rat, &o.rat), &(&ii + &ii)),
            add_rat(&mul_rat(&self.rat, &o.irr), &mul_rat(&self.irr, &o.rat)),
        )
    }

    fn neg(&self) -> Self {
        Surd::new(-self.rat.clone(), -self.irr.clone())
    }

    fn scale_int(&self, k: &BigInt) -> Self {
        let f = |x: &BigRational| {
            if x.is_zero() {
                BigRational::zero()
            } else {
                BigRational::new(x.numer() * k, x.denom().clone())
            }
        };
        Surd::new(f(&self.rat), f(&self.irr))
    }
}

// Most components are zero; skipping them avoids bignum work.
fn mul_rat(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else {
        a * b
    }
}

fn add_rat(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a + b
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}√2", self.irr),
            (false, false) => {
                if self.irr.is_negative() {
                    write!(f, "{} - {}√2", self.rat, -self.irr.clone())
                } else {
                    write!(f, "{} + {}√2", self.rat, self.irr)
                }
            }
        }
    }
}

/// Element `(p + q√2) + i(r + s√2)` of Q(√2, i).
///
/// All four rationals are kept in lowest terms by `BigRational`, so derived
/// equality is exact structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: Surd,
    im: Surd,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactScalar {
    pub fn new(p: BigRational, q: BigRational, r: BigRational, s: BigRational) -> Self {
        ExactScalar {
            re: Surd::new(p, q),
            im: Surd::new(r, s),
        }
    }

    pub fn from_parts(re: Surd, im: Surd) -> Self {
        ExactScalar { re, im }
    }

    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_integer(1)
    }

    pub fn i() -> Self {
        ExactScalar::new(rat(0), rat(0), rat(1), rat(0))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactScalar::new(rat(n), rat(0), rat(0), rat(0))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(x: BigRational) -> Self {
        ExactScalar::new(x, rat(0), rat(0), rat(0))
    }

    pub fn sqrt2() -> Self {
        ExactScalar::new(rat(0), rat(1), rat(0), rat(0))
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        ExactScalar::new(rat(0), BigRational::new(1.into(), 2.into()), rat(0), rat(0))
    }

    /// `(1/√2)^n`, exact.
    pub fn inv_sqrt2_pow(n: u32) -> Self {
        let half = BigRational::new(1.into(), 2.into());
        let base = num_traits::pow(half, (n / 2) as usize);
        if n % 2 == 1 {
            ExactScalar::new(rat(0), base / rat(2), rat(0), rat(0))
        } else {
            ExactScalar::from_rational(base)
        }
    }

    pub fn p(&self) -> &BigRational {
        &self.re.rat
    }
    pub fn q(&self) -> &BigRational {
        &self.re.irr
    }
    pub fn r(&self) -> &BigRational {
        &self.im.rat
    }
    pub fn s(&self) -> &BigRational {
        &self.im.irr
    }

    pub fn re(&self) -> &Surd {
        &self.re
    }
    pub fn im(&self) -> &Surd {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == ExactScalar::one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// `|z|² = re² + im²`, an element of Q(√2).
    pub fn norm_sqr(&self) -> Surd {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let denom = self.norm_sqr().inv()?;
        let c = self.conj();
        Some(ExactScalar {
            re: c.re.mul(&denom),
            im: c.im.mul(&denom),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// `k·self`, cheaper than a full multiplication.
    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        ExactScalar {
            re: self.re.scale_int(&k),
            im: self.im.scale_int(&k),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Encoding of one rational as `"num/den"`.
    pub fn rational_to_string(x: &BigRational) -> String {
        format!("{}/{}", x.numer(), x.denom())
    }

    /// Parses `"num/den"` or a bare integer.
    pub fn parse_rational(text: &str) -> Result<BigRational> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid rational `{text}`"));
        match text.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(
                BigInt::from_str(text).map_err(|_| bad())?,
            )),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "i({})", self.im)
        } else {
            write!(f, "({}) + i({})", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, o: &ExactScalar) -> ExactScalar {
        self.checked_div(o).expect("division by zero in Q(√2, i)")
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        self.re.add_assign(&o.re);
        self.im.add_assign(&o.im);
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        self.re = self.re.sub(&o.re);
        self.im = self.im.sub(&o.im);
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, o: &ExactScalar) {
        *self = &*self * o;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |a, b| a * b)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::default()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::from_integer(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
        (arb_rat(), arb_rat(), arb_rat(), arb_rat())
            .prop_map(|(p, q, r, s)| ExactScalar::new(p, q, r, s))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(ExactScalar::sqrt2().pow(2), ExactScalar::from_integer(2));
        assert_eq!(
            ExactScalar::inv_sqrt2().pow(2),
            ExactScalar::from_ratio(1, 2)
        );
        assert_eq!(
            &ExactScalar::i() * &ExactScalar::i(),
            ExactScalar::from_integer(-1)
        );
    }

    #[test]
    fn inv_sqrt2_pow_matches_repeated_product() {
        for n in 0..9 {
            assert_eq!(
                ExactScalar::inv_sqrt2_pow(n),
                ExactScalar::inv_sqrt2().pow(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn lowest_terms_and_sign_normalized() {
        let x = ExactScalar::from_ratio(2, -4);
        assert_eq!(x.p().numer(), &BigInt::from(-1));
        assert_eq!(x.p().denom(), &BigInt::from(2));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(ExactScalar::zero().inv().is_none());
        assert!(matches!(
            ExactScalar::one().checked_div(&ExactScalar::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(
            ExactScalar::parse_rational("3/6").unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(ExactScalar::parse_rational("-7").unwrap(), rat(-7));
        assert!(ExactScalar::parse_rational("1/0").is_err());
        assert!(ExactScalar::parse_rational("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ExactScalar::inv_sqrt2().to_string(), "1/2√2");
        assert_eq!(ExactScalar::from_integer(-3).to_string(), "-3");
        assert_eq!(
            (ExactScalar::one() - ExactScalar::sqrt2()).to_string(),
            "1 - 1√2"
        );
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a - &a, ExactScalar::zero());
        }

        #[test]
        fn inverse_law(a in arb_scalar()) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, ExactScalar::one());
        }

        #[test]
        fn conjugation_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn scale_int_matches_mul(a in arb_scalar(), k in -6i64..7) {
            prop_assert_eq!(a.scale_int(k), &a * &ExactScalar::from_integer(k));
        }
    }
}
