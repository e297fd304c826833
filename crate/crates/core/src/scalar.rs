//! Exact Gaussian rationals: complex numbers `a + b i` with `a, b` in ℚ.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact element of ℚ(i). `BigRational` keeps both parts reduced with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_ints(1, 0),
            1 => Self::from_ints(0, 1),
            2 => Self::from_ints(-1, 0),
            _ => Self::from_ints(0, -1),
        }
    }

    /// `(-1)^k`.
    pub fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
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

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|a|^2 = a * conj(a)`, always real.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::from_rational(v)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints in DSL syntax: `3`, `-1/2`, `i`, `-2*i`, `1+1/2*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                let im = imag(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Parses the scalar literal syntax of metric and transform files:
/// `3`, `-1/2`, `i`, `-i`, `2i`, `2*i`, `1/2+3/4 i`, `3 - 2i`.
impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let bad = || Error::InvalidScalar(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(Self::from_rational).ok_or_else(bad);
        };
        // split the real part off at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_str).ok_or_else(bad)?
        };
        let im_str = im_str.strip_suffix('*').unwrap_or(im_str);
        let im = match im_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => {
                let other = other.strip_prefix('+').unwrap_or(other);
                parse_rational(other).ok_or_else(bad)?
            }
        };
        Ok(Self::new(re, im))
    }
}

/// Positive-real test used by the metric validator.
pub fn is_positive_real(a: &GaussianRational) -> bool {
    a.is_real() && a.re().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&g(1, 2) * &g(3, -1), g(5, 5));
        let a = GaussianRational::new(rational(3, 7), rational(-2, 5));
        assert_eq!(&a + &GaussianRational::zero(), a);
        assert_eq!(g(1, 1).checked_div(&g(1, 1)).unwrap(), GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(g(1, 0).checked_div(&g(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn normalized_representation() {
        let a = GaussianRational::new(rational(2, -4), rational(6, 3));
        assert_eq!(a.re(), &rational(-1, 2));
        assert_eq!(a.re().denom(), &BigInt::from(2));
        assert_eq!(a.im(), &rational(2, 1));
    }

    #[test]
    fn powers_of_i() {
        assert_eq!(GaussianRational::i_pow(4), g(1, 0));
        assert_eq!(GaussianRational::i_pow(-1), g(0, -1));
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), g(-1, 0));
    }

    #[test]
    fn display_and_parse() {
        for (v, s) in [
            (g(3, 0), "3"),
            (g(0, 1), "i"),
            (g(0, -1), "-i"),
            (g(0, 2), "2*i"),
            (g(1, -2), "1-2*i"),
            (GaussianRational::new(rational(1, 2), rational(3, 4)), "1/2+3/4*i"),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<GaussianRational>().unwrap(), v);
        }
        assert_eq!(
            "1/2+3/4 i".parse::<GaussianRational>().unwrap().im(),
            &rational(3, 4)
        );
        assert_eq!("-2i".parse::<GaussianRational>().unwrap(), g(0, -2));
        assert_eq!("3 - 2i".parse::<GaussianRational>().unwrap(), g(3, -2));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }
}
