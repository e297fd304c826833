//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! [`WirtingerPolynomial`] lives in the `2n` formal symbols
//! `z1..zn, zb1..zbn`, which are independent for differentiation.
//! [`RealPolynomial`] lives in `x1..xn, y1..yn` and is only used by the
//! real-coordinate oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use num_traits::Zero;

pub type Exponents = Vec<u32>;

/// Canonical sparse polynomial: no zero coefficients, fixed variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, slot: usize) -> Self {
        let mut e = vec![0; nvars];
        e[slot] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, GaussianRational::one());
        p
    }

    pub fn add_term(&mut self, e: Exponents, c: GaussianRational) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, GaussianRational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, slot: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[slot] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[slot] -= 1;
            out.add_term(e2, c * &GaussianRational::from(e[slot] as i64));
        }
        out
    }

    pub fn depends_on(&self, slot: usize) -> bool {
        self.terms.keys().any(|e| e[slot] > 0)
    }

    /// Replaces variable `k` by `images[k]`; all images share a target
    /// variable count.
    pub fn substitute(&self, images: &[SparsePoly], target_nvars: usize) -> Self {
        debug_assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|_| vec![Self::constant(target_nvars, GaussianRational::one())])
            .collect();
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_nvars, c.clone());
            for (slot, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[slot];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul(&images[slot]);
                    cache.push(next);
                }
                term = term.mul(&cache[k as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Conjugates coefficients and applies a permutation of variable slots.
    pub fn conj_permuted(&self, perm: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.nvars];
            for (slot, &k) in e.iter().enumerate() {
                e2[perm(slot)] = k;
            }
            out.add_term(e2, c.conj());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, e: &Exponents) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// DSL rendering. Monomials appear in descending lexicographic order of
    /// their exponent vectors.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(slot, &k)| {
                    if k == 1 {
                        name(slot)
                    } else {
                        format!("{}**{}", name(slot), k)
                    }
                })
                .collect();
            let mono = if vars.is_empty() {
                render_scalar_factor(c, false)
            } else {
                let vars = vars.join("*");
                if c.is_one() {
                    vars
                } else if (-c).is_one() {
                    format!("-{vars}")
                } else {
                    format!("{}*{}", render_scalar_factor(c, true), vars)
                }
            };
            if !out.is_empty() && !mono.starts_with('-') {
                out.push('+');
            }
            out.push_str(&mono);
        }
        out
    }
}

/// Scalar as it appears inside a monomial; complex values with both parts
/// nonzero are parenthesized when followed by a product.
fn render_scalar_factor(c: &GaussianRational, in_product: bool) -> String {
    let s = c.to_string();
    if in_product && !c.re().is_zero() && !c.im().is_zero() {
        format!("({s})")
    } else {
        s
    }
}

/// Polynomial in `z1..zn, zb1..zbn` with Gaussian-rational coefficients.
///
/// Exponent slots `0..n` are the `z` exponents, `n..2n` the `zb` exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WirtingerPolynomial {
    n: usize,
    poly: SparsePoly,
}

/// A Wirtinger variable: holomorphic `z_j` or antiholomorphic `zb_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Z(usize),
    Zbar(usize),
}

impl Variable {
    pub fn index(self) -> usize {
        match self {
            Variable::Z(j) | Variable::Zbar(j) => j,
        }
    }

    fn slot(self, n: usize) -> Result<usize> {
        let j = self.index();
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        Ok(match self {
            Variable::Z(j) => j - 1,
            Variable::Zbar(j) => n + j - 1,
        })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Z(j) => write!(f, "z{j}"),
            Variable::Zbar(j) => write!(f, "zb{j}"),
        }
    }
}

fn wirtinger_name(n: usize) -> impl Fn(usize) -> String {
    move |slot| {
        if slot < n {
            format!("z{}", slot + 1)
        } else {
            format!("zb{}", slot - n + 1)
        }
    }
}

impl WirtingerPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            poly: SparsePoly::zero(2 * n),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self {
            n,
            poly: SparsePoly::constant(2 * n, c),
        }
    }

    pub fn variable(n: usize, v: Variable) -> Result<Self> {
        let slot = v.slot(n)?;
        Ok(Self {
            n,
            poly: SparsePoly::var(2 * n, slot),
        })
    }

    /// `z_j`; panics when `j` is outside `1..=n`.
    pub fn z(n: usize, j: usize) -> Self {
        Self::variable(n, Variable::Z(j)).expect("z index in range")
    }

    /// `zb_j`; panics when `j` is outside `1..=n`.
    pub fn zbar(n: usize, j: usize) -> Self {
        Self::variable(n, Variable::Zbar(j)).expect("zb index in range")
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; exponent
    /// vectors must have length `2n`.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Exponents, GaussianRational)>,
    ) -> Result<Self> {
        let mut poly = SparsePoly::zero(2 * n);
        for (e, c) in terms {
            if e.len() != 2 * n {
                return Err(Error::DimensionMismatch {
                    left: 2 * n,
                    right: e.len(),
                });
            }
            poly.add_term(e, c);
        }
        Ok(Self { n, poly })
    }

    pub(crate) fn from_sparse(n: usize, poly: SparsePoly) -> Self {
        debug_assert_eq!(poly.nvars, 2 * n);
        Self { n, poly }
    }

    pub(crate) fn sparse(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        self.poly.constant_value()
    }

    pub fn num_terms(&self) -> usize {
        self.poly.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.poly.terms()
    }

    pub fn coefficient_of(&self, e: &Exponents) -> GaussianRational {
        self.poly.coefficient_of(e)
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Self {
            n: self.n,
            poly: self.poly.add(&rhs.poly),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Self {
            n: self.n,
            poly: self.poly.add(&rhs.poly.neg()),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Self {
            n: self.n,
            poly: self.poly.mul(&rhs.poly),
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self {
            n: self.n,
            poly: self.poly.pow(k),
        }
    }

    /// Complex conjugation: coefficients are conjugated and every `z_j`
    /// exponent trades places with the `zb_j` exponent.
    pub fn conj(&self) -> Self {
        let n = self.n;
        Self {
            n,
            poly: self
                .poly
                .conj_permuted(|slot| if slot < n { slot + n } else { slot - n }),
        }
    }

    /// Formal partial derivative; `z_j` and `zb_j` are independent symbols.
    pub fn derivative(&self, v: Variable) -> Result<Self> {
        let slot = v.slot(self.n)?;
        Ok(Self {
            n: self.n,
            poly: self.poly.derivative(slot),
        })
    }

    pub fn depends_on(&self, v: Variable) -> Result<bool> {
        Ok(self.poly.depends_on(v.slot(self.n)?))
    }

    /// Substitutes each variable by a polynomial; `z_images[j-1]` replaces
    /// `z_j`, `zbar_images[j-1]` replaces `zb_j`.
    pub fn substitute(&self, z_images: &[Self], zbar_images: &[Self]) -> Self {
        let target = z_images.first().map_or(self.n, |p| p.n);
        let images: Vec<SparsePoly> = z_images
            .iter()
            .chain(zbar_images)
            .map(|p| p.poly.clone())
            .collect();
        Self {
            n: target,
            poly: self.poly.substitute(&images, 2 * target),
        }
    }
}

impl fmt::Display for WirtingerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(wirtinger_name(self.n)))
    }
}

// Operator forms panic on dimension mismatch; the `checked_*` methods
// report it as an error instead.
impl Add for &WirtingerPolynomial {
    type Output = WirtingerPolynomial;
    fn add(self, rhs: Self) -> WirtingerPolynomial {
        self.checked_add(rhs).expect("polynomial dimensions agree")
    }
}

impl Sub for &WirtingerPolynomial {
    type Output = WirtingerPolynomial;
    fn sub(self, rhs: Self) -> WirtingerPolynomial {
        self.checked_sub(rhs).expect("polynomial dimensions agree")
    }
}

impl Mul for &WirtingerPolynomial {
    type Output = WirtingerPolynomial;
    fn mul(self, rhs: Self) -> WirtingerPolynomial {
        self.checked_mul(rhs).expect("polynomial dimensions agree")
    }
}

impl Neg for &WirtingerPolynomial {
    type Output = WirtingerPolynomial;
    fn neg(self) -> WirtingerPolynomial {
        WirtingerPolynomial {
            n: self.n,
            poly: self.poly.neg(),
        }
    }
}

/// Polynomial in the real coordinates `x1..xn, y1..yn` (complex-valued
/// coefficients allowed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealPolynomial {
    n: usize,
    poly: SparsePoly,
}

impl RealPolynomial {
    pub(crate) fn from_sparse(n: usize, poly: SparsePoly) -> Self {
        Self { n, poly }
    }

    pub(crate) fn sparse(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            poly: SparsePoly::zero(2 * n),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self {
            n,
            poly: SparsePoly::constant(2 * n, c),
        }
    }

    pub fn x(n: usize, j: usize) -> Self {
        Self {
            n,
            poly: SparsePoly::var(2 * n, j - 1),
        }
    }

    pub fn y(n: usize, j: usize) -> Self {
        Self {
            n,
            poly: SparsePoly::var(2 * n, n + j - 1),
        }
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            poly: self.poly.add(&rhs.poly),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            poly: self.poly.mul(&rhs.poly),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        f.write_str(&self.poly.render(move |slot| {
            if slot < n {
                format!("x{}", slot + 1)
            } else {
                format!("y{}", slot - n + 1)
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn square_of_variable() {
        let z1 = WirtingerPolynomial::z(2, 1);
        let sq = &z1 * &z1;
        assert_eq!(sq, z1.pow(2));
        assert_eq!(sq.to_string(), "z1**2");
    }

    #[test]
    fn additive_inverse_is_empty() {
        let p = &WirtingerPolynomial::z(2, 1) + &WirtingerPolynomial::constant(2, c(3, 1));
        let s = p.checked_add(&p.scale(&c(-1, 0))).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let z1 = WirtingerPolynomial::z(2, 1);
        let zb2 = WirtingerPolynomial::zbar(2, 2);
        let lhs = &(&z1 + &zb2) * &(&z1 - &zb2);
        let rhs = &z1.pow(2) - &zb2.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_mismatch() {
        let a = WirtingerPolynomial::z(2, 1);
        let b = WirtingerPolynomial::z(3, 1);
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn conjugation_examples() {
        let n = 4;
        let p = WirtingerPolynomial::z(1, 1).scale(&c(0, 1));
        assert_eq!(p.conj(), WirtingerPolynomial::zbar(1, 1).scale(&c(0, -1)));
        let f = &(&WirtingerPolynomial::z(n, 1) * &WirtingerPolynomial::zbar(n, 4))
            + &WirtingerPolynomial::constant(n, c(3, 0));
        let expected = &(&WirtingerPolynomial::zbar(n, 1) * &WirtingerPolynomial::z(n, 4))
            + &WirtingerPolynomial::constant(n, c(3, 0));
        assert_eq!(f.conj(), expected);
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn wirtinger_derivatives() {
        let n = 2;
        let p = &WirtingerPolynomial::z(n, 1).pow(2) * &WirtingerPolynomial::zbar(n, 2);
        let expected = (&WirtingerPolynomial::z(n, 1) * &WirtingerPolynomial::zbar(n, 2)).scale(&c(2, 0));
        assert_eq!(p.derivative(Variable::Z(1)).unwrap(), expected);
        assert!(WirtingerPolynomial::z(n, 1)
            .derivative(Variable::Zbar(1))
            .unwrap()
            .is_zero());
        assert!(WirtingerPolynomial::constant(n, c(5, 0))
            .derivative(Variable::Z(1))
            .unwrap()
            .is_zero());
        assert_eq!(
            p.derivative(Variable::Z(3)),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        );
    }

    #[test]
    fn rendering_is_dsl_syntax() {
        let n = 4;
        let f = &(&WirtingerPolynomial::zbar(n, 1) * &WirtingerPolynomial::z(n, 4))
            + &WirtingerPolynomial::constant(n, c(3, 0));
        assert_eq!(f.to_string(), "z4*zb1+3");
        let g = &WirtingerPolynomial::z(n, 2).scale(&c(1, 2)) - &WirtingerPolynomial::constant(n, c(0, 1));
        assert_eq!(g.to_string(), "(1+2*i)*z2-i");
        assert_eq!(WirtingerPolynomial::zero(1).to_string(), "0");
    }
}
