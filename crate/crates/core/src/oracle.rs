//! Brute-force validator for the complex Hodge star.
//!
//! Forms are expanded into the real coordinates `z = x + i y`, starred with
//! the Euclidean metric on ℝ^{2n} under the orientation
//! `dx1 ^ dy1 ^ .. ^ dxn ^ dyn`, and mapped back. The path shares nothing
//! with [`crate::star`] beyond form storage.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{merge_sign, sort_sign, Form};
use crate::metric::HermitianMetric;
use crate::poly::{RealPolynomial, SparsePoly, WirtingerPolynomial};
use crate::scalar::{rational, GaussianRational};
use crate::star::{hodge_star, StarConvention};

/// Real-coordinate form. Basis generator `2(j-1)` is `dx_j`, `2(j-1)+1`
/// is `dy_j`; keys are strictly increasing generator lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealForm {
    n: usize,
    terms: BTreeMap<Vec<usize>, RealPolynomial>,
}

impl RealForm {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut out = Self::zero(n);
        out.add_term(Vec::new(), RealPolynomial::constant(n, GaussianRational::one()));
        out
    }

    fn generator(n: usize, g: usize, c: GaussianRational) -> Self {
        let mut out = Self::zero(n);
        out.add_term(vec![g], RealPolynomial::constant(n, c));
        out
    }

    pub fn dx(n: usize, j: usize) -> Self {
        Self::generator(n, 2 * (j - 1), GaussianRational::one())
    }

    pub fn dy(n: usize, j: usize) -> Self {
        Self::generator(n, 2 * (j - 1) + 1, GaussianRational::one())
    }

    /// Real dimension `2n`.
    pub fn ambient_2n(&self) -> usize {
        2 * self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RealPolynomial)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: Vec<usize>, c: RealPolynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.scale(s));
        }
        out
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                if let Some((odd, key)) = merge_sign(ka, kb) {
                    let c = ca.mul(cb);
                    let c = if odd {
                        c.scale(&-GaussianRational::one())
                    } else {
                        c
                    };
                    out.add_term(key, c);
                }
            }
        }
        out
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let basis: Vec<String> = k
                    .iter()
                    .map(|g| {
                        if g % 2 == 0 {
                            format!("dx{}", g / 2 + 1)
                        } else {
                            format!("dy{}", g / 2 + 1)
                        }
                    })
                    .collect();
                if basis.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", basis.join("^"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn real_linear(n: usize, x: GaussianRational, y: GaussianRational, j: usize) -> SparsePoly {
    RealPolynomial::x(n, j)
        .scale(&x)
        .add(&RealPolynomial::y(n, j).scale(&y))
        .sparse()
        .clone()
}

/// Substitutes `dz = dx + i dy`, `dzb = dx - i dy` and likewise for the
/// coordinate functions.
pub fn realify(a: &Form) -> RealForm {
    let n = a.ambient_n();
    let one = GaussianRational::one();
    let i = GaussianRational::i();
    let images: Vec<SparsePoly> = (1..=n)
        .map(|j| real_linear(n, one.clone(), i.clone(), j))
        .chain((1..=n).map(|j| real_linear(n, one.clone(), -&i, j)))
        .collect();
    let dz = |j: usize| RealForm::dx(n, j).add(&RealForm::dy(n, j).scale(&i));
    let dzb = |j: usize| RealForm::dx(n, j).add(&RealForm::dy(n, j).scale(&-&i));
    let mut out = RealForm::zero(n);
    for ((di, dj), c) in a.terms() {
        let coeff = RealPolynomial::from_sparse(n, c.sparse().substitute(&images, 2 * n));
        let mut term = RealForm::zero(n);
        term.add_term(Vec::new(), coeff);
        for &k in di.as_slice() {
            term = term.wedge(&dz(k));
        }
        for &k in dj.as_slice() {
            term = term.wedge(&dzb(k));
        }
        out = out.add(&term);
    }
    out
}

/// Inverse substitution `dx = (dz + dzb)/2`, `dy = (dz - dzb)/(2i)`.
pub fn complexify(r: &RealForm) -> Form {
    let n = r.n;
    let half = GaussianRational::from(rational(1, 2));
    let minus_half_i = GaussianRational::new(rational(0, 1), rational(-1, 2));
    let z = |j| WirtingerPolynomial::z(n, j);
    let zb = |j| WirtingerPolynomial::zbar(n, j);
    let images: Vec<SparsePoly> = (1..=n)
        .map(|j| (&z(j) + &zb(j)).scale(&half).sparse().clone())
        .chain((1..=n).map(|j| (&z(j) - &zb(j)).scale(&minus_half_i).sparse().clone()))
        .collect();
    let dx = |j| Form::dz(n, j).add(&Form::dzbar(n, j)).scale(&half);
    let dy = |j| Form::dz(n, j).sub(&Form::dzbar(n, j)).scale(&minus_half_i);
    let mut out = Form::zero(n);
    for (key, c) in r.terms() {
        let coeff = WirtingerPolynomial::from_sparse(n, c.sparse().substitute(&images, 2 * n));
        let mut term = Form::from_poly(coeff);
        for &g in key {
            let factor = if g % 2 == 0 { dx(g / 2 + 1) } else { dy(g / 2 + 1) };
            term = term.wedge(&factor).expect("same dimension");
        }
        out = out.add(&term);
    }
    out
}

/// Euclidean star: `*(e_I) = sgn(I, I^c) e_{I^c}`, extended linearly.
pub fn real_hodge_star(r: &RealForm) -> Result<RealForm> {
    let degrees = r.degrees();
    if degrees.len() > 1 {
        return Err(Error::NotHomogeneous(format!("real degrees {degrees:?}")));
    }
    let dim = 2 * r.n;
    let mut out = RealForm::zero(r.n);
    for (key, c) in r.terms() {
        let comp: Vec<usize> = (0..dim).filter(|g| !key.contains(g)).collect();
        let seq: Vec<usize> = key.iter().chain(&comp).copied().collect();
        let odd = sort_sign(&seq).expect("permutation");
        let c = if odd {
            c.scale(&-GaussianRational::one())
        } else {
            c.clone()
        };
        out.add_term(comp, c);
    }
    Ok(out)
}

/// `complexify(real_star(realify(conj(psi))))`: the Euclidean star turned
/// antilinear by conjugating the input form first.
pub fn oracle_star(psi: &Form) -> Result<Form> {
    let mut out = Form::zero(psi.ambient_n());
    for component in psi.components().values() {
        let real = realify(&component.conjugate());
        out = out.add(&complexify(&real_hodge_star(&real)?));
    }
    Ok(out)
}

/// Engine-to-oracle ratios under the default convention, recorded from
/// runs of [`oracle_compare`] over every monomial with `n <= 2`.
/// Entries are `(n, p, q, numerator, denominator)`.
pub const FROZEN_RATIOS: &[(usize, usize, usize, i64, i64)] = &[
    (1, 0, 0, 2, 1),
    (1, 0, 1, 1, 1),
    (1, 1, 0, 1, 1),
    (1, 1, 1, 1, 2),
    (2, 0, 0, 4, 1),
    (2, 0, 1, 2, 1),
    (2, 0, 2, 1, 1),
    (2, 1, 0, 2, 1),
    (2, 1, 1, 1, 1),
    (2, 1, 2, 1, 2),
    (2, 2, 0, 1, 1),
    (2, 2, 1, 1, 2),
    (2, 2, 2, 1, 4),
];

/// Looks up the frozen ratio for `(n, p, q)`.
pub fn frozen_ratio(n: usize, p: usize, q: usize) -> Option<GaussianRational> {
    FROZEN_RATIOS
        .iter()
        .find(|r| (r.0, r.1, r.2) == (n, p, q))
        .map(|r| GaussianRational::from(rational(r.3, r.4)))
}

/// `engine == ratio * oracle` for one input bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BidegreeRatio {
    pub p: usize,
    pub q: usize,
    pub proportional: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Option<GaussianRational>,
}

fn ser_ratio<S: serde::Serializer>(
    r: &Option<GaussianRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub engine: Form,
    pub oracle: Form,
    pub ratios: Vec<BidegreeRatio>,
}

impl OracleReport {
    pub fn proportional(&self) -> bool {
        self.ratios.iter().all(|r| r.proportional)
    }
}

/// Exact `r` with `engine = r * oracle`, if one exists.
pub fn proportionality(engine: &Form, oracle: &Form) -> Option<Option<GaussianRational>> {
    match (engine.is_zero(), oracle.is_zero()) {
        (true, true) => return Some(None),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    let (basis, o) = oracle.terms().next()?;
    let (e, oc) = o.terms().next()?;
    let ec = engine
        .terms()
        .find(|(b, _)| *b == basis)
        .map(|(_, c)| c.coefficient_of(e))
        .unwrap_or_default();
    let r = ec.checked_div(oc).ok()?;
    (oracle.scale(&r) == *engine).then_some(Some(r))
}

/// Compares the engine star (identity metric) with the oracle path, per
/// input bidegree.
pub fn oracle_compare(psi: &Form, conv: StarConvention) -> Result<OracleReport> {
    let n = psi.ambient_n();
    let id = HermitianMetric::identity(n);
    let mut ratios = Vec::new();
    let mut engine = Form::zero(n);
    let mut oracle = Form::zero(n);
    for ((p, q), component) in psi.components() {
        let e = hodge_star(&component, &id, conv)?;
        let o = oracle_star(&component)?;
        let ratio = proportionality(&e, &o);
        ratios.push(BidegreeRatio {
            p,
            q,
            proportional: ratio.is_some(),
            ratio: ratio.flatten(),
        });
        engine = engine.add(&e);
        oracle = oracle.add(&o);
    }
    Ok(OracleReport {
        engine,
        oracle,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Differential;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn realify_examples() {
        assert_eq!(
            realify(&Form::dz(1, 1)),
            RealForm::dx(1, 1).add(&RealForm::dy(1, 1).scale(&gi(0, 1)))
        );
        let a = Form::dz(1, 1).wedge(&Form::dzbar(1, 1)).unwrap();
        assert_eq!(
            realify(&a),
            RealForm::dx(1, 1).wedge(&RealForm::dy(1, 1)).scale(&gi(0, -2))
        );
        assert!(realify(&Form::zero(2)).is_zero());
    }

    #[test]
    fn complexify_examples() {
        let half = GaussianRational::from(rational(1, 2));
        assert_eq!(
            complexify(&RealForm::dx(1, 1)),
            Form::dz(1, 1).add(&Form::dzbar(1, 1)).scale(&half)
        );
        let r = RealForm::dx(1, 1).wedge(&RealForm::dy(1, 1)).scale(&gi(0, -2));
        assert_eq!(complexify(&r), Form::dz(1, 1).wedge(&Form::dzbar(1, 1)).unwrap());
    }

    #[test]
    fn coordinate_functions_round_trip() {
        let n = 2;
        let f = &(&WirtingerPolynomial::z(n, 1) * &WirtingerPolynomial::zbar(n, 2)).scale(&gi(1, 3))
            + &WirtingerPolynomial::zbar(n, 1).pow(2);
        let a = Form::canonicalize_term(n, &[Differential::Dzbar(2), Differential::Dz(1)], f).unwrap();
        assert_eq!(complexify(&realify(&a)), a);
    }

    #[test]
    fn real_star_examples() {
        assert_eq!(real_hodge_star(&RealForm::dx(1, 1)).unwrap(), RealForm::dy(1, 1));
        assert_eq!(
            real_hodge_star(&RealForm::dy(1, 1)).unwrap(),
            RealForm::dx(1, 1).scale(&gi(-1, 0))
        );
        let a = RealForm::dx(2, 1).wedge(&RealForm::dx(2, 2));
        let expected = RealForm::dy(2, 1).wedge(&RealForm::dy(2, 2)).scale(&gi(-1, 0));
        assert_eq!(real_hodge_star(&a).unwrap(), expected);
        let mixed = RealForm::one(1).add(&RealForm::dx(1, 1));
        assert!(real_hodge_star(&mixed).is_err());
    }

    #[test]
    fn real_star_squares_to_sign() {
        for n in 1..=4 {
            let dim = 2 * n;
            for mask in 0u32..(1 << dim) {
                let key: Vec<usize> = (0..dim).filter(|g| mask & (1 << g) != 0).collect();
                let k = key.len();
                let mut r = RealForm::zero(n);
                r.add_term(key, RealPolynomial::constant(n, GaussianRational::one()));
                let twice = real_hodge_star(&real_hodge_star(&r).unwrap()).unwrap();
                let sign = GaussianRational::sign((k * (dim - k)) as i64);
                assert_eq!(twice, r.scale(&sign));
            }
        }
    }

    #[test]
    fn orientation_matches_volume_form() {
        // vol = 2 dx^dy at n=1 and 4 dx1^dy1^dx2^dy2 at n=2: positive multiples
        let v1 = realify(&HermitianMetric::identity(1).volume_form());
        assert_eq!(v1, RealForm::dx(1, 1).wedge(&RealForm::dy(1, 1)).scale(&gi(2, 0)));
        let v2 = realify(&HermitianMetric::identity(2).volume_form());
        let e = RealForm::dx(2, 1)
            .wedge(&RealForm::dy(2, 1))
            .wedge(&RealForm::dx(2, 2))
            .wedge(&RealForm::dy(2, 2));
        assert_eq!(v2, e.scale(&gi(4, 0)));
    }

    #[test]
    fn compare_examples() {
        let r = oracle_compare(&Form::dz(1, 1), StarConvention::DEFAULT).unwrap();
        assert_eq!(r.engine.to_string(), "i*dzb1");
        assert_eq!(r.oracle.to_string(), "i*dzb1");
        assert_eq!(r.ratios[0].ratio, Some(GaussianRational::one()));
        assert!(oracle_compare(&Form::zero(3), StarConvention::DEFAULT)
            .unwrap()
            .proportional());
    }
}
